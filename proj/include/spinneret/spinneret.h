/* spinneret - crawler project scaffolding and source rewriting.
 *
 * C API for the spinneret shared library. All entry points operate on an
 * opaque workspace handle and return a spin_status code; a human-readable
 * message for the most recent failure is kept per workspace and can be read
 * with spin_last_error(). Strings returned through char** out parameters are
 * heap-allocated and must be released with spin_string_free().
 */

#ifndef SPINNERET_SPINNERET_H
#define SPINNERET_SPINNERET_H

#include <stddef.h>

#if defined(_WIN32)
#define SPINNERET_API __declspec(dllexport)
#else
#define SPINNERET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spin_status {
    SPIN_OK = 0,
    SPIN_ERR_IO = 1,
    SPIN_ERR_MIXED_INDENTATION = 2,
    SPIN_ERR_RAGGED_INDENT = 3,
    SPIN_ERR_INDEX_OUT_OF_RANGE = 4,
    SPIN_ERR_TARGET_NOT_FOUND = 5,
    SPIN_ERR_MISSING_BINDING = 6,
    SPIN_ERR_UNKNOWN_PLACEHOLDER = 7,
    SPIN_ERR_LAYOUT_MISMATCH = 8,
    SPIN_ERR_ALREADY_APPLIED = 9,
    SPIN_ERR_TIMEOUT = 10,
    SPIN_ERR_KEY_NOT_FOUND = 11,
    SPIN_ERR_ALREADY_EXISTS = 12,
    SPIN_ERR_TEMPLATE_SET_NOT_FOUND = 13,
    SPIN_ERR_DUPLICATE_NAME = 14,
    SPIN_ERR_REGISTRY_CORRUPT = 15,
    SPIN_ERR_UNKNOWN_PROJECT = 16,
    SPIN_ERR_INVALID_NAME = 17,
    SPIN_ERR_INVALID_MANIFEST = 18,
    SPIN_ERR_INVALID_ARGUMENT = 19,
    SPIN_ERR_INTERNAL = 20
} spin_status;

typedef enum spin_placement {
    SPIN_PLACE_BACK = 0, /* insert after the resolved line */
    SPIN_PLACE_FRONT = 1 /* insert before the resolved line */
} spin_placement;

/* Opaque handle bound to one workspace directory (the directory holding the
 * spiders.json registry and the default spiders/ output folder). */
typedef struct spin_workspace spin_workspace;

SPINNERET_API const char *spin_version(void);
SPINNERET_API const char *spin_status_name(spin_status status);

/* Opens (and creates, if needed) a workspace directory. */
SPINNERET_API spin_status spin_workspace_open(const char *dir, spin_workspace **out_ws);
SPINNERET_API void spin_workspace_close(spin_workspace *ws);

/* Message describing the most recent failure on this workspace. Owned by the
 * handle; valid until the next call on the same handle. */
SPINNERET_API const char *spin_last_error(const spin_workspace *ws);

/* Overrides the template search directory (layout: <dir>/<set-id>/...).
 * Without an override the workspace looks at $SPINNERET_TEMPLATES, then
 * <workspace>/templates, then falls back to the built-in default set. */
SPINNERET_API spin_status spin_set_templates_dir(spin_workspace *ws, const char *dir);

SPINNERET_API void spin_string_free(char *s);

/* Generates one project from a JSON project spec:
 *   {"name": "demo", "spider_name": "...", "allowed_domains": [...],
 *    "start_urls": [...], "template_set": "default", "target_dir": "...",
 *    "config_overrides": [["KEY", "value"], ...]}
 * Only "name" is required. On success *out_root receives the project root. */
SPINNERET_API spin_status spin_generate(spin_workspace *ws, const char *spec_json,
                                        char **out_root);

/* Generates every project of a JSON manifest (array of project specs).
 * Individual failures do not abort the batch; the per-project outcomes and
 * total wall time are returned as JSON:
 *   {"total_seconds": t, "all_ok": b,
 *    "items": [{"name": n, "ok": b, "root"|"error": s, "seconds": t}, ...]} */
SPINNERET_API spin_status spin_generate_batch(spin_workspace *ws, const char *manifest_json,
                                              char **out_report_json);

/* Checks a project tree for the expected crawler layout. Returns JSON:
 *   {"missing": [...], "extra": [...], "change_once_applied": bool|null} */
SPINNERET_API spin_status spin_verify_layout(spin_workspace *ws, const char *root,
                                             char **out_report_json);

/* Lists registered projects, optionally filtered by a name glob. Returns a
 * JSON array of registry entries in creation order. */
SPINNERET_API spin_status spin_list_projects(spin_workspace *ws, const char *name_glob,
                                             char **out_json);

/* Config edits target either a registered project's settings file (project
 * non-NULL) or an explicit file path (file_path non-NULL). Exactly one of
 * the two must be given. Edits on registered projects are appended to the
 * project's config history. */
SPINNERET_API spin_status spin_config_set(spin_workspace *ws, const char *project,
                                          const char *file_path, const char *key,
                                          const char *option);
SPINNERET_API spin_status spin_config_toggle(spin_workspace *ws, const char *project,
                                             const char *file_path, const char *key,
                                             int *out_now_commented);
SPINNERET_API spin_status spin_config_get(spin_workspace *ws, const char *project,
                                          const char *file_path, const char *key,
                                          char **out_option, int *out_commented);

/* Inserts code lines into a source file at the block named by block_path
 * (header signatures, outermost first). project targets the registered
 * project's spider source; file_path an explicit file. */
SPINNERET_API spin_status spin_insert(spin_workspace *ws, const char *project,
                                      const char *file_path, const char *const *block_path,
                                      size_t block_path_len, const char *const *code_lines,
                                      size_t code_lines_len, spin_placement placement);

#ifdef __cplusplus
}
#endif

#endif /* SPINNERET_SPINNERET_H */
