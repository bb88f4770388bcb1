#include "spinneret/spinneret.h"

#include "core/error.hpp"
#include "core/workspace.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>

using nlohmann::json;
using spinneret::Errc;
using spinneret::Error;

struct spin_workspace {
    spinneret::Workspace impl;
    std::string last_error;

    explicit spin_workspace(const char *dir) : impl(dir) {}
};

namespace {

spin_status status_for(Errc code) {
    switch (code) {
    case Errc::io: return SPIN_ERR_IO;
    case Errc::mixed_indentation: return SPIN_ERR_MIXED_INDENTATION;
    case Errc::ragged_indent: return SPIN_ERR_RAGGED_INDENT;
    case Errc::index_out_of_range: return SPIN_ERR_INDEX_OUT_OF_RANGE;
    case Errc::target_not_found: return SPIN_ERR_TARGET_NOT_FOUND;
    case Errc::missing_binding: return SPIN_ERR_MISSING_BINDING;
    case Errc::unknown_placeholder: return SPIN_ERR_UNKNOWN_PLACEHOLDER;
    case Errc::layout_mismatch: return SPIN_ERR_LAYOUT_MISMATCH;
    case Errc::already_applied: return SPIN_ERR_ALREADY_APPLIED;
    case Errc::timeout: return SPIN_ERR_TIMEOUT;
    case Errc::key_not_found: return SPIN_ERR_KEY_NOT_FOUND;
    case Errc::already_exists: return SPIN_ERR_ALREADY_EXISTS;
    case Errc::template_set_not_found: return SPIN_ERR_TEMPLATE_SET_NOT_FOUND;
    case Errc::duplicate_name: return SPIN_ERR_DUPLICATE_NAME;
    case Errc::registry_corrupt: return SPIN_ERR_REGISTRY_CORRUPT;
    case Errc::unknown_project: return SPIN_ERR_UNKNOWN_PROJECT;
    case Errc::invalid_name: return SPIN_ERR_INVALID_NAME;
    case Errc::invalid_manifest: return SPIN_ERR_INVALID_MANIFEST;
    case Errc::invalid_argument: return SPIN_ERR_INVALID_ARGUMENT;
    }
    return SPIN_ERR_INTERNAL;
}

char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out)
        std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Runs `fn` inside the error boundary shared by every entry point.
template <typename Fn> spin_status guarded(spin_workspace *ws, Fn &&fn) {
    if (!ws)
        return SPIN_ERR_INVALID_ARGUMENT;
    ws->last_error.clear();
    try {
        return fn();
    } catch (const Error &e) {
        ws->last_error = e.what();
        return status_for(e.code());
    } catch (const std::exception &e) {
        ws->last_error = e.what();
        return SPIN_ERR_INTERNAL;
    } catch (...) {
        ws->last_error = "unknown failure";
        return SPIN_ERR_INTERNAL;
    }
}

std::string string_or_empty(const char *s) { return s ? s : ""; }

json entry_to_json(const spinneret::RegistryEntry &entry) {
    json history = json::array();
    for (const auto &record : entry.config_history) {
        history.push_back({{"key", record.key}, {"option", record.option}, {"at", record.at}});
    }
    return {
        {"name", entry.name},
        {"root", entry.root.string()},
        {"template_set", entry.template_set},
        {"created_at", entry.created_at},
        {"change_once_applied", entry.change_once_applied},
        {"config_history", std::move(history)},
    };
}

} // namespace

extern "C" {

const char *spin_version(void) { return "0.1.0"; }

const char *spin_status_name(spin_status status) {
    switch (status) {
    case SPIN_OK: return "ok";
    case SPIN_ERR_IO: return "io";
    case SPIN_ERR_MIXED_INDENTATION: return "mixed_indentation";
    case SPIN_ERR_RAGGED_INDENT: return "ragged_indent";
    case SPIN_ERR_INDEX_OUT_OF_RANGE: return "index_out_of_range";
    case SPIN_ERR_TARGET_NOT_FOUND: return "target_not_found";
    case SPIN_ERR_MISSING_BINDING: return "missing_binding";
    case SPIN_ERR_UNKNOWN_PLACEHOLDER: return "unknown_placeholder";
    case SPIN_ERR_LAYOUT_MISMATCH: return "layout_mismatch";
    case SPIN_ERR_ALREADY_APPLIED: return "already_applied";
    case SPIN_ERR_TIMEOUT: return "timeout";
    case SPIN_ERR_KEY_NOT_FOUND: return "key_not_found";
    case SPIN_ERR_ALREADY_EXISTS: return "already_exists";
    case SPIN_ERR_TEMPLATE_SET_NOT_FOUND: return "template_set_not_found";
    case SPIN_ERR_DUPLICATE_NAME: return "duplicate_name";
    case SPIN_ERR_REGISTRY_CORRUPT: return "registry_corrupt";
    case SPIN_ERR_UNKNOWN_PROJECT: return "unknown_project";
    case SPIN_ERR_INVALID_NAME: return "invalid_name";
    case SPIN_ERR_INVALID_MANIFEST: return "invalid_manifest";
    case SPIN_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SPIN_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

spin_status spin_workspace_open(const char *dir, spin_workspace **out_ws) {
    if (!dir || !out_ws)
        return SPIN_ERR_INVALID_ARGUMENT;
    *out_ws = nullptr;
    try {
        *out_ws = new spin_workspace(dir);
        return SPIN_OK;
    } catch (const Error &e) {
        return status_for(e.code());
    } catch (...) {
        return SPIN_ERR_INTERNAL;
    }
}

void spin_workspace_close(spin_workspace *ws) { delete ws; }

const char *spin_last_error(const spin_workspace *ws) {
    return ws ? ws->last_error.c_str() : "";
}

spin_status spin_set_templates_dir(spin_workspace *ws, const char *dir) {
    return guarded(ws, [&] {
        if (!dir)
            throw Error(Errc::invalid_argument, "templates dir must not be NULL");
        ws->impl.set_templates_dir(dir);
        return SPIN_OK;
    });
}

void spin_string_free(char *s) { std::free(s); }

spin_status spin_generate(spin_workspace *ws, const char *spec_json, char **out_root) {
    return guarded(ws, [&] {
        if (!spec_json || !out_root)
            throw Error(Errc::invalid_argument, "spec_json and out_root must not be NULL");
        const auto spec = spinneret::project_spec_from_json_text(spec_json);
        const auto generated = ws->impl.generate(spec);
        *out_root = dup_string(generated.root.string());
        return SPIN_OK;
    });
}

spin_status spin_generate_batch(spin_workspace *ws, const char *manifest_json,
                                char **out_report_json) {
    return guarded(ws, [&] {
        if (!manifest_json || !out_report_json)
            throw Error(Errc::invalid_argument,
                        "manifest_json and out_report_json must not be NULL");
        const auto specs = spinneret::manifest_from_json_text(manifest_json);
        const auto result = ws->impl.generate_batch(specs);

        json items = json::array();
        for (const auto &item : result.items) {
            json j = {{"name", item.name}, {"ok", item.ok}, {"seconds", item.seconds}};
            if (item.ok)
                j["root"] = item.root;
            else
                j["error"] = item.error;
            items.push_back(std::move(j));
        }
        const json report = {{"total_seconds", result.total_seconds},
                             {"all_ok", result.all_ok()},
                             {"items", std::move(items)}};
        *out_report_json = dup_string(report.dump());
        return SPIN_OK;
    });
}

spin_status spin_verify_layout(spin_workspace *ws, const char *root,
                               char **out_report_json) {
    return guarded(ws, [&] {
        if (!root || !out_report_json)
            throw Error(Errc::invalid_argument, "root and out_report_json must not be NULL");
        const auto report = ws->impl.verify(root);
        json j = {{"missing", report.missing},
                  {"extra", report.extra},
                  {"complete", report.complete()}};
        if (report.change_once_applied)
            j["change_once_applied"] = *report.change_once_applied;
        else
            j["change_once_applied"] = nullptr;
        *out_report_json = dup_string(j.dump());
        return SPIN_OK;
    });
}

spin_status spin_list_projects(spin_workspace *ws, const char *name_glob, char **out_json) {
    return guarded(ws, [&] {
        if (!out_json)
            throw Error(Errc::invalid_argument, "out_json must not be NULL");
        json entries = json::array();
        for (const auto &entry : ws->impl.list(string_or_empty(name_glob)))
            entries.push_back(entry_to_json(entry));
        *out_json = dup_string(entries.dump());
        return SPIN_OK;
    });
}

spin_status spin_config_set(spin_workspace *ws, const char *project, const char *file_path,
                            const char *key, const char *option) {
    return guarded(ws, [&] {
        if (!key || !option)
            throw Error(Errc::invalid_argument, "key and option must not be NULL");
        ws->impl.config_set(string_or_empty(project), string_or_empty(file_path), key,
                            option);
        return SPIN_OK;
    });
}

spin_status spin_config_toggle(spin_workspace *ws, const char *project,
                               const char *file_path, const char *key,
                               int *out_now_commented) {
    return guarded(ws, [&] {
        if (!key)
            throw Error(Errc::invalid_argument, "key must not be NULL");
        const auto report =
            ws->impl.config_toggle(string_or_empty(project), string_or_empty(file_path), key);
        if (!report.key_found)
            throw Error(Errc::key_not_found,
                        std::string("key '") + key + "' not present; nothing to toggle");
        if (out_now_commented)
            *out_now_commented = report.now_commented ? 1 : 0;
        return SPIN_OK;
    });
}

spin_status spin_config_get(spin_workspace *ws, const char *project, const char *file_path,
                            const char *key, char **out_option, int *out_commented) {
    return guarded(ws, [&] {
        if (!key || !out_option)
            throw Error(Errc::invalid_argument, "key and out_option must not be NULL");
        const auto value =
            ws->impl.config_get(string_or_empty(project), string_or_empty(file_path), key);
        if (!value)
            throw Error(Errc::key_not_found, std::string("key '") + key + "' not present");
        *out_option = dup_string(value->option);
        if (out_commented)
            *out_commented = value->commented ? 1 : 0;
        return SPIN_OK;
    });
}

spin_status spin_insert(spin_workspace *ws, const char *project, const char *file_path,
                        const char *const *block_path, size_t block_path_len,
                        const char *const *code_lines, size_t code_lines_len,
                        spin_placement placement) {
    return guarded(ws, [&] {
        if ((block_path_len && !block_path) || (code_lines_len && !code_lines))
            throw Error(Errc::invalid_argument, "NULL array with nonzero length");
        spinneret::BlockPath path;
        for (size_t i = 0; i < block_path_len; ++i)
            path.emplace_back(string_or_empty(block_path[i]));
        std::vector<std::string> code;
        for (size_t i = 0; i < code_lines_len; ++i)
            code.emplace_back(string_or_empty(code_lines[i]));
        ws->impl.insert(string_or_empty(project), string_or_empty(file_path),
                        std::move(path), std::move(code),
                        placement == SPIN_PLACE_FRONT ? spinneret::Placement::Front
                                                      : spinneret::Placement::Back);
        return SPIN_OK;
    });
}

} // extern "C"
