#pragma once

#include "block_tree.hpp"
#include "template_engine.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace spinneret {

class Registry;

enum class Placement { Front, Back };

// A request to insert code lines at a block located by header signatures.
// Code lines carry no terminators and no leading indentation; the indentation
// of the resolution line is inherited.
struct InsertionRequest {
    std::filesystem::path file_path;
    BlockPath path;
    std::vector<std::string> code;
    Placement placement = Placement::Back;
};

// Pure form: splices code lines into `content` immediately after 1-based line
// `index` (0 prepends). Untouched bytes are preserved exactly.
std::string insert_lines(std::string_view content, int index,
                         std::span<const std::string> code_lines);

// File form of insert_lines; rewrites the file atomically and returns the new
// content.
std::string insert_at_index(const std::filesystem::path &file_path, int index,
                            std::span<const std::string> code_lines);

struct InsertOutcome {
    int resolved_index = 0; // line whose position and indentation anchored the insert
    bool via_block = false; // false when the single-signature fallback matched
    std::string content;    // new file content
};

// Resolves the request's block path against the file's block tree; a
// one-signature path that matches no block falls back to the first line whose
// trimmed text equals the signature. Back places the code after the resolved
// line, Front before it; either way each code line inherits the resolved
// line's exact leading whitespace.
InsertOutcome insert_in_block(const InsertionRequest &request);

struct ChangeOnceReport {
    std::vector<std::filesystem::path> written;
};

// Overwrites the one-shot files of a generated project (items, pipelines and
// the spider source) from their templates. When a registry is supplied the
// project's change-once marker is enforced and then set; a second run fails
// with already_applied.
ChangeOnceReport apply_change_once_set(const std::filesystem::path &project_root,
                                       const TemplateSet &set, const Bindings &bindings,
                                       Registry *registry);

} // namespace spinneret
