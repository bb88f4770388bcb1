#include "code_insert.hpp"

#include "error.hpp"
#include "registry.hpp"
#include "text_io.hpp"

namespace fs = std::filesystem;

namespace spinneret {

std::string insert_lines(std::string_view content, int index,
                         std::span<const std::string> code_lines) {
    auto lines = split_raw_lines(content);
    const int count = static_cast<int>(lines.size());
    if (index < 0 || index > count) {
        throw Error(Errc::index_out_of_range, "insert index " + std::to_string(index) +
                                                  " outside [0, " + std::to_string(count) +
                                                  "]");
    }

    std::vector<RawLine> inserted;
    inserted.reserve(code_lines.size());
    for (const auto &line : code_lines)
        inserted.push_back(RawLine{line, "\n"});

    // Keep a trailing-newline-less file trailing-newline-less: the previous
    // last line takes over the terminator and the new last line goes bare.
    if (index == count && count > 0 && lines.back().terminator.empty() &&
        !inserted.empty()) {
        lines.back().terminator = "\n";
        inserted.back().terminator = "";
    }

    lines.insert(lines.begin() + index, std::make_move_iterator(inserted.begin()),
                 std::make_move_iterator(inserted.end()));
    return join_raw_lines(lines);
}

std::string insert_at_index(const fs::path &file_path, int index,
                            std::span<const std::string> code_lines) {
    const std::string content = read_text_file(file_path);
    std::string updated = insert_lines(content, index, code_lines);
    atomic_write_file(file_path, updated);
    return updated;
}

InsertOutcome insert_in_block(const InsertionRequest &request) {
    if (request.path.empty())
        throw Error(Errc::invalid_argument, "empty block path");

    const std::string content = read_text_file(request.file_path);
    const auto lines = split_line_texts(content);
    const BlockTree tree = build_block_tree(lines);

    InsertOutcome outcome;
    if (const BlockNode *node = locate_block(tree, request.path)) {
        outcome.resolved_index = node->end;
        outcome.via_block = true;
    } else if (request.path.size() == 1) {
        const auto hits = matching_line_indices(lines, request.path.front());
        if (hits.empty()) {
            throw Error(Errc::target_not_found,
                        "no block or line matches '" + request.path.front() + "' in " +
                            request.file_path.string());
        }
        outcome.resolved_index = hits.front();
    } else {
        throw Error(Errc::target_not_found, "block path not found in " +
                                                request.file_path.string());
    }

    const std::string indent{
        leading_whitespace(lines[static_cast<std::size_t>(outcome.resolved_index) - 1])};
    std::vector<std::string> indented;
    indented.reserve(request.code.size());
    for (const auto &line : request.code)
        indented.push_back(indent + line);

    const int at = request.placement == Placement::Back ? outcome.resolved_index
                                                        : outcome.resolved_index - 1;
    outcome.content = insert_lines(content, at, indented);
    atomic_write_file(request.file_path, outcome.content);
    return outcome;
}

ChangeOnceReport apply_change_once_set(const fs::path &project_root, const TemplateSet &set,
                                       const Bindings &bindings, Registry *registry) {
    const auto need = [&](const char *name) -> const std::string & {
        auto it = bindings.find(name);
        if (it == bindings.end())
            throw Error(Errc::missing_binding, std::string("binding '") + name +
                                                   "' required for change-once apply");
        return it->second;
    };
    const std::string &project = need("project_name");
    const std::string &spider = need("spider_name");

    std::optional<RegistryEntry> entry;
    if (registry) {
        entry = registry->find_by_root(project_root);
        if (entry && entry->change_once_applied) {
            throw Error(Errc::already_applied, "project '" + entry->name +
                                                   "' was already initialized once");
        }
    }

    const fs::path pkg = project_root / project;
    const std::vector<std::pair<std::string, fs::path>> targets = {
        {"items", pkg / "items.py"},
        {"pipelines", pkg / "pipelines.py"},
        {"spider", pkg / "spiders" / (spider + ".py")},
    };
    for (const auto &[tid, path] : targets) {
        (void)tid;
        if (!fs::is_regular_file(path)) {
            throw Error(Errc::layout_mismatch,
                        "expected file missing: " + path.string());
        }
    }

    ChangeOnceReport report;
    for (const auto &[tid, path] : targets) {
        atomic_write_file(path, instantiate_template(set.get(tid), bindings));
        report.written.push_back(path);
    }

    if (registry && entry)
        registry->set_change_once_applied(entry->name);
    return report;
}

} // namespace spinneret
