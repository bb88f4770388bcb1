#include "block_tree.hpp"

#include "error.hpp"
#include "text_io.hpp"

#include <algorithm>
#include <cstdlib>

namespace spinneret {

namespace {

bool is_effective(std::string_view text) {
    const std::string_view t = trim(text);
    return !t.empty() && t.front() != '#';
}

// Leading indent run in characters. Rejects runs mixing tabs and spaces.
int leading_run(std::string_view text, int line_no, bool &uses_tab) {
    int spaces = 0;
    int tabs = 0;
    for (char c : text) {
        if (c == ' ')
            ++spaces;
        else if (c == '\t')
            ++tabs;
        else
            break;
    }
    if (spaces > 0 && tabs > 0) {
        throw Error(Errc::mixed_indentation, "line " + std::to_string(line_no) +
                                                 " mixes tabs and spaces in its indentation");
    }
    uses_tab = tabs > 0;
    return spaces + tabs;
}

} // namespace

IndentProfile detect_indent_profile(std::span<const std::string> lines) {
    bool seen_tab = false;
    bool seen_space = false;
    int min_delta = 0;
    int prev_effective = -1;

    for (std::size_t i = 0; i < lines.size(); ++i) {
        bool uses_tab = false;
        const int width = leading_run(lines[i], static_cast<int>(i) + 1, uses_tab);
        if (width > 0) {
            if (uses_tab)
                seen_tab = true;
            else
                seen_space = true;
            if (seen_tab && seen_space) {
                throw Error(Errc::mixed_indentation,
                            "file mixes tab-indented and space-indented lines");
            }
        }
        if (!is_effective(lines[i]))
            continue;
        if (prev_effective >= 0) {
            const int delta = std::abs(width - prev_effective);
            if (delta > 0 && (min_delta == 0 || delta < min_delta))
                min_delta = delta;
        }
        prev_effective = width;
    }

    IndentProfile profile;
    if (min_delta > 0)
        profile.unit_width = min_delta;
    profile.style = seen_tab ? IndentStyle::Tabs : IndentStyle::Spaces;
    return profile;
}

std::vector<LineRecord> measure_lines(std::span<const std::string> lines,
                                      const IndentProfile &profile) {
    std::vector<LineRecord> records;
    records.reserve(lines.size());

    std::vector<std::size_t> effective_at; // positions into records
    for (std::size_t i = 0; i < lines.size(); ++i) {
        LineRecord rec;
        rec.index = static_cast<int>(i) + 1;
        rec.text = lines[i];
        rec.effective = is_effective(lines[i]);
        if (rec.effective) {
            bool uses_tab = false;
            const int width = leading_run(lines[i], rec.index, uses_tab);
            if (width > 0 && (uses_tab != (profile.style == IndentStyle::Tabs))) {
                throw Error(Errc::mixed_indentation,
                            "line " + std::to_string(rec.index) +
                                " is indented against the file's indent style");
            }
            if (width % profile.unit_width != 0) {
                throw Error(Errc::ragged_indent,
                            "line " + std::to_string(rec.index) + " indent of " +
                                std::to_string(width) + " is not a multiple of " +
                                std::to_string(profile.unit_width));
            }
            rec.indent = width / profile.unit_width;
            effective_at.push_back(records.size());
        }
        records.push_back(std::move(rec));
    }

    // b of each effective line = f of the next effective line, 0 for the last.
    for (std::size_t k = 0; k < effective_at.size(); ++k) {
        auto &rec = records[effective_at[k]];
        rec.next_indent =
            k + 1 < effective_at.size() ? records[effective_at[k + 1]].indent : 0;
    }
    return records;
}

Transition classify_transition(int indent, int next_indent) {
    const int diff = indent - next_indent;
    if (diff < 0)
        return Transition{TransitionKind::Enter, 0};
    if (diff == 0)
        return Transition{TransitionKind::Same, 0};
    return Transition{TransitionKind::Leave, diff};
}

BlockTree build_block_tree(std::span<const std::string> lines) {
    BlockTree tree;
    tree.profile = detect_indent_profile(lines);
    tree.records = measure_lines(lines, tree.profile);

    std::vector<const LineRecord *> effective;
    for (const auto &rec : tree.records) {
        if (rec.effective)
            effective.push_back(&rec);
    }

    std::vector<BlockNode> open;
    auto close_top = [&](int end_index) {
        BlockNode done = std::move(open.back());
        open.pop_back();
        done.end = end_index;
        if (open.empty())
            tree.roots.push_back(std::move(done));
        else
            open.back().children.push_back(std::move(done));
    };

    for (std::size_t k = 0; k < effective.size(); ++k) {
        const LineRecord &rec = *effective[k];
        const Transition t = classify_transition(rec.indent, rec.next_indent);
        if (t.kind == TransitionKind::Enter) {
            // An Enter line is a header; its body starts at the next effective
            // line. A deeper-than-one-unit jump still opens a single block.
            BlockNode node;
            node.header_index = rec.index;
            node.start = effective[k + 1]->index;
            node.end = node.start;
            node.depth = static_cast<int>(open.size());
            node.header_level = rec.indent;
            open.push_back(std::move(node));
        } else if (t.kind == TransitionKind::Leave) {
            // This line is the last one of every block the dedent steps out of.
            while (!open.empty() && open.back().header_level >= rec.next_indent)
                close_top(rec.index);
        }
    }
    // The final effective line has next_indent 0, so the Leave above drains the
    // stack; this only fires on an empty effective set degenerating.
    while (!open.empty())
        close_top(effective.empty() ? 0 : effective.back()->index);

    return tree;
}

const BlockNode *locate_block(const BlockTree &tree, const BlockPath &path) {
    if (path.empty())
        return nullptr;
    const std::vector<BlockNode> *level = &tree.roots;
    const BlockNode *found = nullptr;
    for (const auto &signature : path) {
        const std::string_view want = trim(signature);
        const BlockNode *match = nullptr;
        for (const auto &node : *level) {
            if (trim(header_text(tree, node)) == want) {
                match = &node;
                break;
            }
        }
        if (!match)
            return nullptr;
        found = match;
        level = &match->children;
    }
    return found;
}

std::vector<int> matching_line_indices(std::span<const std::string> lines,
                                       std::string_view signature) {
    const std::string_view want = trim(signature);
    std::vector<int> hits;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (trim(lines[i]) == want)
            hits.push_back(static_cast<int>(i) + 1);
    }
    return hits;
}

const std::string &header_text(const BlockTree &tree, const BlockNode &node) {
    return tree.records[static_cast<std::size_t>(node.header_index) - 1].text;
}

} // namespace spinneret
