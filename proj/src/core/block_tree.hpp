#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spinneret {

enum class IndentStyle { Spaces, Tabs };

// How one level of nesting is written in a file: `unit_width` leading
// characters of `style` per level. Files mixing tabs and spaces in leading
// whitespace are rejected before a profile exists.
struct IndentProfile {
    int unit_width = 4;
    IndentStyle style = IndentStyle::Spaces;
};

// Per-line indent measurement. `indent` is the line's own depth in indent
// units and `next_indent` the depth of the next effective line (0 when there
// is none); both are meaningful only when `effective` is true. Blank lines
// and `#` comment lines are kept in the buffer but carry no measurement.
struct LineRecord {
    int index = 0; // 1-based
    std::string text;
    bool effective = false;
    int indent = 0;
    int next_indent = 0;
};

enum class TransitionKind { Enter, Same, Leave };

struct Transition {
    TransitionKind kind = TransitionKind::Same;
    int levels = 0; // number of units dropped; defined for Leave only
};

// A nested indentation block. `header_index` is the line that opens the
// block, [start, end] the effective body span, `depth` 0 for top-level
// blocks. Children are ordered by line number.
struct BlockNode {
    int header_index = 0;
    int start = 0;
    int end = 0;
    int depth = 0;
    int header_level = 0; // indent units of the header line
    std::vector<BlockNode> children;
};

struct BlockTree {
    IndentProfile profile;
    std::vector<LineRecord> records; // one per input line, in order
    std::vector<BlockNode> roots;
};

// Header signatures naming a nested block, outermost first. Signatures are
// compared against whitespace-trimmed header lines by exact equality.
using BlockPath = std::vector<std::string>;

IndentProfile detect_indent_profile(std::span<const std::string> lines);

std::vector<LineRecord> measure_lines(std::span<const std::string> lines,
                                      const IndentProfile &profile);

Transition classify_transition(int indent, int next_indent);

BlockTree build_block_tree(std::span<const std::string> lines);

// Resolves a block path level by level; among matching siblings the first in
// line order wins. Returns nullptr when any signature fails to match.
const BlockNode *locate_block(const BlockTree &tree, const BlockPath &path);

// 1-based indices of every line whose trimmed text equals the trimmed
// signature, ascending.
std::vector<int> matching_line_indices(std::span<const std::string> lines,
                                       std::string_view signature);

const std::string &header_text(const BlockTree &tree, const BlockNode &node);

} // namespace spinneret
