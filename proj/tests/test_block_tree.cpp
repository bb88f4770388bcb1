#include "core/block_tree.hpp"
#include "core/error.hpp"

#include "support/oracles.hpp"

#include "doctest.h"

#include <random>
#include <string>
#include <vector>

using namespace spinneret;
using testsupport::oracle_block_forest;
using testsupport::same_forest;

namespace {

std::vector<std::string> L(std::initializer_list<const char *> lines) {
    return {lines.begin(), lines.end()};
}

} // namespace

TEST_CASE("indent profile from a four-space body") {
    const auto profile = detect_indent_profile(L({"class A:", "    x = 1"}));
    CHECK(profile.unit_width == 4);
    CHECK(profile.style == IndentStyle::Spaces);
}

TEST_CASE("indent profile defaults when nothing is indented") {
    const auto profile = detect_indent_profile(L({"a = 1", "b = 2"}));
    CHECK(profile.unit_width == 4);
    CHECK(profile.style == IndentStyle::Spaces);
}

TEST_CASE("indent profile counts one tab as one unit") {
    const auto profile = detect_indent_profile(L({"def f():", "\tx = 1"}));
    CHECK(profile.unit_width == 1);
    CHECK(profile.style == IndentStyle::Tabs);
}

TEST_CASE("indent profile picks the minimal positive delta") {
    // Body at 2, nested body at 4: smallest step is 2.
    const auto profile = detect_indent_profile(L({"a:", "  b:", "    c", "  d"}));
    CHECK(profile.unit_width == 2);
}

TEST_CASE("mixed tab and space indentation is rejected") {
    CHECK_THROWS_AS(detect_indent_profile(L({"a:", " \tb"})), Error);
    try {
        detect_indent_profile(L({"a:", "    b", "c:", "\td"}));
        FAIL("expected mixed_indentation");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::mixed_indentation);
    }
}

TEST_CASE("measure_lines produces the Fig-style f/b pairs") {
    const auto lines = L({"def f():", "  x = 1", "  y = 2"});
    const auto records = measure_lines(lines, IndentProfile{2, IndentStyle::Spaces});
    REQUIRE(records.size() == 3);
    CHECK(records[0].indent == 0);
    CHECK(records[0].next_indent == 1);
    CHECK(records[2].indent == 1);
    CHECK(records[2].next_indent == 0); // last effective line
}

TEST_CASE("measure_lines on a single line") {
    const auto records = measure_lines(L({"x = 1"}), IndentProfile{});
    REQUIRE(records.size() == 1);
    CHECK(records[0].indent == 0);
    CHECK(records[0].next_indent == 0);
}

TEST_CASE("blank and comment lines carry no measurement") {
    const auto lines = L({"def f():", "", "  # setup", "  x = 1"});
    const auto records = measure_lines(lines, IndentProfile{2, IndentStyle::Spaces});
    CHECK_FALSE(records[1].effective);
    CHECK_FALSE(records[2].effective);
    CHECK(records[0].next_indent == 1); // skips straight to "  x = 1"
}

TEST_CASE("ragged indentation is rejected") {
    try {
        measure_lines(L({"def f():", "   x = 1"}), IndentProfile{2, IndentStyle::Spaces});
        FAIL("expected ragged_indent");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::ragged_indent);
    }
}

TEST_CASE("transition classification follows the sign of the indent change") {
    CHECK(classify_transition(0, 1).kind == TransitionKind::Enter);
    CHECK(classify_transition(1, 1).kind == TransitionKind::Same);
    const auto leave = classify_transition(2, 0);
    CHECK(leave.kind == TransitionKind::Leave);
    CHECK(leave.levels == 2);
}

TEST_CASE("trichotomy is exhaustive over a small grid") {
    for (int f = 0; f <= 8; ++f) {
        for (int b = 0; b <= 8; ++b) {
            const auto t = classify_transition(f, b);
            if (f < b)
                CHECK(t.kind == TransitionKind::Enter);
            else if (f == b)
                CHECK(t.kind == TransitionKind::Same);
            else {
                CHECK(t.kind == TransitionKind::Leave);
                CHECK(t.levels == f - b);
            }
        }
    }
}

TEST_CASE("block tree over a two-level file") {
    const auto lines = L({"class A:", "  def b(self):", "    x = 1", "y = 2"});
    const auto tree = build_block_tree(lines);
    REQUIRE(tree.roots.size() == 1);
    const auto &a = tree.roots[0];
    CHECK(a.header_index == 1);
    CHECK(a.start == 2);
    CHECK(a.end == 3);
    CHECK(a.depth == 0);
    REQUIRE(a.children.size() == 1);
    CHECK(a.children[0].header_index == 2);
    CHECK(a.children[0].start == 3);
    CHECK(a.children[0].end == 3);
    CHECK(a.children[0].depth == 1);
}

TEST_CASE("flat file yields an empty forest") {
    CHECK(build_block_tree(L({"a = 1", "b = 2"})).roots.empty());
}

TEST_CASE("three nested blocks nest in order") {
    const auto tree = build_block_tree(L({"a:", " b:", "  c:", "   x", " y"}));
    REQUIRE(tree.roots.size() == 1);
    REQUIRE(tree.roots[0].children.size() == 1);
    REQUIRE(tree.roots[0].children[0].children.size() == 1);
    CHECK(tree.roots[0].children[0].children[0].header_index == 3);
    CHECK(tree.roots[0].end == 5); // " y" still belongs to the outer block
}

TEST_CASE("a multi-unit indent jump opens a single block") {
    const auto tree = build_block_tree(L({"a:", "  b", "a2:", "      deep", "  c"}));
    // unit = 2; "a2:" jumps from 0 to 3 units. One block, not three.
    REQUIRE(tree.roots.size() == 2);
    CHECK(tree.roots[1].header_index == 3);
    CHECK(tree.roots[1].children.empty());
    CHECK(tree.roots[1].end == 5);
}

TEST_CASE("siblings after a dedent attach to the right parent") {
    const auto lines = L({"a:", "  b:", "    x", "  c:", "    y", "z"});
    const auto tree = build_block_tree(lines);
    REQUIRE(tree.roots.size() == 1);
    REQUIRE(tree.roots[0].children.size() == 2);
    CHECK(tree.roots[0].children[0].header_index == 2);
    CHECK(tree.roots[0].children[1].header_index == 4);
    CHECK(tree.roots[0].end == 5);
}

TEST_CASE("trailing header without a body opens nothing") {
    const auto tree = build_block_tree(L({"a:", "  x", "b:"}));
    REQUIRE(tree.roots.size() == 1);
    CHECK(tree.roots[0].header_index == 1);
}

TEST_CASE("locate_block resolves nested paths and sibling ties") {
    const auto lines =
        L({"class A:", "  def b(self):", "    x = 1", "  def b(self):", "    y = 2"});
    const auto tree = build_block_tree(lines);

    const auto *inner = locate_block(tree, {"class A:", "def b(self):"});
    REQUIRE(inner != nullptr);
    CHECK(inner->header_index == 2); // first sibling in line order wins
    CHECK(inner->end == 3);

    const auto *outer = locate_block(tree, {"class A:"});
    REQUIRE(outer != nullptr);
    CHECK(outer->header_index == 1);
    CHECK(outer->end == 5);

    CHECK(locate_block(tree, {"class Z:"}) == nullptr);
    CHECK(locate_block(tree, {"class A:", "def q(self):"}) == nullptr);
}

TEST_CASE("locate_block trims both the signature and the header") {
    const auto tree = build_block_tree(L({"if x:", "    y"}));
    CHECK(locate_block(tree, {"  if x:  "}) != nullptr);
}

TEST_CASE("matching_line_indices returns 1-based hits in order") {
    CHECK(matching_line_indices(L({"a", "  x=1", "a"}), "a") == std::vector<int>{1, 3});
    CHECK(matching_line_indices({}, "a").empty());
    CHECK(matching_line_indices(L({"  foo  "}), "foo") == std::vector<int>{1});
}

TEST_CASE("parsing the same content twice gives structurally equal trees") {
    std::mt19937 rng(20240817);
    const auto source = testsupport::random_source_file(rng);
    const auto once = build_block_tree(source.lines);
    const auto twice = build_block_tree(source.lines);
    CHECK(same_forest(once.roots, twice.roots));
}

TEST_CASE("random files agree with the reference parser") {
    std::mt19937 rng(97);
    for (int round = 0; round < 150; ++round) {
        const auto source = testsupport::random_source_file(rng);
        const auto tree = build_block_tree(source.lines);
        const auto expected = oracle_block_forest(source.lines, source.unit_width);
        if (!same_forest(tree.roots, expected)) {
            CAPTURE(round);
            FAIL_CHECK("forest mismatch against reference parser");
            break;
        }
    }
}

TEST_CASE("every leave closes as many blocks as the indent drop") {
    // Opens and closes must balance over any parsed file: count nodes and
    // check spans nest properly.
    std::mt19937 rng(1234);
    for (int round = 0; round < 50; ++round) {
        const auto source = testsupport::random_source_file(rng);
        const auto tree = build_block_tree(source.lines);
        // Walk the forest checking the span invariants from the node docs.
        std::vector<const BlockNode *> stack;
        for (const auto &root : tree.roots)
            stack.push_back(&root);
        while (!stack.empty()) {
            const BlockNode *node = stack.back();
            stack.pop_back();
            CHECK(node->header_index < node->start);
            CHECK(node->start <= node->end);
            int prev_end = node->header_index;
            for (const auto &child : node->children) {
                CHECK(child.header_index > prev_end);
                CHECK(child.start >= node->start);
                CHECK(child.end <= node->end);
                CHECK(child.depth == node->depth + 1);
                prev_end = child.end;
                stack.push_back(&child);
            }
        }
    }
}
