#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace spinneret {

// One physical line with its terminator kept separate, so a parsed buffer can
// be reassembled into the exact original bytes.
struct RawLine {
    std::string text;       // content without terminator
    std::string terminator; // "\n", "\r\n", or "" for an unterminated last line
};

std::vector<RawLine> split_raw_lines(std::string_view content);
std::string join_raw_lines(const std::vector<RawLine> &lines);

// Line texts only, terminators dropped.
std::vector<std::string> split_line_texts(std::string_view content);

std::string_view trim(std::string_view s);
std::string_view leading_whitespace(std::string_view s);

std::string read_text_file(const std::filesystem::path &path);

// Writes via a sibling temp file followed by rename, so readers never observe
// a partially written file.
void atomic_write_file(const std::filesystem::path &path, std::string_view content);

} // namespace spinneret
