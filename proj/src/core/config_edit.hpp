#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace spinneret {

// A parsed key-value settings line. `head` holds the exact bytes before the
// key (possibly a comment marker), `option` the trimmed text after the equal
// symbol on this line only. `raw` reconstructs the original line.
struct ConfigLine {
    std::string head;
    std::string key;
    std::string option;
    std::string raw;
};

// Total function: returns nullopt for lines without the equal symbol, with an
// empty key, or whose would-be key is prose (contains whitespace or '#').
std::optional<ConfigLine> parse_config_line(std::string_view line,
                                            std::string_view equal = "=");

// Net bracket balance of a line, ignoring brackets inside quoted spans.
// `in_quote` carries the quoting state across continuation lines; it holds
// '\'', '"' or '\0'.
int bracket_balance(std::string_view text, char &in_quote);

struct EditReport {
    bool key_found = false;
    bool appended = false;
    int lines_rewritten = 0;
    bool now_commented = false; // state after a toggle
};

struct WaitOptions {
    std::chrono::duration<double> interval{0.1};
    std::chrono::duration<double> timeout{30.0};
};

// Polls until the file exists; throws Errc::timeout once the bound elapses.
void wait_for_file(const std::filesystem::path &path, const WaitOptions &options = {});

// Content-level edits (no I/O), used directly by the tests.
EditReport set_option_in(std::string &content, std::string_view key,
                         std::string_view option, std::string_view equal = "=",
                         std::string_view terminator = "\n");
EditReport toggle_comment_in(std::string &content, std::string_view key,
                             std::string_view equal = "=",
                             std::string_view terminator = "\n");

// File-level edits: wait for the file (set only), apply the content edit and
// rewrite atomically. Matched lines are normalized to `key = option`; every
// other line keeps its exact bytes. A missing key is appended for set and
// reported (not created) for toggle.
EditReport set_option(const std::filesystem::path &file_path, std::string_view key,
                      std::string_view option, std::string_view equal = "=",
                      std::string_view terminator = "\n", const WaitOptions &wait = {});
EditReport toggle_comment(const std::filesystem::path &file_path, std::string_view key,
                          std::string_view equal = "=",
                          std::string_view terminator = "\n");

struct OptionValue {
    std::string option;
    bool commented = false;
    bool continued = false; // option spills onto following lines
};

// Reads the first line whose key matches; nullopt when absent.
std::optional<OptionValue> get_option(const std::filesystem::path &file_path,
                                      std::string_view key, std::string_view equal = "=");
std::optional<OptionValue> get_option_in(std::string_view content, std::string_view key,
                                         std::string_view equal = "=");

} // namespace spinneret
