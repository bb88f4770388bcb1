#include "config_edit.hpp"

#include "error.hpp"
#include "text_io.hpp"

#include <thread>
#include <vector>

namespace fs = std::filesystem;

namespace spinneret {

namespace {

bool contains_whitespace(std::string_view s) {
    return s.find(' ') != std::string_view::npos || s.find('\t') != std::string_view::npos;
}

std::string make_line(std::string_view head, std::string_view key, std::string_view equal,
                      std::string_view option, std::string_view terminator) {
    std::string out;
    out.reserve(head.size() + key.size() + equal.size() + option.size() +
                terminator.size() + 2);
    out.append(head);
    out.append(key);
    out += ' ';
    out.append(equal);
    out += ' ';
    out.append(option);
    out.append(terminator);
    return out;
}

// Number of continuation lines belonging to the option opened on `lines[at]`,
// judged by bracket balance of the text after the equal symbol.
std::size_t continuation_extent(const std::vector<RawLine> &lines, std::size_t at,
                                std::size_t equal_end) {
    char quote = '\0';
    int balance = bracket_balance(std::string_view(lines[at].text).substr(equal_end), quote);
    std::size_t extent = 0;
    while (balance > 0 && at + 1 + extent < lines.size()) {
        ++extent;
        balance += bracket_balance(lines[at + extent].text, quote);
    }
    return extent;
}

std::size_t equal_end_of(const RawLine &line, std::string_view equal) {
    const auto pos = line.text.find(equal);
    return pos == std::string::npos ? line.text.size() : pos + equal.size();
}

} // namespace

int bracket_balance(std::string_view text, char &in_quote) {
    int balance = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quote != '\0') {
            if (c == '\\')
                ++i; // skip the escaped character
            else if (c == in_quote)
                in_quote = '\0';
            continue;
        }
        switch (c) {
        case '\'':
        case '"': in_quote = c; break;
        case '(':
        case '[':
        case '{': ++balance; break;
        case ')':
        case ']':
        case '}': --balance; break;
        default: break;
        }
    }
    return balance;
}

std::optional<ConfigLine> parse_config_line(std::string_view line, std::string_view equal) {
    if (equal.empty())
        return std::nullopt;
    const auto equal_pos = line.find(equal);
    if (equal_pos == std::string_view::npos)
        return std::nullopt;

    // head: optional spaces, at most one comment marker, optional spaces.
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
        ++i;
    if (i < line.size() && line[i] == '#') {
        ++i;
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
            ++i;
    }
    if (i >= equal_pos)
        return std::nullopt; // nothing between head and the equal symbol

    const std::string_view key = trim(line.substr(i, equal_pos - i));
    if (key.empty() || contains_whitespace(key) || key.find('#') != std::string_view::npos)
        return std::nullopt; // prose comment, not a settings line

    ConfigLine parsed;
    parsed.head.assign(line.substr(0, i));
    parsed.key.assign(key);
    parsed.option.assign(trim(line.substr(equal_pos + equal.size())));
    parsed.raw.assign(line);
    return parsed;
}

void wait_for_file(const fs::path &path, const WaitOptions &options) {
    if (options.interval.count() <= 0)
        throw Error(Errc::invalid_argument, "poll interval must be positive");
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              options.timeout);
    while (true) {
        std::error_code ec;
        if (fs::exists(path, ec))
            return;
        if (std::chrono::steady_clock::now() >= deadline) {
            throw Error(Errc::timeout, "file " + path.string() + " did not appear within " +
                                           std::to_string(options.timeout.count()) + " s");
        }
        std::this_thread::sleep_for(
            std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                options.interval));
    }
}

EditReport set_option_in(std::string &content, std::string_view key, std::string_view option,
                         std::string_view equal, std::string_view terminator) {
    if (option == "#") {
        throw Error(Errc::invalid_argument,
                    "option '#' is reserved; use toggle for comment flips");
    }

    const auto lines = split_raw_lines(content);
    std::string out;
    out.reserve(content.size() + key.size() + option.size() + 8);
    EditReport report;

    std::size_t i = 0;
    while (i < lines.size()) {
        const auto parsed = parse_config_line(lines[i].text, equal);
        const std::size_t extent =
            parsed ? continuation_extent(lines, i, equal_end_of(lines[i], equal)) : 0;
        if (parsed && parsed->key == key) {
            // Head cleared: a set always leaves the line active. A multi-line
            // option is collapsed into the single rewritten line.
            out += make_line("", key, equal, option, terminator);
            ++report.lines_rewritten;
            report.key_found = true;
        } else {
            for (std::size_t j = i; j <= i + extent; ++j) {
                out += lines[j].text;
                out += lines[j].terminator;
            }
        }
        i += extent + 1;
    }

    if (!report.key_found) {
        out += '\n';
        out += make_line("", key, equal, option, terminator);
        report.appended = true;
    }
    content = std::move(out);
    return report;
}

EditReport toggle_comment_in(std::string &content, std::string_view key,
                             std::string_view equal, std::string_view terminator) {
    const auto lines = split_raw_lines(content);
    std::string out;
    out.reserve(content.size() + 8);
    EditReport report;

    std::size_t i = 0;
    while (i < lines.size()) {
        const auto parsed = parse_config_line(lines[i].text, equal);
        const std::size_t extent =
            parsed ? continuation_extent(lines, i, equal_end_of(lines[i], equal)) : 0;
        if (parsed && parsed->key == key) {
            const bool commented = parsed->head.find('#') != std::string::npos;
            out += make_line(commented ? "" : "#", key, equal, parsed->option, terminator);
            report.now_commented = !commented;
            ++report.lines_rewritten;
            report.key_found = true;
            // Continuation lines of a multi-line option are left as they are;
            // only the opening line flips.
            for (std::size_t j = i + 1; j <= i + extent; ++j) {
                out += lines[j].text;
                out += lines[j].terminator;
            }
        } else {
            for (std::size_t j = i; j <= i + extent; ++j) {
                out += lines[j].text;
                out += lines[j].terminator;
            }
        }
        i += extent + 1;
    }

    if (report.key_found)
        content = std::move(out);
    return report;
}

EditReport set_option(const fs::path &file_path, std::string_view key,
                      std::string_view option, std::string_view equal,
                      std::string_view terminator, const WaitOptions &wait) {
    wait_for_file(file_path, wait);
    std::string content = read_text_file(file_path);
    const std::string before = content;
    EditReport report = set_option_in(content, key, option, equal, terminator);
    if (content != before)
        atomic_write_file(file_path, content);
    return report;
}

EditReport toggle_comment(const fs::path &file_path, std::string_view key,
                          std::string_view equal, std::string_view terminator) {
    std::string content = read_text_file(file_path);
    const std::string before = content;
    EditReport report = toggle_comment_in(content, key, equal, terminator);
    if (report.key_found && content != before)
        atomic_write_file(file_path, content);
    return report;
}

std::optional<OptionValue> get_option_in(std::string_view content, std::string_view key,
                                         std::string_view equal) {
    const auto lines = split_raw_lines(content);
    std::size_t i = 0;
    while (i < lines.size()) {
        const auto parsed = parse_config_line(lines[i].text, equal);
        const std::size_t extent =
            parsed ? continuation_extent(lines, i, equal_end_of(lines[i], equal)) : 0;
        if (parsed && parsed->key == key) {
            OptionValue value;
            value.option = parsed->option;
            value.commented = parsed->head.find('#') != std::string::npos;
            value.continued = extent > 0;
            return value;
        }
        i += extent + 1;
    }
    return std::nullopt;
}

std::optional<OptionValue> get_option(const fs::path &file_path, std::string_view key,
                                      std::string_view equal) {
    return get_option_in(read_text_file(file_path), key, equal);
}

} // namespace spinneret
