#include "text_io.hpp"

#include "error.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;

namespace spinneret {

std::vector<RawLine> split_raw_lines(std::string_view content) {
    std::vector<RawLine> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i < content.size(); ++i) {
        if (content[i] != '\n')
            continue;
        RawLine line;
        std::size_t end = i;
        if (end > start && content[end - 1] == '\r') {
            line.terminator = "\r\n";
            --end;
        } else {
            line.terminator = "\n";
        }
        line.text.assign(content.substr(start, end - start));
        lines.push_back(std::move(line));
        start = i + 1;
    }
    if (start < content.size())
        lines.push_back(RawLine{std::string(content.substr(start)), ""});
    return lines;
}

std::string join_raw_lines(const std::vector<RawLine> &lines) {
    std::string out;
    for (const auto &line : lines) {
        out += line.text;
        out += line.terminator;
    }
    return out;
}

std::vector<std::string> split_line_texts(std::string_view content) {
    std::vector<std::string> texts;
    for (auto &line : split_raw_lines(content))
        texts.push_back(std::move(line.text));
    return texts;
}

std::string_view trim(std::string_view s) {
    std::size_t b = 0;
    while (b < s.size() && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r'))
        ++b;
    std::size_t e = s.size();
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r'))
        --e;
    return s.substr(b, e - b);
}

std::string_view leading_whitespace(std::string_view s) {
    std::size_t n = 0;
    while (n < s.size() && (s[n] == ' ' || s[n] == '\t'))
        ++n;
    return s.substr(0, n);
}

std::string read_text_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::io, "cannot open " + path.string() + ": " + std::strerror(errno));
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw Error(Errc::io, "read failed on " + path.string());
    return std::move(buf).str();
}

void atomic_write_file(const fs::path &path, std::string_view content) {
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");

    fs::path tmp;
    for (int attempt = 0;; ++attempt) {
        tmp = dir / (path.filename().string() + ".tmp" + std::to_string(rng() & 0xffffff));
        if (!fs::exists(tmp))
            break;
        if (attempt > 16)
            throw Error(Errc::io, "cannot allocate temp file next to " + path.string());
    }

    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(Errc::io,
                        "cannot create " + tmp.string() + ": " + std::strerror(errno));
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            fs::remove(tmp, ignored);
            throw Error(Errc::io, "write failed on " + tmp.string());
        }
    }

    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(tmp, ignored);
        throw Error(Errc::io, "rename to " + path.string() + " failed: " + ec.message());
    }
}

} // namespace spinneret
