#pragma once

// Independent reference implementations used to cross-check the library:
// a recursive-descent block parser (the production parser is a single-pass
// stack machine) and generators for random well-indented source files and
// Scrapy-style settings files with recorded layouts, so tests can construct
// expected outputs instead of re-deriving them through the code under test.

#include "core/block_tree.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

// ---------------------------------------------------------------------------
// Reference block parser
// ---------------------------------------------------------------------------

struct OracleEffLine {
    int index = 0; // 1-based line number
    int level = 0; // indent units
};

inline bool oracle_is_effective(const std::string &line) {
    for (char c : line) {
        if (c == ' ' || c == '\t')
            continue;
        return c != '#';
    }
    return false;
}

inline int oracle_leading_chars(const std::string &line) {
    int n = 0;
    for (char c : line) {
        if (c != ' ' && c != '\t')
            break;
        ++n;
    }
    return n;
}

// Consumes effective lines strictly deeper than parent_level. A line followed
// by a deeper line is a header and recursion collects its body; any other
// line is plain. last_index tracks the deepest-last consumed line.
inline std::size_t oracle_descend(const std::vector<OracleEffLine> &eff, std::size_t pos,
                                  int parent_level, int depth,
                                  std::vector<spinneret::BlockNode> &out, int &last_index) {
    while (pos < eff.size() && eff[pos].level > parent_level) {
        const OracleEffLine cur = eff[pos];
        last_index = cur.index;
        if (pos + 1 < eff.size() && eff[pos + 1].level > cur.level) {
            spinneret::BlockNode node;
            node.header_index = cur.index;
            node.header_level = cur.level;
            node.depth = depth;
            node.start = eff[pos + 1].index;
            int body_last = cur.index;
            pos = oracle_descend(eff, pos + 1, cur.level, depth + 1, node.children, body_last);
            node.end = body_last;
            last_index = body_last;
            out.push_back(std::move(node));
        } else {
            ++pos;
        }
    }
    return pos;
}

inline std::vector<spinneret::BlockNode>
oracle_block_forest(const std::vector<std::string> &lines, int unit_width) {
    std::vector<OracleEffLine> eff;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (!oracle_is_effective(lines[i]))
            continue;
        eff.push_back({static_cast<int>(i) + 1, oracle_leading_chars(lines[i]) / unit_width});
    }
    std::vector<spinneret::BlockNode> roots;
    int last = 0;
    oracle_descend(eff, 0, -1, 0, roots, last);
    return roots;
}

inline bool same_forest(const std::vector<spinneret::BlockNode> &a,
                        const std::vector<spinneret::BlockNode> &b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].header_index != b[i].header_index || a[i].start != b[i].start ||
            a[i].end != b[i].end || a[i].depth != b[i].depth ||
            a[i].header_level != b[i].header_level ||
            !same_forest(a[i].children, b[i].children))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Random well-indented source files
// ---------------------------------------------------------------------------

struct GeneratedSource {
    std::vector<std::string> lines;
    int unit_width = 4;
    bool tabs = false;
};

// Indentation grows by exactly one unit per nesting step (depth capped at 5),
// shrinks by arbitrary whole levels, and every line text is unique. Blank and
// comment lines are sprinkled in; a comment's own indent depth is arbitrary.
inline GeneratedSource random_source_file(std::mt19937 &rng) {
    GeneratedSource out;
    switch (rng() % 4) {
    case 0: out.unit_width = 1; break;
    case 1: out.unit_width = 2; break;
    case 2: out.unit_width = 4; break;
    default:
        out.unit_width = 1;
        out.tabs = true;
        break;
    }
    const auto indent = [&](int level) {
        return out.tabs ? std::string(static_cast<std::size_t>(level), '\t')
                        : std::string(static_cast<std::size_t>(level) *
                                          static_cast<std::size_t>(out.unit_width),
                                      ' ');
    };

    const std::size_t target = 1 + rng() % 100;
    int level = 0;
    int counter = 0;
    while (out.lines.size() < target) {
        const unsigned roll = rng() % 100;
        if (roll < 5) {
            out.lines.emplace_back();
        } else if (roll < 12) {
            out.lines.push_back(indent(static_cast<int>(rng() % 6)) + "# note " +
                                std::to_string(counter++));
        } else if (roll < 34 && level < 5) {
            out.lines.push_back(indent(level) + "def blk_" + std::to_string(counter++) +
                                "():");
            ++level;
        } else if (roll < 50 && level > 0) {
            level -= 1 + static_cast<int>(rng() % static_cast<unsigned>(level));
            out.lines.push_back(indent(level) + "stmt_" + std::to_string(counter++));
        } else {
            out.lines.push_back(indent(level) + "stmt_" + std::to_string(counter++));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Random settings files with recorded spans
// ---------------------------------------------------------------------------

enum class ConfigShape {
    ActiveSingle,    // KEY = value
    CommentedSingle, // #KEY = value (spacing varies)
    ActiveMulti,     // KEY = { ... } over several lines
    CommentedMulti,  // #KEY = { with commented continuation lines
};

struct ConfigEntrySpan {
    std::string key;
    ConfigShape shape = ConfigShape::ActiveSingle;
    bool commented = false;
    int first_line = 0; // 0-based index into lines
    int line_count = 1;
    std::string option; // trimmed option text of the first line
};

struct GeneratedConfig {
    std::vector<std::string> lines;
    std::vector<ConfigEntrySpan> entries;
};

inline const std::vector<std::string> &config_key_pool() {
    static const std::vector<std::string> keys = {
        "BOT_NAME",
        "SPIDER_MODULES",
        "NEWSPIDER_MODULE",
        "ROBOTSTXT_OBEY",
        "DOWNLOAD_DELAY",
        "RANDOMIZE_DOWNLOAD_DELAY",
        "CONCURRENT_REQUESTS",
        "CONCURRENT_REQUESTS_PER_DOMAIN",
        "COOKIES_ENABLED",
        "TELNETCONSOLE_ENABLED",
        "DEFAULT_REQUEST_HEADERS",
        "SPIDER_MIDDLEWARES",
        "DOWNLOADER_MIDDLEWARES",
        "EXTENSIONS",
        "ITEM_PIPELINES",
        "AUTOTHROTTLE_ENABLED",
        "AUTOTHROTTLE_START_DELAY",
        "AUTOTHROTTLE_MAX_DELAY",
        "HTTPCACHE_ENABLED",
        "HTTPCACHE_EXPIRATION_SECS",
        "USER_AGENT",
        "FEED_EXPORT_ENCODING",
        "LOG_LEVEL",
        "RETRY_TIMES",
    };
    return keys;
}

// Every key appears at most once per file; prose comments and blanks are
// interleaved and never contain an equal symbol.
inline GeneratedConfig random_config_file(std::mt19937 &rng) {
    static const std::vector<std::string> values = {
        "True", "False", "3", "0.5", "16", "'demo'", "\"utf-8\"", "\"Mozilla/5.0 (test)\"",
    };
    static const std::vector<std::string> prose = {
        "# Obey robots rules",
        "# See the docs for more settings",
        "# this file is documentation",
    };

    std::vector<std::string> keys = config_key_pool();
    std::shuffle(keys.begin(), keys.end(), rng);
    keys.resize(3 + rng() % 13);

    GeneratedConfig out;
    const auto filler = [&] {
        for (unsigned n = rng() % 3; n > 0; --n) {
            if (rng() % 2)
                out.lines.emplace_back();
            else
                out.lines.push_back(prose[rng() % prose.size()]);
        }
    };

    filler();
    for (const auto &key : keys) {
        ConfigEntrySpan entry;
        entry.key = key;
        entry.first_line = static_cast<int>(out.lines.size());
        switch (rng() % 4) {
        case 0: {
            entry.shape = ConfigShape::ActiveSingle;
            entry.option = values[rng() % values.size()];
            const char *pad = rng() % 3 == 0 ? "" : " ";
            out.lines.push_back(key + pad + "=" + pad + entry.option);
            break;
        }
        case 1: {
            entry.shape = ConfigShape::CommentedSingle;
            entry.commented = true;
            entry.option = values[rng() % values.size()];
            const char *marker = rng() % 2 ? "#" : "# ";
            const char *pad = rng() % 3 == 0 ? "" : " ";
            out.lines.push_back(marker + key + pad + "=" + pad + entry.option);
            break;
        }
        case 2: {
            entry.shape = ConfigShape::ActiveMulti;
            entry.option = "{";
            out.lines.push_back(key + " = {");
            const int inner = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < inner; ++i) {
                // A quoted bracket now and then stresses the balance counter.
                out.lines.push_back(rng() % 4 == 0
                                        ? "    'path.to.(Thing)': " + std::to_string(i) + ","
                                        : "    'module.Entry" + std::to_string(i) +
                                              "': " + std::to_string(100 * (i + 1)) + ",");
            }
            out.lines.push_back("}");
            entry.line_count = inner + 2;
            break;
        }
        default: {
            entry.shape = ConfigShape::CommentedMulti;
            entry.commented = true;
            entry.option = "{";
            out.lines.push_back("#" + key + " = {");
            const int inner = 1 + static_cast<int>(rng() % 2);
            for (int i = 0; i < inner; ++i)
                out.lines.push_back("#    'module.Entry" + std::to_string(i) +
                                    "': " + std::to_string(100 * (i + 1)) + ",");
            out.lines.push_back("#}");
            entry.line_count = inner + 2;
            break;
        }
        }
        out.entries.push_back(std::move(entry));
        filler();
    }
    return out;
}

inline std::string joined_lines(const std::vector<std::string> &lines) {
    std::string content;
    for (const auto &line : lines) {
        content += line;
        content += '\n';
    }
    return content;
}

// Expected content after set_option(key, option): the entry's whole span is
// replaced by one normalized active line; everything else is byte-identical.
inline std::string expected_after_set(const GeneratedConfig &config,
                                      const ConfigEntrySpan &entry,
                                      const std::string &option) {
    std::vector<std::string> lines;
    for (int i = 0; i < static_cast<int>(config.lines.size()); ++i) {
        if (i == entry.first_line)
            lines.push_back(entry.key + " = " + option);
        if (i < entry.first_line || i >= entry.first_line + entry.line_count)
            lines.push_back(config.lines[i]);
    }
    return joined_lines(lines);
}

} // namespace testsupport
