#include "registry.hpp"

#include "error.hpp"
#include "text_io.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <thread>

#include <fcntl.h>
#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace spinneret {

namespace {

constexpr int kSchemaVersion = 1;

// Advisory lock via O_EXCL creation of <registry>.lock; serializes writers
// across processes.
class LockFile {
public:
    explicit LockFile(fs::path path) : path_(std::move(path)) {
        const auto deadline =
            std::chrono::steady_clock::now() + std::chrono::seconds(10);
        while (true) {
            const int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
            if (fd >= 0) {
                ::close(fd);
                return;
            }
            if (std::chrono::steady_clock::now() >= deadline) {
                throw Error(Errc::io,
                            "could not acquire registry lock " + path_.string());
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(5));
        }
    }

    ~LockFile() {
        std::error_code ec;
        fs::remove(path_, ec);
    }

    LockFile(const LockFile &) = delete;
    LockFile &operator=(const LockFile &) = delete;

private:
    fs::path path_;
};

json to_json(const RegistryEntry &entry) {
    json history = json::array();
    for (const auto &rec : entry.config_history)
        history.push_back({{"key", rec.key}, {"option", rec.option}, {"at", rec.at}});
    return {{"name", entry.name},
            {"root", entry.root.string()},
            {"template_set", entry.template_set},
            {"created_at", entry.created_at},
            {"change_once_applied", entry.change_once_applied},
            {"config_history", std::move(history)}};
}

RegistryEntry entry_from_json(const json &j) {
    RegistryEntry entry;
    entry.name = j.at("name").get<std::string>();
    entry.root = fs::path(j.at("root").get<std::string>());
    entry.template_set = j.at("template_set").get<std::string>();
    entry.created_at = j.at("created_at").get<std::string>();
    entry.change_once_applied = j.at("change_once_applied").get<bool>();
    for (const auto &rec : j.at("config_history")) {
        entry.config_history.push_back({rec.at("key").get<std::string>(),
                                        rec.at("option").get<std::string>(),
                                        rec.at("at").get<std::string>()});
    }
    return entry;
}

std::vector<RegistryEntry> load_entries(const fs::path &file) {
    std::error_code ec;
    if (!fs::exists(file, ec))
        return {};
    try {
        const json doc = json::parse(read_text_file(file));
        if (!doc.is_object() || doc.at("v").get<int>() != kSchemaVersion)
            throw std::runtime_error("unsupported schema");
        std::vector<RegistryEntry> entries;
        for (const auto &item : doc.at("projects"))
            entries.push_back(entry_from_json(item));
        return entries;
    } catch (const Error &) {
        throw;
    } catch (const std::exception &e) {
        throw Error(Errc::registry_corrupt,
                    "registry " + file.string() + " is unreadable: " + e.what());
    }
}

void save_entries(const fs::path &file, const std::vector<RegistryEntry> &entries) {
    json doc = {{"v", kSchemaVersion}, {"projects", json::array()}};
    for (const auto &entry : entries)
        doc["projects"].push_back(to_json(entry));
    atomic_write_file(file, doc.dump(2) + "\n");
}

fs::path normalized(const fs::path &p) {
    return fs::absolute(p).lexically_normal();
}

} // namespace

std::string iso_utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool glob_match(std::string_view pattern, std::string_view text) {
    // Iterative *-backtracking matcher.
    std::size_t p = 0, t = 0;
    std::size_t star = std::string_view::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*')
        ++p;
    return p == pattern.size();
}

Registry::Registry(fs::path file) : file_(std::move(file)) {}

std::vector<RegistryEntry> Registry::list_projects(const std::string &name_glob) const {
    auto entries = load_entries(file_);
    if (name_glob.empty())
        return entries;
    std::vector<RegistryEntry> filtered;
    for (auto &entry : entries) {
        if (glob_match(name_glob, entry.name))
            filtered.push_back(std::move(entry));
    }
    return filtered;
}

std::optional<RegistryEntry> Registry::find(const std::string &name) const {
    for (auto &entry : load_entries(file_)) {
        if (entry.name == name)
            return entry;
    }
    return std::nullopt;
}

std::optional<RegistryEntry> Registry::find_by_root(const fs::path &root) const {
    const fs::path want = normalized(root);
    for (auto &entry : load_entries(file_)) {
        if (normalized(entry.root) == want)
            return entry;
    }
    return std::nullopt;
}

void Registry::record_project(RegistryEntry entry) {
    LockFile lock(file_.string() + ".lock");
    auto entries = load_entries(file_);
    for (const auto &existing : entries) {
        if (existing.name == entry.name) {
            throw Error(Errc::duplicate_name,
                        "project '" + entry.name + "' is already registered");
        }
    }
    entry.root = normalized(entry.root);
    entries.push_back(std::move(entry));
    save_entries(file_, entries);
}

void Registry::log_config_edit(const std::string &name, const std::string &key,
                               const std::string &option) {
    LockFile lock(file_.string() + ".lock");
    auto entries = load_entries(file_);
    for (auto &entry : entries) {
        if (entry.name == name) {
            entry.config_history.push_back({key, option, iso_utc_now()});
            save_entries(file_, entries);
            return;
        }
    }
    throw Error(Errc::unknown_project, "no registered project named '" + name + "'");
}

void Registry::set_change_once_applied(const std::string &name) {
    LockFile lock(file_.string() + ".lock");
    auto entries = load_entries(file_);
    for (auto &entry : entries) {
        if (entry.name == name) {
            entry.change_once_applied = true;
            save_entries(file_, entries);
            return;
        }
    }
    throw Error(Errc::unknown_project, "no registered project named '" + name + "'");
}

} // namespace spinneret
