#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace spinneret {

struct ConfigEditRecord {
    std::string key;
    std::string option;
    std::string at; // ISO-8601 UTC
};

struct RegistryEntry {
    std::string name;
    std::filesystem::path root; // absolute
    std::string template_set;
    std::string created_at; // ISO-8601 UTC
    bool change_once_applied = false;
    std::vector<ConfigEditRecord> config_history;
};

std::string iso_utc_now();

// Simple glob match supporting '*' and '?'.
bool glob_match(std::string_view pattern, std::string_view text);

// The persisted record of generated projects, one JSON document on disk
// ({"v": 1, "projects": [...]}). Every mutation takes an advisory lock file,
// reloads, applies and saves with an atomic replace; a corrupt file is
// reported and never overwritten.
class Registry {
public:
    explicit Registry(std::filesystem::path file);

    const std::filesystem::path &file() const { return file_; }

    std::vector<RegistryEntry> list_projects(const std::string &name_glob = "") const;
    std::optional<RegistryEntry> find(const std::string &name) const;
    std::optional<RegistryEntry> find_by_root(const std::filesystem::path &root) const;

    void record_project(RegistryEntry entry);
    void log_config_edit(const std::string &name, const std::string &key,
                         const std::string &option);
    void set_change_once_applied(const std::string &name);

private:
    std::filesystem::path file_;
};

} // namespace spinneret
