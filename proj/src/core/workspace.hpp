#pragma once

#include "code_insert.hpp"
#include "config_edit.hpp"
#include "registry.hpp"
#include "scaffold.hpp"
#include "template_engine.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace spinneret {

// One workspace directory bundles the project registry (spiders.json), the
// default output folder (spiders/) and an optional template directory
// (templates/). All higher-level entry points route through here so the C
// API and the command line share one behaviour.
class Workspace {
public:
    explicit Workspace(std::filesystem::path dir);

    const std::filesystem::path &dir() const { return dir_; }
    const std::filesystem::path &default_target_dir() const { return target_dir_; }
    Registry &registry() { return registry_; }
    const Registry &registry() const { return registry_; }

    // Template sets resolve against, in order: this override, the
    // SPINNERET_TEMPLATES environment variable, <workspace>/templates when it
    // exists, and finally the built-in default set.
    void set_templates_dir(std::filesystem::path dir);
    TemplateStore template_store() const;

    // target_dir defaults to <workspace>/spiders when the spec leaves it out.
    GeneratedProject generate(ProjectSpec spec);
    BatchResult generate_batch(std::vector<ProjectSpec> specs);

    LayoutReport verify(const std::filesystem::path &root) const;
    std::vector<RegistryEntry> list(const std::string &name_glob = "") const;

    // Paths of a registered project's editable files; unknown_project when
    // the name is not registered, target_not_found when the spider module is
    // missing on disk.
    std::filesystem::path settings_path_for(const std::string &project) const;
    std::filesystem::path spider_path_for(const std::string &project) const;

    // Edits address either a registered project (settings file / spider
    // module; recorded in the project's config history) or an explicit file.
    // Exactly one of `project` and `file_path` must be non-empty.
    EditReport config_set(const std::string &project, const std::filesystem::path &file_path,
                          const std::string &key, const std::string &option);
    EditReport config_toggle(const std::string &project,
                             const std::filesystem::path &file_path, const std::string &key);
    std::optional<OptionValue> config_get(const std::string &project,
                                          const std::filesystem::path &file_path,
                                          const std::string &key) const;

    InsertOutcome insert(const std::string &project, const std::filesystem::path &file_path,
                         BlockPath path, std::vector<std::string> code,
                         Placement placement);

private:
    std::filesystem::path edit_file(const std::string &project,
                                    const std::filesystem::path &file_path,
                                    bool spider_target) const;

    std::filesystem::path dir_;
    std::filesystem::path target_dir_;
    std::filesystem::path templates_override_;
    Registry registry_;
};

} // namespace spinneret
