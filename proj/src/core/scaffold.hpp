#pragma once

#include "registry.hpp"
#include "template_engine.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spinneret {

// Everything needed to generate one crawler project. `name` doubles as the
// root folder name; `spider_name` defaults to it.
struct ProjectSpec {
    std::string name;
    std::string spider_name;
    std::vector<std::string> allowed_domains;
    std::vector<std::string> start_urls;
    std::string template_set = "default";
    std::filesystem::path target_dir;
    std::vector<std::pair<std::string, std::string>> config_overrides;

    std::string effective_spider_name() const {
        return spider_name.empty() ? name : spider_name;
    }
};

struct GeneratedProject {
    std::filesystem::path root;
    std::filesystem::path settings_path;
    std::filesystem::path spider_path;
    std::string created_at;
};

// Throws invalid_name unless `name` is letters/digits/underscore and does not
// start with a digit.
void validate_project_name(const std::string &name);

// Template bindings derived from a spec: project_name, spider_name,
// spider_class, class_prefix and the rendered domain/url lists.
Bindings bindings_for(const ProjectSpec &spec);

// JSON forms used by the manifest file and the C API.
ProjectSpec project_spec_from_json_text(const std::string &text);
std::vector<ProjectSpec> manifest_from_json_text(const std::string &text);

// Creates the three-level project tree from templates, applies the one-shot
// file set, applies config overrides in order, then records the project.
// Any failure past directory creation removes the partial tree.
GeneratedProject generate_project(const ProjectSpec &spec, const TemplateStore &store,
                                  Registry &registry);

struct BatchItemResult {
    std::string name;
    bool ok = false;
    std::string root;  // set when ok
    std::string error; // set when failed
    double seconds = 0.0;
};

struct BatchResult {
    std::vector<BatchItemResult> items;
    double total_seconds = 0.0;

    bool all_ok() const;
};

// Sequential generation; one item's failure never aborts the rest.
BatchResult generate_batch(std::span<const ProjectSpec> specs, const TemplateStore &store,
                           Registry &registry);

struct LayoutReport {
    std::vector<std::string> missing;
    std::vector<std::string> extra;
    std::optional<bool> change_once_applied; // known only with a registry

    bool complete() const { return missing.empty(); }
};

// Checks a project root for the expected file inventory. The registry, when
// given, supplies the change-once marker.
LayoutReport verify_layout(const std::filesystem::path &root,
                           const Registry *registry = nullptr);

} // namespace spinneret
