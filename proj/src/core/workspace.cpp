#include "workspace.hpp"

#include "error.hpp"

#include <algorithm>
#include <cstdlib>

namespace fs = std::filesystem;

namespace spinneret {

Workspace::Workspace(fs::path dir)
    : dir_(fs::absolute(std::move(dir)).lexically_normal()),
      target_dir_(dir_ / "spiders"),
      registry_((fs::create_directories(dir_), dir_ / "spiders.json")) {}

void Workspace::set_templates_dir(fs::path dir) {
    templates_override_ = std::move(dir);
}

TemplateStore Workspace::template_store() const {
    if (!templates_override_.empty())
        return TemplateStore(templates_override_);
    if (const char *env = std::getenv("SPINNERET_TEMPLATES"); env && *env)
        return TemplateStore(env);
    if (const fs::path local = dir_ / "templates"; fs::is_directory(local))
        return TemplateStore(local);
    return TemplateStore(); // embedded default set only
}

GeneratedProject Workspace::generate(ProjectSpec spec) {
    if (spec.target_dir.empty())
        spec.target_dir = target_dir_;
    return generate_project(spec, template_store(), registry_);
}

BatchResult Workspace::generate_batch(std::vector<ProjectSpec> specs) {
    for (auto &spec : specs) {
        if (spec.target_dir.empty())
            spec.target_dir = target_dir_;
    }
    const TemplateStore store = template_store();
    return spinneret::generate_batch(specs, store, registry_);
}

LayoutReport Workspace::verify(const fs::path &root) const {
    return verify_layout(fs::absolute(root).lexically_normal(), &registry_);
}

std::vector<RegistryEntry> Workspace::list(const std::string &name_glob) const {
    return registry_.list_projects(name_glob);
}

std::filesystem::path Workspace::settings_path_for(const std::string &project) const {
    const auto entry = registry_.find(project);
    if (!entry)
        throw Error(Errc::unknown_project, "no registered project named '" + project + "'");
    return entry->root / entry->name / "settings.py";
}

std::filesystem::path Workspace::spider_path_for(const std::string &project) const {
    const auto entry = registry_.find(project);
    if (!entry)
        throw Error(Errc::unknown_project, "no registered project named '" + project + "'");
    const fs::path spiders = entry->root / entry->name / "spiders";

    std::vector<fs::path> candidates;
    std::error_code ec;
    for (const auto &dirent : fs::directory_iterator(spiders, ec)) {
        const auto file = dirent.path().filename().string();
        if (dirent.is_regular_file() && file.ends_with(".py") && file != "__init__.py")
            candidates.push_back(dirent.path());
    }
    if (candidates.empty()) {
        throw Error(Errc::target_not_found,
                    "project '" + project + "' has no spider module under " +
                        spiders.string());
    }
    std::sort(candidates.begin(), candidates.end());
    return candidates.front();
}

fs::path Workspace::edit_file(const std::string &project, const fs::path &file_path,
                              bool spider_target) const {
    if (project.empty() == file_path.empty()) {
        throw Error(Errc::invalid_argument,
                    "exactly one of project and file path must be given");
    }
    if (!project.empty())
        return spider_target ? spider_path_for(project) : settings_path_for(project);
    return file_path;
}

EditReport Workspace::config_set(const std::string &project, const fs::path &file_path,
                                 const std::string &key, const std::string &option) {
    const fs::path target = edit_file(project, file_path, false);
    const EditReport report = set_option(target, key, option);
    if (!project.empty())
        registry_.log_config_edit(project, key, option);
    return report;
}

EditReport Workspace::config_toggle(const std::string &project, const fs::path &file_path,
                                    const std::string &key) {
    const fs::path target = edit_file(project, file_path, false);
    const EditReport report = toggle_comment(target, key);
    if (!project.empty()) {
        registry_.log_config_edit(project, key,
                                  report.now_commented ? "#commented" : "#uncommented");
    }
    return report;
}

std::optional<OptionValue> Workspace::config_get(const std::string &project,
                                                 const fs::path &file_path,
                                                 const std::string &key) const {
    return get_option(edit_file(project, file_path, false), key);
}

InsertOutcome Workspace::insert(const std::string &project, const fs::path &file_path,
                                BlockPath path, std::vector<std::string> code,
                                Placement placement) {
    InsertionRequest request;
    request.file_path = edit_file(project, file_path, true);
    request.path = std::move(path);
    request.code = std::move(code);
    request.placement = placement;
    return insert_in_block(request);
}

} // namespace spinneret
