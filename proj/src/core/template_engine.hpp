#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace spinneret {

using Bindings = std::map<std::string, std::string>;

// A text body with {{name}} placeholders. required_bindings is derived from
// the body on construction.
struct Template {
    std::string id;
    std::string body;
    std::set<std::string> required_bindings;
};

std::set<std::string> scan_placeholders(std::string_view body);
Template make_template(std::string id, std::string body);

// Replaces every {{name}} with its binding. Throws missing_binding when a
// required name is unbound and unknown_placeholder when the body holds a
// placeholder outside required_bindings.
std::string instantiate_template(const Template &tmpl, const Bindings &bindings);

// The fixed file inventory of one template set. Template ids name the role
// of each generated file, not its final path.
struct TemplateSet {
    std::string id;
    std::map<std::string, Template> templates;

    const Template &get(const std::string &template_id) const;
};

// Ids every complete set must provide.
const std::vector<std::string> &template_file_ids();

// Relative on-disk file name for a template id inside templates/<set-id>/.
std::string template_file_name(const std::string &template_id);

// The compiled-in "default" set, mirroring a stock Scrapy project skeleton.
const TemplateSet &embedded_default_set();

// Loads template sets from <search_dir>/<set-id>/. When the directory is
// empty or the set is absent on disk, "default" falls back to the embedded
// copy; other ids fail with template_set_not_found.
class TemplateStore {
public:
    TemplateStore() = default;
    explicit TemplateStore(std::filesystem::path search_dir);

    void set_search_dir(std::filesystem::path dir);
    const std::filesystem::path &search_dir() const { return search_dir_; }

    TemplateSet load(const std::string &set_id) const;

private:
    std::filesystem::path search_dir_;
};

} // namespace spinneret
