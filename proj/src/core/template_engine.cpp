#include "template_engine.hpp"

#include "error.hpp"
#include "text_io.hpp"

#include <algorithm>

namespace fs = std::filesystem;

namespace spinneret {

namespace {

bool is_name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_';
}

// Finds the next {{name}} placeholder at or after `from`. Returns false when
// none remains. Brace pairs that do not wrap a plain identifier are left to
// the caller as literal text.
bool next_placeholder(std::string_view body, std::size_t from, std::size_t &open,
                      std::size_t &close, std::string &name) {
    while (true) {
        open = body.find("{{", from);
        if (open == std::string_view::npos)
            return false;
        close = body.find("}}", open + 2);
        if (close == std::string_view::npos)
            return false;
        name.assign(body.substr(open + 2, close - open - 2));
        const bool identifier =
            !name.empty() && !(name[0] >= '0' && name[0] <= '9') &&
            std::all_of(name.begin(), name.end(), is_name_char);
        if (identifier)
            return true;
        from = open + 2;
    }
}

} // namespace

std::set<std::string> scan_placeholders(std::string_view body) {
    std::set<std::string> names;
    std::size_t from = 0, open = 0, close = 0;
    std::string name;
    while (next_placeholder(body, from, open, close, name)) {
        names.insert(name);
        from = close + 2;
    }
    return names;
}

Template make_template(std::string id, std::string body) {
    Template tmpl;
    tmpl.id = std::move(id);
    tmpl.required_bindings = scan_placeholders(body);
    tmpl.body = std::move(body);
    return tmpl;
}

std::string instantiate_template(const Template &tmpl, const Bindings &bindings) {
    for (const auto &required : tmpl.required_bindings) {
        if (!bindings.count(required)) {
            throw Error(Errc::missing_binding,
                        "template '" + tmpl.id + "' needs binding '" + required + "'");
        }
    }

    std::string out;
    out.reserve(tmpl.body.size());
    std::size_t from = 0, open = 0, close = 0;
    std::string name;
    while (next_placeholder(tmpl.body, from, open, close, name)) {
        out.append(tmpl.body, from, open - from);
        if (!tmpl.required_bindings.count(name)) {
            throw Error(Errc::unknown_placeholder, "template '" + tmpl.id +
                                                       "' contains undeclared placeholder '" +
                                                       name + "'");
        }
        out += bindings.at(name);
        from = close + 2;
    }
    out.append(tmpl.body, from, tmpl.body.size() - from);
    return out;
}

const Template &TemplateSet::get(const std::string &template_id) const {
    auto it = templates.find(template_id);
    if (it == templates.end()) {
        throw Error(Errc::template_set_not_found,
                    "template set '" + id + "' has no template '" + template_id + "'");
    }
    return it->second;
}

const std::vector<std::string> &template_file_ids() {
    static const std::vector<std::string> ids = {
        "scrapy_cfg", "module_init", "items",        "middlewares",
        "pipelines",  "settings",    "spiders_init", "spider",
    };
    return ids;
}

std::string template_file_name(const std::string &template_id) {
    if (template_id == "scrapy_cfg")
        return "scrapy.cfg";
    if (template_id == "module_init")
        return "module_init.py";
    if (template_id == "spiders_init")
        return "spiders_init.py";
    return template_id + ".py";
}

TemplateStore::TemplateStore(fs::path search_dir) : search_dir_(std::move(search_dir)) {}

void TemplateStore::set_search_dir(fs::path dir) { search_dir_ = std::move(dir); }

TemplateSet TemplateStore::load(const std::string &set_id) const {
    if (!search_dir_.empty()) {
        const fs::path set_dir = search_dir_ / set_id;
        if (fs::is_directory(set_dir)) {
            TemplateSet set;
            set.id = set_id;
            for (const auto &tid : template_file_ids()) {
                const fs::path file = set_dir / template_file_name(tid);
                if (!fs::is_regular_file(file)) {
                    throw Error(Errc::template_set_not_found,
                                "template set '" + set_id + "' is missing " +
                                    file.filename().string());
                }
                set.templates.emplace(tid, make_template(tid, read_text_file(file)));
            }
            return set;
        }
    }
    if (set_id == "default")
        return embedded_default_set();
    throw Error(Errc::template_set_not_found, "no template set named '" + set_id + "'");
}

} // namespace spinneret
