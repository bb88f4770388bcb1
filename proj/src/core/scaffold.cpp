#include "scaffold.hpp"

#include "code_insert.hpp"
#include "config_edit.hpp"
#include "error.hpp"
#include "text_io.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <set>

namespace fs = std::filesystem;
using nlohmann::json;

namespace spinneret {

namespace {

bool is_identifier(const std::string &s) {
    if (s.empty() || (s[0] >= '0' && s[0] <= '9'))
        return false;
    for (char c : s) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '_';
        if (!ok)
            return false;
    }
    return true;
}

// demo_site -> DemoSite
std::string camel_case(const std::string &name) {
    std::string out;
    bool upper = true;
    for (char c : name) {
        if (c == '_') {
            upper = true;
            continue;
        }
        out += upper && c >= 'a' && c <= 'z' ? static_cast<char>(c - 'a' + 'A') : c;
        upper = false;
    }
    return out;
}

std::string quoted_list(const std::vector<std::string> &items) {
    std::string out;
    for (const auto &item : items) {
        if (!out.empty())
            out += ", ";
        out += '"';
        out += item;
        out += '"';
    }
    return out;
}

void write_new_file(const fs::path &path, std::string_view content) {
    atomic_write_file(path, content);
}

ProjectSpec spec_from_json(const json &j) {
    if (!j.is_object())
        throw Error(Errc::invalid_manifest, "project spec must be a JSON object");
    ProjectSpec spec;
    try {
        spec.name = j.at("name").get<std::string>();
        if (j.contains("spider_name"))
            spec.spider_name = j.at("spider_name").get<std::string>();
        if (j.contains("allowed_domains"))
            spec.allowed_domains = j.at("allowed_domains").get<std::vector<std::string>>();
        if (j.contains("start_urls"))
            spec.start_urls = j.at("start_urls").get<std::vector<std::string>>();
        if (j.contains("template_set"))
            spec.template_set = j.at("template_set").get<std::string>();
        if (j.contains("target_dir"))
            spec.target_dir = fs::path(j.at("target_dir").get<std::string>());
        if (j.contains("config_overrides")) {
            for (const auto &pair : j.at("config_overrides")) {
                if (!pair.is_array() || pair.size() != 2) {
                    throw Error(Errc::invalid_manifest,
                                "config_overrides entries must be [key, option] pairs");
                }
                spec.config_overrides.emplace_back(pair.at(0).get<std::string>(),
                                                   pair.at(1).get<std::string>());
            }
        }
    } catch (const Error &) {
        throw;
    } catch (const std::exception &e) {
        throw Error(Errc::invalid_manifest, std::string("bad project spec: ") + e.what());
    }
    return spec;
}

} // namespace

void validate_project_name(const std::string &name) {
    if (!is_identifier(name)) {
        throw Error(Errc::invalid_name,
                    "'" + name +
                        "' is not a valid project name (letters, digits and "
                        "underscore; must not start with a digit)");
    }
}

Bindings bindings_for(const ProjectSpec &spec) {
    const std::string spider = spec.effective_spider_name();
    return {
        {"project_name", spec.name},
        {"class_prefix", camel_case(spec.name)},
        {"spider_name", spider},
        {"spider_class", camel_case(spider) + "Spider"},
        {"allowed_domains", quoted_list(spec.allowed_domains)},
        {"start_urls", quoted_list(spec.start_urls)},
    };
}

ProjectSpec project_spec_from_json_text(const std::string &text) {
    try {
        return spec_from_json(json::parse(text));
    } catch (const Error &) {
        throw;
    } catch (const std::exception &e) {
        throw Error(Errc::invalid_manifest, std::string("bad project spec JSON: ") + e.what());
    }
}

std::vector<ProjectSpec> manifest_from_json_text(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception &e) {
        throw Error(Errc::invalid_manifest, std::string("bad manifest JSON: ") + e.what());
    }
    if (!doc.is_array())
        throw Error(Errc::invalid_manifest, "manifest must be a JSON array of project specs");
    std::vector<ProjectSpec> specs;
    for (const auto &item : doc)
        specs.push_back(spec_from_json(item));
    return specs;
}

GeneratedProject generate_project(const ProjectSpec &spec, const TemplateStore &store,
                                  Registry &registry) {
    validate_project_name(spec.name);
    const std::string spider = spec.effective_spider_name();
    validate_project_name(spider);
    if (spec.target_dir.empty())
        throw Error(Errc::invalid_argument, "project spec has no target_dir");

    const fs::path root = spec.target_dir / spec.name;
    if (fs::exists(root))
        throw Error(Errc::already_exists, "target " + root.string() + " already exists");

    const TemplateSet set = store.load(spec.template_set);
    const Bindings bindings = bindings_for(spec);

    GeneratedProject result;
    result.root = root;
    result.settings_path = root / spec.name / "settings.py";
    result.spider_path = root / spec.name / "spiders" / (spider + ".py");
    result.created_at = iso_utc_now();

    try {
        const fs::path pkg = root / spec.name;
        fs::create_directories(pkg / "spiders");

        write_new_file(root / "scrapy.cfg",
                       instantiate_template(set.get("scrapy_cfg"), bindings));
        write_new_file(pkg / "__init__.py",
                       instantiate_template(set.get("module_init"), bindings));
        write_new_file(pkg / "items.py", instantiate_template(set.get("items"), bindings));
        write_new_file(pkg / "middlewares.py",
                       instantiate_template(set.get("middlewares"), bindings));
        write_new_file(pkg / "pipelines.py",
                       instantiate_template(set.get("pipelines"), bindings));
        write_new_file(result.settings_path,
                       instantiate_template(set.get("settings"), bindings));
        write_new_file(pkg / "spiders" / "__init__.py",
                       instantiate_template(set.get("spiders_init"), bindings));
        write_new_file(result.spider_path,
                       instantiate_template(set.get("spider"), bindings));

        // One-shot customization pass; the marker lands in the registry entry
        // recorded below.
        apply_change_once_set(root, set, bindings, nullptr);

        RegistryEntry entry;
        entry.name = spec.name;
        entry.root = root;
        entry.template_set = spec.template_set;
        entry.created_at = result.created_at;
        entry.change_once_applied = true;

        for (const auto &[key, option] : spec.config_overrides) {
            set_option(result.settings_path, key, option);
            entry.config_history.push_back({key, option, iso_utc_now()});
        }

        registry.record_project(std::move(entry));
    } catch (...) {
        std::error_code ec;
        fs::remove_all(root, ec);
        throw;
    }
    return result;
}

bool BatchResult::all_ok() const {
    for (const auto &item : items) {
        if (!item.ok)
            return false;
    }
    return true;
}

BatchResult generate_batch(std::span<const ProjectSpec> specs, const TemplateStore &store,
                           Registry &registry) {
    using clock = std::chrono::steady_clock;
    BatchResult result;
    const auto t0 = clock::now();
    for (const auto &spec : specs) {
        BatchItemResult item;
        item.name = spec.name;
        const auto s0 = clock::now();
        try {
            item.root = generate_project(spec, store, registry).root.string();
            item.ok = true;
        } catch (const Error &e) {
            item.error = e.what();
        } catch (const std::exception &e) {
            item.error = e.what();
        }
        item.seconds = std::chrono::duration<double>(clock::now() - s0).count();
        result.items.push_back(std::move(item));
    }
    result.total_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    return result;
}

LayoutReport verify_layout(const fs::path &root, const Registry *registry) {
    LayoutReport report;
    const std::string name = root.filename().string();
    const fs::path pkg = root / name;

    const std::vector<std::string> expected = {
        "scrapy.cfg",
        name + "/__init__.py",
        name + "/items.py",
        name + "/middlewares.py",
        name + "/pipelines.py",
        name + "/settings.py",
        name + "/spiders/__init__.py",
    };
    for (const auto &rel : expected) {
        if (!fs::is_regular_file(root / rel))
            report.missing.push_back(rel);
    }

    // At least one spider module beside spiders/__init__.py.
    bool spider_found = false;
    std::error_code ec;
    for (const auto &dirent : fs::directory_iterator(pkg / "spiders", ec)) {
        const auto file = dirent.path().filename().string();
        if (dirent.is_regular_file() && file.ends_with(".py") && file != "__init__.py") {
            spider_found = true;
            break;
        }
    }
    if (!spider_found)
        report.missing.push_back(name + "/spiders/<spider>.py");

    // Stray files at the two directory levels the layout owns.
    const std::set<std::string> level1 = {"scrapy.cfg", name};
    for (const auto &dirent : fs::directory_iterator(root, ec)) {
        if (!level1.count(dirent.path().filename().string()))
            report.extra.push_back(dirent.path().filename().string());
    }
    const std::set<std::string> level2 = {"__init__.py",  "items.py",    "middlewares.py",
                                          "pipelines.py", "settings.py", "spiders"};
    for (const auto &dirent : fs::directory_iterator(pkg, ec)) {
        if (!level2.count(dirent.path().filename().string()))
            report.extra.push_back(name + "/" + dirent.path().filename().string());
    }

    if (registry) {
        if (auto entry = registry->find_by_root(root))
            report.change_once_applied = entry->change_once_applied;
    }
    return report;
}

} // namespace spinneret
