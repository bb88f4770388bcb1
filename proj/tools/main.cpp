// Command-line front end for the spinneret shared library. Everything goes
// through the public C API so the binary exercises the same surface other
// embedders see.

#include "spinneret/spinneret.h"

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

int exit_code_for(spin_status status) {
    switch (status) {
    case SPIN_OK:
        return kExitOk;
    case SPIN_ERR_INVALID_NAME:
    case SPIN_ERR_INVALID_MANIFEST:
    case SPIN_ERR_INVALID_ARGUMENT:
        return kExitUsage;
    default:
        return kExitFailure;
    }
}

int usage_error(const std::string &message) {
    std::cerr << "spinneret: " << message << "\n";
    return kExitUsage;
}

// RAII over the workspace handle plus the shared failure reporting.
class Session {
public:
    explicit Session(const std::string &dir) { status_ = spin_workspace_open(dir.c_str(), &ws_); }
    ~Session() { spin_workspace_close(ws_); }
    Session(const Session &) = delete;
    Session &operator=(const Session &) = delete;

    bool ok() const { return status_ == SPIN_OK; }
    spin_workspace *get() const { return ws_; }

    int open_failure() const {
        std::cerr << "spinneret: cannot open workspace: " << spin_status_name(status_) << "\n";
        return exit_code_for(status_);
    }

    int failure(spin_status status) const {
        std::cerr << "spinneret: " << spin_status_name(status);
        if (const char *detail = spin_last_error(ws_); detail && *detail)
            std::cerr << ": " << detail;
        std::cerr << "\n";
        return exit_code_for(status);
    }

private:
    spin_workspace *ws_ = nullptr;
    spin_status status_ = SPIN_ERR_INTERNAL;
};

// Owned string coming back from the library.
struct OutString {
    char *value = nullptr;
    ~OutString() { spin_string_free(value); }
    std::string str() const { return value ? value : ""; }
};

struct NewArgs {
    std::string name;
    std::string spider;
    std::vector<std::string> domains;
    std::vector<std::string> urls;
    std::string template_set;
    std::string target_dir;
    std::vector<std::string> config_pairs; // KEY=VALUE
};

json spec_json_for(const NewArgs &args, std::string *parse_error) {
    json spec = {{"name", args.name}};
    if (!args.spider.empty())
        spec["spider_name"] = args.spider;
    if (!args.domains.empty())
        spec["allowed_domains"] = args.domains;
    if (!args.urls.empty())
        spec["start_urls"] = args.urls;
    if (!args.template_set.empty())
        spec["template_set"] = args.template_set;
    if (!args.target_dir.empty())
        spec["target_dir"] = args.target_dir;
    if (!args.config_pairs.empty()) {
        json overrides = json::array();
        for (const auto &pair : args.config_pairs) {
            const auto equal = pair.find('=');
            if (equal == std::string::npos || equal == 0) {
                *parse_error = "--config expects KEY=VALUE, got '" + pair + "'";
                return {};
            }
            overrides.push_back({pair.substr(0, equal), pair.substr(equal + 1)});
        }
        spec["config_overrides"] = std::move(overrides);
    }
    return spec;
}

int run_new(Session &session, const NewArgs &args) {
    std::string parse_error;
    const json spec = spec_json_for(args, &parse_error);
    if (!parse_error.empty())
        return usage_error(parse_error);
    OutString root;
    const spin_status status = spin_generate(session.get(), spec.dump().c_str(), &root.value);
    if (status != SPIN_OK)
        return session.failure(status);
    std::cout << "ok " << args.name << " " << root.str() << "\n";
    return kExitOk;
}

int print_batch_report(const std::string &report_text) {
    const json report = json::parse(report_text);
    for (const auto &item : report.at("items")) {
        if (item.at("ok").get<bool>())
            std::cout << "ok " << item.at("name").get<std::string>() << " "
                      << item.at("root").get<std::string>() << "\n";
        else
            std::cout << "fail " << item.at("name").get<std::string>() << " "
                      << item.at("error").get<std::string>() << "\n";
    }
    std::cout << "time_s " << report.at("total_seconds").get<double>() << "\n";
    return report.at("all_ok").get<bool>() ? kExitOk : kExitFailure;
}

int run_batch(Session &session, const std::string &manifest_path) {
    std::ifstream in(manifest_path, std::ios::binary);
    if (!in)
        return usage_error("cannot read manifest '" + manifest_path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();

    OutString report;
    const spin_status status =
        spin_generate_batch(session.get(), buffer.str().c_str(), &report.value);
    if (status != SPIN_OK)
        return session.failure(status);
    return print_batch_report(report.str());
}

int run_config_action(Session &session, const std::string &action, const std::string &project,
                      const std::string &file, const std::string &key,
                      const std::string &value) {
    const char *project_arg = project.empty() ? nullptr : project.c_str();
    const char *file_arg = file.empty() ? nullptr : file.c_str();
    if (action == "set") {
        const spin_status status =
            spin_config_set(session.get(), project_arg, file_arg, key.c_str(), value.c_str());
        return status == SPIN_OK ? kExitOk : session.failure(status);
    }
    if (action == "toggle") {
        int now_commented = 0;
        const spin_status status =
            spin_config_toggle(session.get(), project_arg, file_arg, key.c_str(), &now_commented);
        if (status != SPIN_OK)
            return session.failure(status);
        std::cout << key << " " << (now_commented ? "commented" : "uncommented") << "\n";
        return kExitOk;
    }
    if (action == "get") {
        OutString option;
        int commented = 0;
        const spin_status status = spin_config_get(session.get(), project_arg, file_arg,
                                                   key.c_str(), &option.value, &commented);
        if (status != SPIN_OK)
            return session.failure(status);
        std::cout << key << " = " << option.str() << " "
                  << (commented ? "(commented)" : "(active)") << "\n";
        return kExitOk;
    }
    return usage_error("unknown config action '" + action + "' (expected set, toggle or get)");
}

// `config [project] <set|toggle|get> KEY [VALUE]`, or the same without the
// project positional when --file names the target directly.
int run_config(Session &session, std::vector<std::string> args, const std::string &file) {
    std::string project;
    if (file.empty()) {
        if (args.empty())
            return usage_error("config: project name or --file required");
        project = args.front();
        args.erase(args.begin());
    }
    if (args.empty())
        return usage_error("config: action required (set, toggle or get)");
    const std::string action = args.front();
    args.erase(args.begin());

    const size_t expected = action == "set" ? 2 : 1;
    if (args.size() != expected) {
        return usage_error(action == "set" ? "config set: expected KEY VALUE"
                                           : "config " + action + ": expected KEY");
    }
    const std::string key = args[0];
    const std::string value = expected == 2 ? args[1] : "";
    return run_config_action(session, action, project, file, key, value);
}

struct InsertArgs {
    std::string project;
    std::string file;
    std::vector<std::string> blocks;
    std::vector<std::string> code;
    std::string placement = "back";
};

int run_insert(Session &session, const InsertArgs &args) {
    if (args.placement != "back" && args.placement != "front")
        return usage_error("--placement must be 'front' or 'back'");
    std::vector<const char *> blocks, code;
    for (const auto &s : args.blocks)
        blocks.push_back(s.c_str());
    for (const auto &s : args.code)
        code.push_back(s.c_str());
    const spin_status status = spin_insert(
        session.get(), args.project.empty() ? nullptr : args.project.c_str(),
        args.file.empty() ? nullptr : args.file.c_str(), blocks.data(), blocks.size(),
        code.data(), code.size(),
        args.placement == "front" ? SPIN_PLACE_FRONT : SPIN_PLACE_BACK);
    return status == SPIN_OK ? kExitOk : session.failure(status);
}

int run_list(Session &session, const std::string &glob) {
    OutString out;
    const spin_status status =
        spin_list_projects(session.get(), glob.empty() ? nullptr : glob.c_str(), &out.value);
    if (status != SPIN_OK)
        return session.failure(status);
    for (const auto &entry : json::parse(out.str())) {
        std::cout << entry.at("name").get<std::string>() << "\t"
                  << entry.at("root").get<std::string>() << "\t"
                  << entry.at("created_at").get<std::string>() << "\n";
    }
    return kExitOk;
}

fs::path fresh_temp_dir() {
    std::mt19937_64 rng(std::random_device{}());
    std::ostringstream name;
    name << "spinneret-bench-" << std::hex << rng();
    return fs::temp_directory_path() / name.str();
}

int run_bench(int count, bool with_config) {
    if (count < 1)
        return usage_error("bench: count must be at least 1");

    const fs::path dir = fresh_temp_dir();
    Session session(dir.string());
    if (!session.ok())
        return session.open_failure();

    json manifest = json::array();
    for (int i = 0; i < count; ++i) {
        json spec = {{"name", "bench_" + std::to_string(i)}};
        if (with_config) {
            spec["config_overrides"] = json::array({
                json::array({"ROBOTSTXT_OBEY", "False"}),
                json::array({"DOWNLOAD_DELAY", "2"}),
                json::array({"CONCURRENT_REQUESTS", "8"}),
            });
        }
        manifest.push_back(std::move(spec));
    }

    OutString out;
    const spin_status status =
        spin_generate_batch(session.get(), manifest.dump().c_str(), &out.value);
    int code = kExitOk;
    if (status != SPIN_OK) {
        code = session.failure(status);
    } else {
        const json report = json::parse(out.str());
        const double seconds = report.at("total_seconds").get<double>();
        std::cout << "scenario\tprojects\twith_config\tseconds\n";
        std::cout << (count == 1 ? "single_project" : "multi_project") << "\t" << count
                  << "\t" << (with_config ? "yes" : "no") << "\t" << seconds << "\n";
        std::cout << "time_s " << seconds << "\n";
        if (!report.at("all_ok").get<bool>())
            code = kExitFailure;
    }

    std::error_code ec;
    fs::remove_all(dir, ec);
    return code;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Crawler project scaffolding, code insertion and settings rewriting"};
    app.require_subcommand(1);
    app.set_version_flag("--version", spin_version());

    std::string workspace_dir = ".";
    app.add_option("--workspace,-w", workspace_dir,
                   "Workspace directory holding the registry and default output folder")
        ->envname("SPINNERET_WORKSPACE");
    std::string templates_dir;
    app.add_option("--templates", templates_dir,
                   "Template search directory (layout: <dir>/<set-id>/)");

    std::function<int(Session &)> action;

    NewArgs new_args;
    auto *cmd_new = app.add_subcommand("new", "Generate one crawler project");
    cmd_new->add_option("name", new_args.name, "Project name (also the root folder name)")
        ->required();
    cmd_new->add_option("--spider", new_args.spider, "Spider name (defaults to the project name)");
    cmd_new->add_option("--domain", new_args.domains, "Allowed domain (repeatable)");
    cmd_new->add_option("--url", new_args.urls, "Start URL (repeatable)");
    cmd_new->add_option("--template-set", new_args.template_set, "Template set id");
    cmd_new->add_option("--target-dir", new_args.target_dir,
                        "Parent directory for the project root");
    cmd_new->add_option("--config", new_args.config_pairs,
                        "Settings override KEY=VALUE (repeatable, applied in order)");
    cmd_new->callback([&] { action = [&](Session &s) { return run_new(s, new_args); }; });

    std::string manifest_path;
    auto *cmd_batch = app.add_subcommand("batch", "Generate every project of a JSON manifest");
    cmd_batch->add_option("manifest", manifest_path, "Path to a JSON array of project specs")
        ->required();
    cmd_batch->callback([&] { action = [&](Session &s) { return run_batch(s, manifest_path); }; });

    std::vector<std::string> config_args;
    std::string config_file;
    auto *cmd_config =
        app.add_subcommand("config", "Edit or read a settings key (actions: set, toggle, get)");
    cmd_config->add_option("args", config_args, "[project] <set|toggle|get> KEY [VALUE]");
    cmd_config->add_option("--file", config_file, "Edit this file instead of a project");
    cmd_config->callback(
        [&] { action = [&](Session &s) { return run_config(s, config_args, config_file); }; });

    // Spelled-out aliases for the three actions.
    std::vector<std::string> set_args, toggle_args, get_args;
    std::string set_file, toggle_file, get_file;
    auto *cmd_set = app.add_subcommand("config-set", "Set a settings key to a value");
    cmd_set->add_option("args", set_args, "[project] KEY VALUE");
    cmd_set->add_option("--file", set_file, "Edit this file instead of a project");
    cmd_set->callback([&] {
        action = [&](Session &s) {
            std::vector<std::string> args = set_args;
            const size_t base = set_file.empty() ? 1 : 0;
            if (args.size() != base + 2)
                return usage_error("config-set: expected [project] KEY VALUE");
            args.insert(args.begin() + static_cast<long>(base), "set");
            return run_config(s, args, set_file);
        };
    });
    auto *cmd_toggle = app.add_subcommand("config-toggle", "Flip a settings line's comment state");
    cmd_toggle->add_option("args", toggle_args, "[project] KEY");
    cmd_toggle->add_option("--file", toggle_file, "Edit this file instead of a project");
    cmd_toggle->callback([&] {
        action = [&](Session &s) {
            std::vector<std::string> args = toggle_args;
            const size_t base = toggle_file.empty() ? 1 : 0;
            if (args.size() != base + 1)
                return usage_error("config-toggle: expected [project] KEY");
            args.insert(args.begin() + static_cast<long>(base), "toggle");
            return run_config(s, args, toggle_file);
        };
    });
    auto *cmd_get = app.add_subcommand("config-get", "Print a settings key's value and state");
    cmd_get->add_option("args", get_args, "[project] KEY");
    cmd_get->add_option("--file", get_file, "Read this file instead of a project");
    cmd_get->callback([&] {
        action = [&](Session &s) {
            std::vector<std::string> args = get_args;
            const size_t base = get_file.empty() ? 1 : 0;
            if (args.size() != base + 1)
                return usage_error("config-get: expected [project] KEY");
            args.insert(args.begin() + static_cast<long>(base), "get");
            return run_config(s, args, get_file);
        };
    });

    InsertArgs insert_args;
    auto *cmd_insert =
        app.add_subcommand("insert", "Insert code lines into a block of a source file");
    cmd_insert->add_option("project", insert_args.project,
                           "Registered project (targets its spider module)");
    cmd_insert->add_option("--file", insert_args.file, "Edit this file instead of a project");
    cmd_insert
        ->add_option("--block", insert_args.blocks,
                     "Block header signature, outermost first (repeatable)")
        ->required();
    cmd_insert->add_option("--code", insert_args.code, "Code line to insert (repeatable)")
        ->required();
    cmd_insert->add_option("--placement", insert_args.placement,
                           "front|back of the resolved position (default back)");
    cmd_insert->callback([&] { action = [&](Session &s) { return run_insert(s, insert_args); }; });

    std::string list_glob;
    auto *cmd_list = app.add_subcommand("list", "List registered projects");
    cmd_list->add_option("glob", list_glob, "Name pattern with * and ? wildcards");
    cmd_list->callback([&] { action = [&](Session &s) { return run_list(s, list_glob); }; });

    int bench_count = 0;
    bool bench_with_config = false;
    auto *cmd_bench =
        app.add_subcommand("bench", "Time throwaway project generation in a temp workspace");
    cmd_bench->add_option("count", bench_count, "Number of projects to generate")->required();
    cmd_bench->add_flag("--with-config", bench_with_config,
                        "Apply a fixed set of settings overrides per project");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    // bench manages its own throwaway workspace; everything else opens the
    // configured one.
    if (cmd_bench->parsed())
        return run_bench(bench_count, bench_with_config);
    if (!action)
        return usage_error("no subcommand given");

    Session session(workspace_dir);
    if (!session.ok())
        return session.open_failure();
    if (!templates_dir.empty()) {
        if (const spin_status status = spin_set_templates_dir(session.get(), templates_dir.c_str());
            status != SPIN_OK)
            return session.failure(status);
    }
    return action(session);
}
