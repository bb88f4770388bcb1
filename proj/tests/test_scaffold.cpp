#include "core/code_insert.hpp"
#include "core/config_edit.hpp"
#include "core/error.hpp"
#include "core/scaffold.hpp"
#include "core/text_io.hpp"
#include "core/workspace.hpp"

#include "support/temp_dir.hpp"

#include "doctest.h"

#include <fstream>
#include <map>
#include <string>

using namespace spinneret;
using testsupport::TempDir;
namespace fs = std::filesystem;

namespace {

ProjectSpec demo_spec(const TempDir &dir, const std::string &name = "demo") {
    ProjectSpec spec;
    spec.name = name;
    spec.target_dir = dir.path();
    return spec;
}

// Relative path -> bytes for every regular file under root.
std::map<std::string, std::string> tree_bytes(const fs::path &root) {
    std::map<std::string, std::string> files;
    for (const auto &dirent : fs::recursive_directory_iterator(root)) {
        if (dirent.is_regular_file()) {
            files[fs::relative(dirent.path(), root).string()] =
                read_text_file(dirent.path());
        }
    }
    return files;
}

} // namespace

TEST_CASE("project names must be identifiers") {
    CHECK_NOTHROW(validate_project_name("demo"));
    CHECK_NOTHROW(validate_project_name("_x9"));
    for (const char *bad : {"9bad", "has-dash", "has space", "", "has.dot"}) {
        CAPTURE(bad);
        try {
            validate_project_name(bad);
            FAIL_CHECK("expected invalid_name");
        } catch (const Error &e) {
            CHECK(e.code() == Errc::invalid_name);
        }
    }
}

TEST_CASE("bindings derive class names and quoted lists") {
    ProjectSpec spec;
    spec.name = "demo_site";
    spec.spider_name = "main_crawler";
    spec.allowed_domains = {"example.com", "example.org"};
    spec.start_urls = {"https://example.com/"};
    const auto bindings = bindings_for(spec);
    CHECK(bindings.at("project_name") == "demo_site");
    CHECK(bindings.at("class_prefix") == "DemoSite");
    CHECK(bindings.at("spider_name") == "main_crawler");
    CHECK(bindings.at("spider_class") == "MainCrawlerSpider");
    CHECK(bindings.at("allowed_domains") == "\"example.com\", \"example.org\"");
    CHECK(bindings.at("start_urls") == "\"https://example.com/\"");
}

TEST_CASE("spider name falls back to the project name") {
    ProjectSpec spec;
    spec.name = "demo";
    CHECK(spec.effective_spider_name() == "demo");
    CHECK(bindings_for(spec).at("spider_class") == "DemoSpider");
    CHECK(bindings_for(spec).at("allowed_domains").empty());
}

TEST_CASE("a project spec parses from JSON") {
    const auto spec = project_spec_from_json_text(R"({
        "name": "demo",
        "spider_name": "crawler",
        "allowed_domains": ["example.com"],
        "start_urls": ["https://example.com/"],
        "template_set": "default",
        "target_dir": "/tmp/somewhere",
        "config_overrides": [["ROBOTSTXT_OBEY", "False"], ["DOWNLOAD_DELAY", "2"]]
    })");
    CHECK(spec.name == "demo");
    CHECK(spec.spider_name == "crawler");
    CHECK(spec.target_dir == fs::path("/tmp/somewhere"));
    REQUIRE(spec.config_overrides.size() == 2);
    CHECK(spec.config_overrides[1].first == "DOWNLOAD_DELAY");
}

TEST_CASE("spec JSON problems map to invalid_manifest") {
    for (const char *bad : {
             "not json",
             "[]",
             R"({"no_name": 1})",
             R"({"name": "x", "config_overrides": [["only-one-element"]]})",
             R"({"name": "x", "allowed_domains": "not-a-list"})",
         }) {
        CAPTURE(bad);
        try {
            project_spec_from_json_text(bad);
            FAIL_CHECK("expected invalid_manifest");
        } catch (const Error &e) {
            CHECK(e.code() == Errc::invalid_manifest);
        }
    }
}

TEST_CASE("a manifest is a JSON array of specs") {
    const auto specs = manifest_from_json_text(R"([{"name": "a"}, {"name": "b"}])");
    REQUIRE(specs.size() == 2);
    CHECK(specs[0].name == "a");
    CHECK(specs[1].name == "b");

    CHECK_THROWS_AS(manifest_from_json_text(R"({"name": "a"})"), Error);
    CHECK(manifest_from_json_text("[]").empty());
}

TEST_CASE("generation produces the full layout and registers the project") {
    TempDir dir;
    Registry registry(dir / "spiders.json");
    TemplateStore store;
    const auto generated = generate_project(demo_spec(dir), store, registry);

    CHECK(generated.root == dir.path() / "demo");
    for (const char *rel : {"scrapy.cfg", "demo/__init__.py", "demo/items.py",
                            "demo/middlewares.py", "demo/pipelines.py", "demo/settings.py",
                            "demo/spiders/__init__.py", "demo/spiders/demo.py"}) {
        CAPTURE(rel);
        CHECK(fs::is_regular_file(generated.root / rel));
    }
    CHECK(generated.settings_path == generated.root / "demo" / "settings.py");
    CHECK(generated.spider_path == generated.root / "demo" / "spiders" / "demo.py");

    const auto report = verify_layout(generated.root, &registry);
    CHECK(report.complete());
    CHECK(report.extra.empty());
    REQUIRE(report.change_once_applied.has_value());
    CHECK(*report.change_once_applied);

    const auto entry = registry.find("demo");
    REQUIRE(entry.has_value());
    CHECK(entry->root == generated.root);
    CHECK(entry->change_once_applied);
}

TEST_CASE("config overrides land in the settings file in order") {
    TempDir dir;
    Registry registry(dir / "spiders.json");
    TemplateStore store;
    auto spec = demo_spec(dir);
    spec.config_overrides = {{"ROBOTSTXT_OBEY", "False"},
                             {"DOWNLOAD_DELAY", "2"},
                             {"DOWNLOAD_DELAY", "7"}};
    const auto generated = generate_project(spec, store, registry);

    auto v = get_option(generated.settings_path, "ROBOTSTXT_OBEY");
    REQUIRE(v.has_value());
    CHECK(v->option == "False");
    CHECK_FALSE(v->commented);

    v = get_option(generated.settings_path, "DOWNLOAD_DELAY");
    REQUIRE(v.has_value());
    CHECK(v->option == "7"); // the last write wins

    const auto entry = registry.find("demo");
    REQUIRE(entry.has_value());
    REQUIRE(entry->config_history.size() == 3);
    CHECK(entry->config_history[2].option == "7");
}

TEST_CASE("an occupied target reports already_exists and stays untouched") {
    TempDir dir;
    Registry registry(dir / "spiders.json");
    TemplateStore store;
    generate_project(demo_spec(dir), store, registry);
    const auto before = tree_bytes(dir.path() / "demo");

    Registry other(dir / "other.json");
    try {
        generate_project(demo_spec(dir), store, other);
        FAIL("expected already_exists");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::already_exists);
    }
    CHECK(tree_bytes(dir.path() / "demo") == before);
}

TEST_CASE("a registry duplicate rolls the generated tree back") {
    TempDir dir;
    Registry registry(dir / "spiders.json");
    TemplateStore store;
    generate_project(demo_spec(dir), store, registry);

    // Same name into a different directory: the tree builds, then the final
    // registry step rejects it and the partial output must vanish.
    TempDir second;
    try {
        generate_project(demo_spec(second, "demo"), store, registry);
        FAIL("expected duplicate_name");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::duplicate_name);
    }
    CHECK_FALSE(fs::exists(second.path() / "demo"));
}

TEST_CASE("a broken template set rolls back and registers nothing") {
    TempDir dir;
    const auto set_dir = dir.path() / "templates" / "broken";
    fs::create_directories(set_dir);
    for (const auto &id : template_file_ids())
        std::ofstream(set_dir / template_file_name(id)) << "ok\n";
    // One template demands a binding nobody provides.
    std::ofstream(set_dir / "settings.py") << "X = {{never_bound}}\n";

    Registry registry(dir / "spiders.json");
    TemplateStore store(dir.path() / "templates");
    auto spec = demo_spec(dir);
    spec.template_set = "broken";
    try {
        generate_project(spec, store, registry);
        FAIL("expected missing_binding");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::missing_binding);
    }
    CHECK_FALSE(fs::exists(dir.path() / "demo"));
    CHECK(registry.list_projects().empty());
}

TEST_CASE("batch generation isolates per-item failures") {
    TempDir dir;
    Registry registry(dir / "spiders.json");
    TemplateStore store;
    const std::vector<ProjectSpec> specs = {
        demo_spec(dir, "alpha"),
        demo_spec(dir, "beta"),
        demo_spec(dir, "alpha"), // duplicate
        demo_spec(dir, "gamma"),
    };
    const auto result = generate_batch(specs, store, registry);
    REQUIRE(result.items.size() == 4);
    CHECK(result.items[0].ok);
    CHECK(result.items[1].ok);
    CHECK_FALSE(result.items[2].ok);
    CHECK(result.items[2].error.find("alpha") != std::string::npos);
    CHECK(result.items[3].ok);
    CHECK_FALSE(result.all_ok());
    CHECK(result.total_seconds >= 0.0);
    CHECK(registry.list_projects().size() == 3);
}

TEST_CASE("an empty batch does nothing") {
    TempDir dir;
    Registry registry(dir / "spiders.json");
    TemplateStore store;
    const auto result = generate_batch(std::vector<ProjectSpec>{}, store, registry);
    CHECK(result.items.empty());
    CHECK(result.all_ok());
}

TEST_CASE("equal specs generate byte-identical trees") {
    TempDir a, b;
    Registry ra(a / "spiders.json"), rb(b / "spiders.json");
    TemplateStore store;
    ProjectSpec spec;
    spec.name = "demo";
    spec.allowed_domains = {"example.com"};
    spec.start_urls = {"https://example.com/"};
    spec.config_overrides = {{"ROBOTSTXT_OBEY", "False"}};

    spec.target_dir = a.path();
    generate_project(spec, store, ra);
    spec.target_dir = b.path();
    generate_project(spec, store, rb);

    CHECK(tree_bytes(a.path() / "demo") == tree_bytes(b.path() / "demo"));
}

TEST_CASE("verify_layout reports missing and extra entries") {
    TempDir dir;
    Registry registry(dir / "spiders.json");
    TemplateStore store;
    const auto generated = generate_project(demo_spec(dir), store, registry);

    fs::remove(generated.root / "demo" / "pipelines.py");
    atomic_write_file(generated.root / "stray.txt", "x");
    const auto report = verify_layout(generated.root, &registry);
    CHECK_FALSE(report.complete());
    REQUIRE(report.missing.size() == 1);
    CHECK(report.missing[0] == "demo/pipelines.py");
    REQUIRE(report.extra.size() == 1);
    CHECK(report.extra[0] == "stray.txt");
}

TEST_CASE("verify_layout on a non-project directory lists everything missing") {
    TempDir dir;
    fs::create_directories(dir / "empty");
    const auto report = verify_layout(dir / "empty");
    CHECK(report.missing.size() >= 8);
    CHECK_FALSE(report.change_once_applied.has_value());
}

TEST_CASE("re-running the one-shot apply is refused and changes nothing") {
    TempDir dir;
    Registry registry(dir / "spiders.json");
    TemplateStore store;
    const auto generated = generate_project(demo_spec(dir), store, registry);
    const auto before = tree_bytes(generated.root);

    try {
        apply_change_once_set(generated.root, store.load("default"),
                              bindings_for(demo_spec(dir)), &registry);
        FAIL("expected already_applied");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::already_applied);
    }
    CHECK(tree_bytes(generated.root) == before);
}

TEST_CASE("the one-shot apply requires the layout to be present") {
    TempDir dir;
    fs::create_directories(dir / "demo" / "demo" / "spiders");
    Registry registry(dir / "spiders.json");
    TemplateStore store;
    ProjectSpec spec = demo_spec(dir);
    try {
        apply_change_once_set(dir / "demo", store.load("default"), bindings_for(spec),
                              &registry);
        FAIL("expected layout_mismatch");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::layout_mismatch);
    }
}

TEST_CASE("workspace fills the default output folder and registry location") {
    TempDir dir;
    Workspace ws(dir / "ws");
    CHECK(fs::is_directory(ws.dir()));
    CHECK(ws.registry().file() == ws.dir() / "spiders.json");

    ProjectSpec spec;
    spec.name = "demo";
    const auto generated = ws.generate(spec);
    CHECK(generated.root == ws.dir() / "spiders" / "demo");
    CHECK(ws.verify(generated.root).complete());
    CHECK(ws.list().size() == 1);
    CHECK(ws.list("nope*").empty());
}

TEST_CASE("workspace resolves project targets for config and insert") {
    TempDir dir;
    Workspace ws(dir / "ws");
    ProjectSpec spec;
    spec.name = "demo";
    ws.generate(spec);

    ws.config_set("demo", "", "DOWNLOAD_DELAY", "2");
    const auto v = ws.config_get("demo", "", "DOWNLOAD_DELAY");
    REQUIRE(v.has_value());
    CHECK(v->option == "2");

    const auto report = ws.config_toggle("demo", "", "DOWNLOAD_DELAY");
    CHECK(report.key_found);
    CHECK(report.now_commented);

    const auto outcome = ws.insert("demo", "", {"class DemoSpider(scrapy.Spider):"},
                                   {"custom_attr = 1"}, Placement::Back);
    CHECK(outcome.via_block);
    CHECK(read_text_file(ws.spider_path_for("demo")).find("custom_attr = 1") !=
          std::string::npos);

    // Two config edits land in the project history.
    const auto entry = ws.registry().find("demo");
    REQUIRE(entry.has_value());
    CHECK(entry->config_history.size() == 2);
}

TEST_CASE("workspace rejects ambiguous or unknown edit targets") {
    TempDir dir;
    Workspace ws(dir / "ws");
    try {
        ws.config_set("", "", "K", "V");
        FAIL("expected invalid_argument");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::invalid_argument);
    }
    try {
        ws.config_set("ghost", "", "K", "V");
        FAIL("expected unknown_project");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::unknown_project);
    }
    try {
        ws.config_set("a", dir / "f.py", "K", "V");
        FAIL("expected invalid_argument");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::invalid_argument);
    }
}

TEST_CASE("workspace edits plain files when asked") {
    TempDir dir;
    Workspace ws(dir / "ws");
    const auto file = dir / "settings.py";
    atomic_write_file(file, "A = 1\n");
    ws.config_set("", file, "A", "2");
    CHECK(read_text_file(file) == "A = 2\n");
    const auto v = ws.config_get("", file, "A");
    REQUIRE(v.has_value());
    CHECK(v->option == "2");
}

TEST_CASE("workspace template override wins over the workspace folder") {
    TempDir dir;
    Workspace ws(dir / "ws");

    // templates/ inside the workspace: would be picked up by default.
    const auto local = ws.dir() / "templates" / "special";
    fs::create_directories(local);
    for (const auto &id : template_file_ids())
        std::ofstream(local / template_file_name(id)) << "local\n";

    const auto elsewhere = dir.path() / "alt" / "special";
    fs::create_directories(elsewhere);
    for (const auto &id : template_file_ids())
        std::ofstream(elsewhere / template_file_name(id)) << "alt\n";

    ProjectSpec spec;
    spec.name = "demo";
    spec.template_set = "special";
    const auto from_local = ws.generate(spec);
    CHECK(read_text_file(from_local.root / "scrapy.cfg") == "local\n");

    ws.set_templates_dir(dir.path() / "alt");
    spec.name = "demo2";
    const auto from_alt = ws.generate(spec);
    CHECK(read_text_file(from_alt.root / "scrapy.cfg") == "alt\n");
}
