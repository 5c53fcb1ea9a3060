// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hamster/cli_ops.hpp"
#include "hamster/model.hpp"

using namespace hamster;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& content) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

void make_project(const fs::path& root, const std::string& pkg, int tests = 1) {
    std::string body = "package " + pkg + ";\nimport org.junit.Assert;\nimport org.junit.Test;\n"
                       "public class AppTest {\n";
    for (int i = 0; i < tests; ++i)
        body += "  @Test public void t" + std::to_string(i) +
                "() { Assert.assertTrue(true); }\n";
    body += "}\n";
    write(root / "src/test/java" / pkg / "AppTest.java", body);
}

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("analyze: valid project writes a model and exits 0") {
    TempDir tmp("hamster_cli_analyze");
    make_project(tmp.path / "proj", "p");
    auto model_path = (tmp.path / "model.json").string();
    auto r = run({"analyze", (tmp.path / "proj").string(), "--name", "proj", "--out",
                  model_path});
    CHECK(r.exit_code == 0);
    auto model = deserialize_model(slurp(model_path));
    CHECK(model.project_name == "proj");
    REQUIRE(model.test_classes.size() == 1);
    CHECK(model.test_classes[0].test_methods.size() == 1);
    CHECK(model.analysis_failures.empty());
}

TEST_CASE("analyze: without --out the model goes to standard output") {
    TempDir tmp("hamster_cli_stdout");
    make_project(tmp.path / "proj", "p");
    auto r = run({"analyze", (tmp.path / "proj").string(), "--name", "proj"});
    CHECK(r.exit_code == 0);
    CHECK(deserialize_model(r.out).project_name == "proj");
}

TEST_CASE("analyze: unparseable file yields exit 2 and a recorded failure") {
    TempDir tmp("hamster_cli_partial");
    make_project(tmp.path / "proj", "p");
    write(tmp.path / "proj/src/test/java/p/Broken.java", "package p;\nclass ))) {\n");
    auto model_path = (tmp.path / "model.json").string();
    auto r = run({"analyze", (tmp.path / "proj").string(), "--out", model_path});
    CHECK(r.exit_code == 2);
    auto model = deserialize_model(slurp(model_path));
    REQUIRE(model.analysis_failures.size() == 1);
    CHECK(model.analysis_failures[0].path.find("Broken.java") != std::string::npos);
    CHECK(r.err.find("Broken.java") != std::string::npos);
}

TEST_CASE("analyze: missing path exits 1") {
    auto r = run({"analyze", "/nonexistent/definitely/missing"});
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("corpus: manifest of three projects produces three models") {
    TempDir tmp("hamster_cli_corpus");
    make_project(tmp.path / "a", "pa");
    make_project(tmp.path / "b", "pb", 2);
    make_project(tmp.path / "c", "pc", 3);
    write(tmp.path / "manifest.json",
          "{\"projects\": {\"alpha\": \"" + (tmp.path / "a").string() + "\", \"beta\": \"" +
              (tmp.path / "b").string() + "\", \"gamma\": \"" + (tmp.path / "c").string() +
              "\"}}\n");
    auto out_dir = tmp.path / "models";
    auto r = run({"corpus", (tmp.path / "manifest.json").string(), "--out", out_dir.string()});
    CHECK(r.exit_code == 0);
    for (const char* name : {"alpha", "beta", "gamma"})
        CHECK(fs::exists(out_dir / (std::string(name) + ".json")));
    CHECK(slurp(out_dir / "failures.log").empty());
}

TEST_CASE("corpus: a missing project path is logged, not fatal") {
    TempDir tmp("hamster_cli_corpus_miss");
    make_project(tmp.path / "a", "pa");
    make_project(tmp.path / "c", "pc");
    write(tmp.path / "manifest.txt",
          "alpha " + (tmp.path / "a").string() + "\n" +
          "beta " + (tmp.path / "missing").string() + "\n" +
          "gamma " + (tmp.path / "c").string() + "\n");
    auto out_dir = tmp.path / "models";
    auto r = run({"corpus", (tmp.path / "manifest.txt").string(), "--out", out_dir.string()});
    CHECK(r.exit_code == 2);
    CHECK(fs::exists(out_dir / "alpha.json"));
    CHECK(!fs::exists(out_dir / "beta.json"));
    CHECK(fs::exists(out_dir / "gamma.json"));
    auto log = slurp(out_dir / "failures.log");
    CHECK(log.find("beta: FAILED") != std::string::npos);
}

TEST_CASE("corpus: duplicate project names invalidate the manifest") {
    TempDir tmp("hamster_cli_corpus_dup");
    make_project(tmp.path / "a", "pa");
    write(tmp.path / "manifest.txt",
          "alpha " + (tmp.path / "a").string() + "\nalpha " + (tmp.path / "a").string() + "\n");
    auto r = run({"corpus", (tmp.path / "manifest.txt").string(), "--out",
                  (tmp.path / "models").string()});
    CHECK(r.exit_code == 1);
}

TEST_CASE("corpus: parallelism 1 and 8 produce byte-identical models") {
    TempDir tmp("hamster_cli_corpus_par");
    std::string manifest;
    for (int i = 0; i < 6; ++i) {
        std::string name = "proj" + std::to_string(i);
        make_project(tmp.path / name, "p" + std::to_string(i), i + 1);
        manifest += name + " " + (tmp.path / name).string() + "\n";
    }
    write(tmp.path / "manifest.txt", manifest);
    auto one = tmp.path / "one";
    auto eight = tmp.path / "eight";
    auto manifest_path = (tmp.path / "manifest.txt").string();
    CHECK(run({"corpus", manifest_path, "--out", one.string(), "--parallelism", "1"}).exit_code ==
          0);
    CHECK(run({"corpus", manifest_path, "--out", eight.string(), "--parallelism", "8"})
              .exit_code == 0);
    for (int i = 0; i < 6; ++i) {
        std::string file = "proj" + std::to_string(i) + ".json";
        CAPTURE(file);
        CHECK(slurp(one / file) == slurp(eight / file));
    }
    CHECK(slurp(one / "failures.log") == slurp(eight / "failures.log"));
}

TEST_CASE("report: aggregates model documents into report files") {
    TempDir tmp("hamster_cli_report");
    make_project(tmp.path / "a", "pa");
    make_project(tmp.path / "b", "pb", 2);
    write(tmp.path / "manifest.txt", "alpha " + (tmp.path / "a").string() + "\nbeta " +
                                         (tmp.path / "b").string() + "\n");
    auto models = tmp.path / "models";
    REQUIRE(run({"corpus", (tmp.path / "manifest.txt").string(), "--out", models.string()})
                .exit_code == 0);
    fs::remove(models / "failures.log");

    auto reports = tmp.path / "reports";
    auto r = run({"report", models.string(), "--out", reports.string()});
    CHECK(r.exit_code == 0);
    for (const char* f : {"summary.json", "table1.csv", "table2_fixtures.csv",
                          "table3_methods.csv", "scope_distribution.csv", "frameworks.csv",
                          "report.md"})
        CHECK(fs::exists(reports / f));
    auto summary = slurp(reports / "summary.json");
    CHECK(summary.find("\"projects\": 2") != std::string::npos);
    CHECK(summary.find("\"test_methods\": 3") != std::string::npos);

    SUBCASE("format flag restricts emitted files") {
        auto only_csv = tmp.path / "csv_only";
        REQUIRE(run({"report", models.string(), "--out", only_csv.string(), "--format", "csv"})
                    .exit_code == 0);
        CHECK(!fs::exists(only_csv / "summary.json"));
        CHECK(!fs::exists(only_csv / "report.md"));
        CHECK(fs::exists(only_csv / "table1.csv"));
    }
}

TEST_CASE("report: invalid documents are skipped with exit 2; none at all is fatal") {
    TempDir tmp("hamster_cli_report_bad");
    make_project(tmp.path / "a", "pa");
    auto models = tmp.path / "models";
    REQUIRE(run({"analyze", (tmp.path / "a").string(), "--name", "alpha", "--out",
                 (models / "alpha.json").string()})
                .exit_code == 0);
    write(models / "broken.json", "{\"not\": \"a model\"}");
    auto r = run({"report", models.string(), "--out", (tmp.path / "reports").string()});
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("broken.json") != std::string::npos);
    CHECK(fs::exists(tmp.path / "reports/summary.json"));

    TempDir empty("hamster_cli_report_empty");
    auto none = run({"report", empty.path.string(), "--out", (tmp.path / "r2").string()});
    CHECK(none.exit_code == 1);
}

TEST_CASE("the on-disk default catalog behaves identically to the built-in one") {
    TempDir tmp("hamster_cli_catalog");
    make_project(tmp.path / "proj", "p");
    auto catalog_file =
        fs::path(HAMSTER_GOLDEN_DIR).parent_path().parent_path() / "catalog" /
        "default-catalog.json";
    REQUIRE(fs::exists(catalog_file));
    auto builtin = run({"analyze", (tmp.path / "proj").string(), "--name", "proj"});
    auto from_file = run({"analyze", (tmp.path / "proj").string(), "--name", "proj",
                          "--catalog", catalog_file.string()});
    CHECK(builtin.exit_code == 0);
    CHECK(from_file.exit_code == 0);
    CHECK(builtin.out == from_file.out);
}

TEST_CASE("usage errors exit 1 with a message on stderr") {
    CHECK(run({}).exit_code == 1);
    CHECK(run({"frobnicate"}).exit_code == 1);
    CHECK(run({"analyze"}).exit_code == 1);
    CHECK(run({"analyze", "x", "--format", "yaml"}).exit_code == 1);
    CHECK(run({"corpus", "m"}).exit_code == 1);  // missing --out
    CHECK(run({"report", "m"}).exit_code == 1);
}
