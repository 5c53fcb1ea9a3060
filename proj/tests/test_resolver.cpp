// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "hamster/project_index.hpp"

using namespace hamster;
namespace fs = std::filesystem;

namespace {

// Builds a throwaway source tree under a unique temp directory.
class TempTree {
  public:
    TempTree() {
        root_ = fs::temp_directory_path() /
                ("hamster_resolver_" + std::to_string(counter_++));
        fs::create_directories(root_);
    }
    ~TempTree() { fs::remove_all(root_); }

    void add(const std::string& rel, const std::string& content) {
        fs::path p = root_ / rel;
        fs::create_directories(p.parent_path());
        std::ofstream(p) << content;
    }

    std::string path() const { return root_.string(); }

  private:
    fs::path root_;
    inline static int counter_ = 0;
};

}  // namespace

TEST_CASE("explicit import wins over everything") {
    TempTree t;
    t.add("src/main/java/com/app/util/Widget.java",
          "package com.app.util; public class Widget {}");
    t.add("src/test/java/com/app/WidgetTest.java",
          "package com.app; import com.other.Widget; class WidgetTest {}");
    t.add("src/main/java/com/app/Widget.java",
          "package com.app; public class Widget {}");
    auto project = index_project(t.path());
    const auto& unit = *project.types.at("com.app.WidgetTest").unit;
    auto r = resolve_type("Widget", unit, project);
    CHECK(r.resolution == Resolution::Explicit);
    REQUIRE(r.fqn.has_value());
    CHECK(*r.fqn == "com.other.Widget");
}

TEST_CASE("same-package project type beats a unique index match elsewhere") {
    TempTree t;
    t.add("src/main/java/com/app/Widget.java",
          "package com.app; public class Widget {}");
    t.add("src/main/java/com/app/Consumer.java",
          "package com.app; class Consumer {}");
    auto project = index_project(t.path());
    const auto& unit = *project.types.at("com.app.Consumer").unit;
    auto r = resolve_type("Widget", unit, project);
    CHECK(r.resolution == Resolution::SamePackage);
    CHECK(*r.fqn == "com.app.Widget");
}

TEST_CASE("java.lang names resolve by default") {
    TempTree t;
    t.add("A.java", "package p; class A {}");
    auto project = index_project(t.path());
    const auto& unit = *project.types.at("p.A").unit;
    auto r = resolve_type("String", unit, project);
    CHECK(r.resolution == Resolution::JavaLangDefault);
    CHECK(*r.fqn == "java.lang.String");
}

TEST_CASE("unique project-index match resolves across packages") {
    TempTree t;
    t.add("src/main/java/com/app/core/Engine.java",
          "package com.app.core; public class Engine {}");
    t.add("src/test/java/com/app/web/EngineTest.java",
          "package com.app.web; class EngineTest {}");
    auto project = index_project(t.path());
    const auto& unit = *project.types.at("com.app.web.EngineTest").unit;
    auto r = resolve_type("Engine", unit, project);
    CHECK(r.resolution == Resolution::ProjectIndex);
    CHECK(*r.fqn == "com.app.core.Engine");
}

TEST_CASE("ambiguity and wildcard-only candidates stay unresolved") {
    TempTree t;
    t.add("a/Engine.java", "package com.a; public class Engine {}");
    t.add("b/Engine.java", "package com.b; public class Engine {}");
    t.add("c/User.java",
          "package com.c; import com.elsewhere.*; class User {}");
    auto project = index_project(t.path());
    const auto& unit = *project.types.at("com.c.User").unit;

    auto ambiguous = resolve_type("Engine", unit, project);
    CHECK(ambiguous.resolution == Resolution::Unresolved);
    CHECK(!ambiguous.fqn.has_value());
    CHECK(ambiguous.simple_name == "Engine");

    auto wildcard_only = resolve_type("Gadget", unit, project);
    CHECK(wildcard_only.resolution == Resolution::Unresolved);
}

TEST_CASE("resolve_type_text handles qualified and generic text") {
    TempTree t;
    t.add("Outer.java",
          "package p; public class Outer { public static class Inner {} }");
    t.add("User.java", "package p; class User {}");
    auto project = index_project(t.path());
    const auto& unit = *project.types.at("p.User").unit;

    auto dotted = resolve_type_text("p.Outer", unit, project);
    CHECK(dotted.resolution != Resolution::Unresolved);
    CHECK(*dotted.fqn == "p.Outer");

    auto nested = resolve_type_text("Outer.Inner", unit, project);
    REQUIRE(nested.fqn.has_value());
    CHECK(*nested.fqn == "p.Outer$Inner");

    auto generic = resolve_type_text("List<p.Outer>", unit, project);
    CHECK(generic.simple_name == "List");

    auto external = resolve_type_text("org.example.Thing", unit, project);
    REQUIRE(external.fqn.has_value());
    CHECK(*external.fqn == "org.example.Thing");
}

TEST_CASE("inheritance graph records chains and detects cycles") {
    TempTree t;
    t.add("A.java", "package p; class A extends B {}");
    t.add("B.java", "package p; class B extends External {}");
    t.add("C.java", "package p; class C extends D {}");
    t.add("D.java", "package p; class D extends C {}");
    auto project = index_project(t.path());

    auto chain = project.inheritance.chain("p.A");
    REQUIRE(chain.size() >= 2);
    CHECK(chain[0].fqn == "p.B");
    CHECK(chain[1].name == "External");
    CHECK(!chain[1].resolved);

    CHECK(project.inheritance.extends("p.A", "", "External"));
    CHECK(!project.inheritance.extends("p.B", "p.A", "A"));
    CHECK(!project.inheritance.diagnostics.empty());  // the C/D cycle
    // Cycle members still terminate.
    (void)project.inheritance.chain("p.C");
}

TEST_CASE("indexing skips ignored directories and survives bad files") {
    TempTree t;
    t.add("src/main/java/App.java", "package p; class App {}");
    t.add("target/Generated.java", "package p; class Generated {}");
    t.add("build/Copy.java", "package p; class Copy {}");
    t.add("src/test/java/Bad.java", "\x01 class ))) {{{");
    auto project = index_project(t.path());
    CHECK(project.has_type("p.App"));
    CHECK(!project.has_type("p.Generated"));
    CHECK(!project.has_type("p.Copy"));
    CHECK(!project.failures.empty());
}

TEST_CASE("is_test_path keys on test/tests path segments") {
    CHECK(is_test_path("src/test/java/FooTest.java"));
    CHECK(is_test_path("module/tests/Foo.java"));
    CHECK(!is_test_path("src/main/java/Tester.java"));
    CHECK(!is_test_path("src/main/java/latest/Foo.java"));
}

TEST_CASE("glob matching") {
    CHECK(glob_match("**/target/**", "a/b/target/c/D.java"));
    CHECK(glob_match("**/target/**", "target/D.java"));
    CHECK(!glob_match("**/target/**", "a/targeted/D.java"));
    CHECK(glob_match("**/*.java", "x/y/Z.java"));
    CHECK(glob_match("*.java", "Z.java"));
    CHECK(!glob_match("*.java", "x/Z.java"));
}

TEST_CASE("missing root throws") {
    CHECK_THROWS_AS((void)index_project("/nonexistent/definitely/missing"),
                    std::runtime_error);
}
