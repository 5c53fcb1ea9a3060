// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hamster/test_detector.hpp"

using namespace hamster;

namespace {

ProjectModel project_of(std::vector<std::pair<std::string, std::string>> files) {
    std::vector<java::CompilationUnitModel> units;
    for (auto& [path, text] : files) units.push_back(java::parse_source(text, path));
    return build_project_model(std::move(units));
}

const java::CompilationUnitModel& unit_of(const ProjectModel& p, const std::string& fqn) {
    return *p.types.at(fqn).unit;
}

}  // namespace

TEST_CASE("annotation-based test methods across frameworks") {
    auto catalog = FrameworkCatalog::default_catalog();
    auto project = project_of({{"src/test/java/T.java", R"(
package p;
import org.junit.jupiter.api.Test;
class T {
  @Test void plain() {}
  @ParameterizedTest void parameterized(int x) {}
  @TestFactory Object factory() { return null; }
  @RepeatedTest(3) void repeated() {}
  @TestTemplate void templated() {}
  void helper() {}
}
)"}});
    const auto& decl = unit_of(project, "p.T").type_decls[0];
    int detected = 0;
    for (const auto& m : decl.methods)
        if (auto ev = is_test_method(m, decl, project, catalog)) {
            ++detected;
            CHECK(ev->mechanism == TestEvidenceMechanism::Annotation);
        }
    CHECK(detected == 5);
    CHECK(!is_test_method(decl.methods.back(), decl, project, catalog).has_value());
}

TEST_CASE("JUnit 3 naming convention requires a TestCase subclass") {
    auto catalog = FrameworkCatalog::default_catalog();
    auto project = project_of({{"src/test/java/Old.java", R"(
package p;
import junit.framework.TestCase;
public class OldTest extends TestCase {
  public void testAdd() { int x = 1; }
  public void testStatic() {}
  private void testHelper() {}
  public void check() {}
}
)"},
                               {"src/test/java/NotACase.java", R"(
package p;
public class NotACase {
  public void testSomething() {}
}
)"}});
    const auto& old_decl = unit_of(project, "p.OldTest").type_decls[0];
    auto ev = is_test_method(old_decl.methods[0], old_decl, project, catalog);
    REQUIRE(ev.has_value());
    CHECK(ev->mechanism == TestEvidenceMechanism::JUnit3Convention);
    // private fails the public/instance rule; non-test* name fails the prefix
    CHECK(!is_test_method(old_decl.methods[2], old_decl, project, catalog).has_value());
    CHECK(!is_test_method(old_decl.methods[3], old_decl, project, catalog).has_value());
    const auto& other = unit_of(project, "p.NotACase").type_decls[0];
    CHECK(!is_test_method(other.methods[0], other, project, catalog).has_value());
}

TEST_CASE("JUnit 3 convention applies transitively through project bases") {
    auto catalog = FrameworkCatalog::default_catalog();
    auto project = project_of({{"src/test/java/Base.java",
                                "package p; import junit.framework.TestCase;"
                                "public abstract class BaseTest extends TestCase {}"},
                               {"src/test/java/Leaf.java",
                                "package p; public class LeafTest extends BaseTest {"
                                "  public void testLeaf() {} }"}});
    const auto& leaf = unit_of(project, "p.LeafTest").type_decls[0];
    REQUIRE(is_test_method(leaf.methods[0], leaf, project, catalog).has_value());
}

TEST_CASE("test classes require a declared test method; nested classes count") {
    auto catalog = FrameworkCatalog::default_catalog();
    auto project = project_of({{"src/test/java/A.java", R"(
package p;
import org.junit.Test;
public class OuterTest {
  @Test public void testOne() {}
  public static class InnerTest {
    @Test public void testTwo() {}
  }
  public static class JustHelpers {
    void util() {}
  }
}
)"},
                               {"src/test/java/Base.java", R"(
package p;
public abstract class FixtureOnlyBase {
  @org.junit.Before public void init() {}
}
)"}});
    auto found = detect_test_classes(unit_of(project, "p.OuterTest"), project, catalog);
    REQUIRE(found.size() == 2);
    CHECK(found[0]->qualified_name == "p.OuterTest");
    CHECK(found[1]->qualified_name == "p.OuterTest$InnerTest");
    CHECK(detect_test_classes(unit_of(project, "p.FixtureOnlyBase"), project, catalog).empty());
}

TEST_CASE("framework identification from imports, longest prefix wins") {
    auto catalog = FrameworkCatalog::default_catalog();
    auto unit = java::parse_source(R"(
package p;
import org.junit.jupiter.api.Test;
import org.mockito.Mockito;
import org.assertj.core.api.Assertions;
class T {}
)",
                                   "T.java");
    auto found = identify_frameworks(unit, catalog);
    REQUIRE(found.size() == 3);
    CHECK(found[0] == std::pair<std::string, std::string>{"assertj", "Assertion"});
    CHECK(found[1] == std::pair<std::string, std::string>{"junit5", "Core"});
    CHECK(found[2] == std::pair<std::string, std::string>{"mockito", "Mocking"});

    auto junit4 = java::parse_source("import org.junit.Test; class T {}", "T.java");
    auto f4 = identify_frameworks(junit4, catalog);
    REQUIRE(f4.size() == 1);
    CHECK(f4[0].first == "junit4");
}

TEST_CASE("framework identification is import-order invariant") {
    auto catalog = FrameworkCatalog::default_catalog();
    auto a = java::parse_source(
        "import org.mockito.Mockito; import org.junit.Test; class T {}", "T.java");
    auto b = java::parse_source(
        "import org.junit.Test; import org.mockito.Mockito; class T {}", "T.java");
    CHECK(identify_frameworks(a, catalog) == identify_frameworks(b, catalog));
}

TEST_CASE("fully qualified superclass reference counts as framework evidence") {
    auto catalog = FrameworkCatalog::default_catalog();
    auto unit = java::parse_source(
        "package p; class Old extends junit.framework.TestCase {}", "Old.java");
    auto found = identify_frameworks(unit, catalog);
    REQUIRE(found.size() == 1);
    CHECK(found[0].first == "junit3");
}

TEST_CASE("application type tagging from non-test units only") {
    auto catalog = FrameworkCatalog::default_catalog();

    auto android = project_of(
        {{"src/main/java/A.java", "package p; import android.app.Activity; class A {}"},
         {"src/test/java/T.java", "package p; import javax.ejb.Stateless; class T {}"}});
    auto tags = tag_application_types(android, catalog);
    REQUIRE(tags.size() == 1);
    CHECK(tags[0] == ApplicationType::Android);  // test-side javax.ejb ignored

    auto plain = project_of({{"src/main/java/A.java", "package p; class A {}"}});
    auto def = tag_application_types(plain, catalog);
    REQUIRE(def.size() == 1);
    CHECK(def[0] == ApplicationType::JavaSE);

    auto ee = project_of(
        {{"src/main/java/B.java",
          "package p; import javax.ejb.Stateless; import javax.ws.rs.GET; class B {}"}});
    auto both = tag_application_types(ee, catalog);
    REQUIRE(both.size() == 2);
    CHECK(both[0] == ApplicationType::WebAPI);
    CHECK(both[1] == ApplicationType::JavaEE);
}
