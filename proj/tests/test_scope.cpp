// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hamster/scope_analyzer.hpp"

using namespace hamster;

namespace {

struct Harness {
    ProjectModel project;
    FrameworkCatalog catalog = FrameworkCatalog::default_catalog();

    Harness(std::initializer_list<std::pair<std::string, std::string>> files) {
        std::vector<java::CompilationUnitModel> units;
        for (const auto& [path, text] : files) units.push_back(java::parse_source(text, path));
        project = build_project_model(std::move(units));
    }

    BodySequence body(const std::string& fqn, const std::string& method_name,
                      MockSite site = MockSite::TestBody) const {
        const auto& info = project.types.at(fqn);
        BodyContext ctx{project, catalog, *info.unit, *info.decl, {}};
        for (const auto& m : info.decl->methods)
            if (m.name == method_name) return analyze_body(m, site, ctx);
        FAIL("method not found: ", method_name);
        return {};
    }

    ScopeResult scope(const std::string& fqn, const std::string& method_name,
                      const std::vector<const BodySequence*>& context = {}) const {
        auto seq = body(fqn, method_name);
        return infer_scope(seq, context, project, catalog);
    }
};

std::vector<std::string> class_names(const ScopeResult& r) {
    std::vector<std::string> out;
    for (const auto& t : r.focal_classes) out.push_back(t.name);
    return out;
}

}  // namespace

TEST_CASE("construction-only arguments are not focal; the asserted object is") {
    Harness h({{"src/main/java/app/Rule.java", "package app; public class Rule {}"},
               {"src/main/java/app/ANDCondition.java",
                "package app; public class ANDCondition {}"},
               {"src/main/java/app/EQUALCondition.java",
                "package app; public class EQUALCondition {}"},
               {"src/test/java/app/RuleTest.java", R"(
package app;
import org.junit.Assert;
import org.junit.Test;
public class RuleTest {
  @Test
  public void testANDRule() {
    Rule rule = new Rule(new ANDCondition(new EQUALCondition("type", "x")));
    Assert.assertNotNull(rule);
  }
}
)"}});
    auto r = h.scope("app.RuleTest", "testANDRule");
    CHECK(class_names(r) == std::vector<std::string>{"Rule"});
    CHECK(r.focal_methods.empty());
    CHECK(r.category == TestCategory::Unit);
}

TEST_CASE("exercising calls yield focal methods with declared signatures") {
    Harness h({{"src/main/java/app/Calculator.java", R"(
package app;
public class Calculator {
  public int add(int a, int b) { return a + b; }
  public int getTotal() { return total; }
}
)"},
               {"src/test/java/app/CalculatorTest.java", R"(
package app;
import org.junit.Assert;
import org.junit.Test;
public class CalculatorTest {
  @Test
  public void testAdd() {
    Calculator calc = new Calculator();
    calc.add(1, 2);
    Assert.assertEquals(3, calc.getTotal());
  }
}
)"}});
    auto r = h.scope("app.CalculatorTest", "testAdd");
    CHECK(class_names(r) == std::vector<std::string>{"Calculator"});
    REQUIRE(r.focal_methods.size() == 1);
    CHECK(r.focal_methods[0].signature == "add(int,int)");
    CHECK(r.category == TestCategory::Unit);
}

TEST_CASE("accessors exercise a candidate only when their value reaches an assertion") {
    Harness h({{"src/main/java/app/Config.java",
                "package app; public class Config { public String getName() { return n; } }"},
               {"src/test/java/app/ConfigTest.java", R"(
package app;
import org.junit.Assert;
import org.junit.Test;
public class ConfigTest {
  @Test
  public void asserted() {
    Config c = new Config();
    Assert.assertEquals("x", c.getName());
  }
  @Test
  public void ignored() {
    Config c = new Config();
    c.getName();
  }
}
)"}});
    auto asserted = h.scope("app.ConfigTest", "asserted");
    CHECK(class_names(asserted) == std::vector<std::string>{"Config"});
    CHECK(asserted.focal_methods.empty());  // accessors are never focal methods
    auto ignored = h.scope("app.ConfigTest", "ignored");
    CHECK(ignored.focal_classes.empty());
    CHECK(ignored.category == TestCategory::Unknown);
}

TEST_CASE("setter-only usage is configuration, not exercise") {
    Harness h({{"src/main/java/app/Bean.java",
                "package app; public class Bean { public void setName(String n) {} }"},
               {"src/test/java/app/BeanTest.java", R"(
package app;
import org.junit.Test;
public class BeanTest {
  @Test
  public void configureOnly() {
    Bean b = new Bean();
    b.setName("x");
  }
}
)"}});
    auto r = h.scope("app.BeanTest", "configureOnly");
    CHECK(r.focal_classes.empty());
    CHECK(r.category == TestCategory::Unknown);
}

TEST_CASE("an unused static call makes the declaring class focal") {
    Harness h({{"src/main/java/app/Migrator.java",
                "package app; public class Migrator { public static void run(String db) {} }"},
               {"src/test/java/app/MigratorTest.java", R"(
package app;
import org.junit.Assert;
import org.junit.Test;
public class MigratorTest {
  @Test
  public void testRun() {
    Migrator.run("db");
    Assert.assertTrue(true);
  }
}
)"}});
    auto r = h.scope("app.MigratorTest", "testRun");
    CHECK(class_names(r) == std::vector<std::string>{"Migrator"});
    REQUIRE(r.focal_methods.size() == 1);
    CHECK(r.focal_methods[0].signature == "run(String)");
    CHECK(r.category == TestCategory::Unit);
}

TEST_CASE("a consumed static-call result must still flow to an assertion") {
    Harness h({{"src/main/java/app/Parser.java",
                "package app; public class Parser { public static Node parse(String s) { return null; } }"},
               {"src/test/java/app/ParserTest.java", R"(
package app;
import org.junit.Assert;
import org.junit.Test;
public class ParserTest {
  @Test
  public void flows() {
    Assert.assertNotNull(Parser.parse("x"));
  }
}
)"}});
    auto r = h.scope("app.ParserTest", "flows");
    CHECK(class_names(r) == std::vector<std::string>{"Parser"});
    CHECK(r.category == TestCategory::Unit);
}

TEST_CASE("mocked objects and mocking-framework types are never focal") {
    Harness h({{"src/main/java/app/Service.java",
                "package app; public class Service { public String ping() { return null; } }"},
               {"src/test/java/app/ServiceTest.java", R"(
package app;
import org.junit.Assert;
import org.junit.Test;
import org.mockito.Mockito;
public class ServiceTest {
  @Test
  public void mockOnly() {
    Service s = Mockito.mock(Service.class);
    Mockito.when(s.ping()).thenReturn("pong");
    Assert.assertEquals("pong", s.ping());
  }
}
)"}});
    auto r = h.scope("app.ServiceTest", "mockOnly");
    CHECK(r.focal_classes.empty());
    CHECK(r.category == TestCategory::Unknown);
}

TEST_CASE("library focal classes drive the Library category without focal methods") {
    Harness h({{"src/test/java/p/ListTest.java", R"(
package p;
import java.util.ArrayList;
import org.junit.Assert;
import org.junit.Test;
public class ListTest {
  @Test
  public void grows() {
    ArrayList list = new ArrayList();
    list.add("x");
    Assert.assertEquals(1, list.size());
  }
}
)"}});
    auto r = h.scope("p.ListTest", "grows");
    REQUIRE(r.focal_classes.size() == 1);
    CHECK(r.focal_classes[0].fqn == "java.util.ArrayList");
    CHECK(r.focal_methods.empty());
    CHECK(r.category == TestCategory::Library);
}

TEST_CASE("two exercised application classes mean Integration") {
    Harness h({{"src/main/java/app/Producer.java",
                "package app; public class Producer { public void send(String m) {} }"},
               {"src/main/java/app/Consumer.java",
                "package app; public class Consumer { public String poll() { return null; } }"},
               {"src/test/java/app/PipeTest.java", R"(
package app;
import org.junit.Assert;
import org.junit.Test;
public class PipeTest {
  @Test
  public void roundTrip() {
    Producer p = new Producer();
    Consumer c = new Consumer();
    p.send("m");
    Assert.assertEquals("m", c.poll());
  }
}
)"}});
    auto r = h.scope("app.PipeTest", "roundTrip");
    CHECK(class_names(r) == std::vector<std::string>{"Consumer", "Producer"});
    CHECK(r.category == TestCategory::Integration);
}

TEST_CASE("UI and API receivers outrank the unit/integration decision") {
    Harness h({{"src/main/java/app/Page.java",
                "package app; public class Page { public void open() {} }"},
               {"src/test/java/app/UiTest.java", R"(
package app;
import org.openqa.selenium.WebDriver;
import org.junit.Assert;
import org.junit.Test;
public class UiTest {
  @Test
  public void clicks(WebDriver driver) {
    driver.get("http://localhost");
    Page page = new Page();
    page.open();
    Assert.assertTrue(page.toString().isEmpty());
  }
}
)"},
               {"src/test/java/app/ApiTest.java", R"(
package app;
import io.restassured.RestAssured;
import org.junit.Test;
public class ApiTest {
  @Test
  public void status() {
    RestAssured.get("/health");
  }
}
)"}});
    // the WebDriver variable's calls carry a resolved selenium receiver type
    auto seq = h.body("app.UiTest", "clicks");
    auto ui = infer_scope(seq, {}, h.project, h.catalog);
    CHECK(ui.category == TestCategory::UI);
    auto api = h.scope("app.ApiTest", "status");
    CHECK(api.category == TestCategory::API);
}

TEST_CASE("objects created in setup fixtures can become focal in the test body") {
    Harness h({{"src/main/java/app/Cache.java", R"(
package app;
public class Cache {
  public void put(String k, String v) {}
  public String get(String k) { return null; }
}
)"},
               {"src/test/java/app/CacheTest.java", R"(
package app;
import org.junit.Assert;
import org.junit.Before;
import org.junit.Test;
public class CacheTest {
  private Cache cache;
  @Before
  public void setUp() {
    cache = new Cache();
  }
  @Test
  public void storesValues() {
    cache.put("k", "v");
    Assert.assertEquals("v", cache.get("k"));
  }
}
)"}});
    auto setup = h.body("app.CacheTest", "setUp", MockSite::Fixture);
    auto test = h.body("app.CacheTest", "storesValues");
    auto r = infer_scope(test, {&setup}, h.project, h.catalog);
    CHECK(class_names(r) == std::vector<std::string>{"Cache"});
    // get(String) takes an argument, so it is not an accessor
    REQUIRE(r.focal_methods.size() == 2);
    CHECK(r.focal_methods[0].signature == "get(String)");
    CHECK(r.focal_methods[1].signature == "put(String,String)");
    CHECK(r.category == TestCategory::Unit);
}

TEST_CASE("arguments to calls on an exercised candidate are exercised too") {
    Harness h({{"src/main/java/app/Engine.java",
                "package app; public class Engine { public void execute(Task t) {} }"},
               {"src/main/java/app/Task.java", "package app; public class Task {}"},
               {"src/test/java/app/EngineTest.java", R"(
package app;
import org.junit.Test;
public class EngineTest {
  @Test
  public void runsTask() {
    Engine engine = new Engine();
    Task task = new Task();
    engine.execute(task);
  }
}
)"}});
    auto r = h.scope("app.EngineTest", "runsTask");
    CHECK(class_names(r) == std::vector<std::string>{"Engine", "Task"});
    CHECK(r.category == TestCategory::Integration);
}

TEST_CASE("an empty body has no focal classes and an Unknown category") {
    Harness h({{"src/test/java/p/EmptyTest.java", R"(
package p;
import org.junit.Test;
public class EmptyTest {
  @Test public void nothing() {}
}
)"}});
    auto r = h.scope("p.EmptyTest", "nothing");
    CHECK(r.focal_classes.empty());
    CHECK(r.focal_methods.empty());
    CHECK(r.category == TestCategory::Unknown);
}
