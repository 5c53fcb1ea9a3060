// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hamster/input_analyzer.hpp"

using namespace hamster;

namespace {

struct Harness {
    ProjectModel project;
    FrameworkCatalog catalog = FrameworkCatalog::default_catalog();

    explicit Harness(const std::string& test_source) {
        std::vector<java::CompilationUnitModel> units;
        units.push_back(java::parse_source(test_source, "src/test/java/T.java"));
        project = build_project_model(std::move(units));
    }

    std::vector<StructuredInputUse> inputs(const std::string& fqn,
                                           const std::string& method_name) const {
        const auto& info = project.types.at(fqn);
        BodyContext ctx{project, catalog, *info.unit, *info.decl, {}};
        for (const auto& m : info.decl->methods)
            if (m.name == method_name)
                return detect_structured_inputs(analyze_body(m, MockSite::TestBody, ctx),
                                                catalog);
        FAIL("method not found: ", method_name);
        return {};
    }
};

}  // namespace

TEST_CASE("data-binding calls are JSON evidence even without a literal argument") {
    Harness h(R"(
package p;
class T {
  void validationParsing() {
    requestBody = mapper.readValue(new java.io.File(GET_TEST_REFRESH), JsonNode.class);
  }
}
)");
    auto uses = h.inputs("p.T", "validationParsing");
    REQUIRE(uses.size() == 1);
    CHECK(uses[0].format == InputFormat::JSON);
    CHECK(uses[0].evidence == InputEvidence::ApiCall);
    CHECK(uses[0].site == MockSite::TestBody);
}

TEST_CASE("SQL statement preparation and CSV parser construction") {
    Harness h(R"__(
package p;
class T {
  void testTDVCommonsUpsert() {
    stmt = conn.prepareStatement("UPSERT INTO TDV VALUES (?, ?)");
    stmt.executeUpdate();
    parser = new CSVParser(reader, format);
  }
}
)__");
    auto uses = h.inputs("p.T", "testTDVCommonsUpsert");
    REQUIRE(uses.size() == 3);
    // sorted by source position: prepareStatement, executeUpdate, CSVParser
    CHECK(uses[0].format == InputFormat::SQL);
    CHECK(uses[0].evidence == InputEvidence::ApiCall);
    CHECK(uses[1].format == InputFormat::SQL);
    CHECK(uses[2].format == InputFormat::CSV);
    CHECK(uses[2].evidence == InputEvidence::ApiCall);
}

TEST_CASE("a SQL literal argument of a SQL API call is not double counted") {
    Harness h(R"(
package p;
class T {
  void m() {
    conn.prepareStatement("SELECT * FROM users");
  }
}
)");
    auto uses = h.inputs("p.T", "m");
    REQUIRE(uses.size() == 1);
    CHECK(uses[0].evidence == InputEvidence::ApiCall);
}

TEST_CASE("classpath loading surfaces both the loader and the file format") {
    Harness h(R"(
package p;
class T {
  void m() {
    in = getClass().getResourceAsStream("config.properties");
  }
}
)");
    auto uses = h.inputs("p.T", "m");
    REQUIRE(uses.size() == 2);
    CHECK(uses[0].format == InputFormat::ClasspathResource);
    CHECK(uses[0].evidence == InputEvidence::ApiCall);
    CHECK(uses[1].format == InputFormat::Properties);
    CHECK(uses[1].evidence == InputEvidence::LiteralPath);
}

TEST_CASE("standalone literals: SQL prefixes and data-file paths") {
    Harness h(R"(
package p;
class T {
  void m() {
    String q = "select id from t where x = ?";
    String f = "fixtures/data.JSON";
    String s = "scripts/init.sql";
    String y = "conf/app.yaml";
  }
}
)");
    auto uses = h.inputs("p.T", "m");
    REQUIRE(uses.size() == 4);
    CHECK(uses[0].format == InputFormat::SQL);
    CHECK(uses[0].evidence == InputEvidence::LiteralPath);
    CHECK(uses[1].format == InputFormat::JSON);  // extension match is case-insensitive
    CHECK(uses[2].format == InputFormat::SQL);
    CHECK(uses[3].format == InputFormat::Unknown);  // .yaml maps to Unknown by default
}

TEST_CASE("non-signals: URLs, prose, blank API arguments, dynamic paths") {
    Harness h(R"(
package p;
class T {
  void m() {
    String u = "http://localhost:8080/health";
    String msg = "updated the record successfully";
    String word = "Selection";
    mapper.readValue("  ");
    loader.load(path);
  }
}
)");
    CHECK(h.inputs("p.T", "m").empty());
}

TEST_CASE("detection is invariant under reordering of independent statements") {
    Harness a(R"(
package p;
class T {
  void m() {
    String f = "a.json";
    String q = "DELETE FROM t";
  }
}
)");
    Harness b(R"(
package p;
class T {
  void m() {
    String q = "DELETE FROM t";
    String f = "a.json";
  }
}
)");
    auto ua = a.inputs("p.T", "m");
    auto ub = b.inputs("p.T", "m");
    REQUIRE(ua.size() == 2);
    REQUIRE(ub.size() == 2);
    std::multiset<std::pair<InputFormat, InputEvidence>> sa, sb;
    for (const auto& u : ua) sa.insert({u.format, u.evidence});
    for (const auto& u : ub) sb.insert({u.format, u.evidence});
    CHECK(sa == sb);
}
