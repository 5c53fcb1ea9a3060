// SPDX-License-Identifier: Apache-2.0
#include "hamster/fixture_analyzer.hpp"

#include <algorithm>
#include <map>

#include "hamster/metrics.hpp"

namespace hamster {

namespace {

std::string simple_of(const std::string& dotted) {
    auto d = dotted.rfind('.');
    return d == std::string::npos ? dotted : dotted.substr(d + 1);
}

}  // namespace

std::optional<std::pair<FixtureKind, FixtureScope>> classify_fixture_annotation(
    const std::string& simple_name) {
    using K = FixtureKind;
    using S = FixtureScope;
    static const std::map<std::string, std::pair<K, S>> kTable = {
        {"Before", {K::Setup, S::PerTest}},       {"BeforeEach", {K::Setup, S::PerTest}},
        {"BeforeMethod", {K::Setup, S::PerTest}}, {"BeforeClass", {K::Setup, S::PerClass}},
        {"BeforeAll", {K::Setup, S::PerClass}},   {"BeforeSuite", {K::Setup, S::PerClass}},
        {"After", {K::Teardown, S::PerTest}},     {"AfterEach", {K::Teardown, S::PerTest}},
        {"AfterMethod", {K::Teardown, S::PerTest}},
        {"AfterClass", {K::Teardown, S::PerClass}},
        {"AfterAll", {K::Teardown, S::PerClass}}, {"AfterSuite", {K::Teardown, S::PerClass}},
    };
    auto it = kTable.find(simple_name);
    if (it == kTable.end()) return std::nullopt;
    return it->second;
}

std::optional<std::pair<FixtureKind, FixtureScope>> fixture_evidence(
    const java::MethodModel& method, bool junit3_class) {
    for (const auto& ann : method.annotations)
        if (auto hit = classify_fixture_annotation(simple_of(ann.name))) return hit;
    if (junit3_class && method.parameters.empty() && !method.modifiers.count("static")) {
        if (method.name == "setUp") return std::pair{FixtureKind::Setup, FixtureScope::PerTest};
        if (method.name == "tearDown")
            return std::pair{FixtureKind::Teardown, FixtureScope::PerTest};
    }
    return std::nullopt;
}

std::vector<DetectedFixture> detect_fixtures(const java::TypeDeclModel& test_class,
                                             const ProjectModel& project,
                                             const FrameworkCatalog& /*catalog*/) {
    bool junit3 = project.inheritance.extends(test_class.qualified_name,
                                              "junit.framework.TestCase", "TestCase");

    // most-derived first: the test class, then its project-type ancestors
    struct ChainEntry {
        const java::TypeDeclModel* decl;
        const java::CompilationUnitModel* unit;
    };
    std::vector<ChainEntry> chain;
    chain.push_back({&test_class, project.types.at(test_class.qualified_name).unit});
    for (const auto& parent : project.inheritance.chain(test_class.qualified_name)) {
        if (!parent.resolved) break;
        auto it = project.types.find(parent.fqn);
        if (it == project.types.end()) break;
        chain.push_back({it->second.decl, it->second.unit});
    }

    struct Declaration {
        size_t depth;  // 0 = the test class itself
        const java::MethodModel* method;
    };
    std::vector<std::string> order;  // signatures in first-encounter order
    std::map<std::string, std::vector<Declaration>> by_signature;
    for (size_t depth = 0; depth < chain.size(); ++depth) {
        for (const auto& m : chain[depth].decl->methods) {
            if (m.is_constructor) continue;
            auto signature = m.signature();
            auto [it, inserted] = by_signature.try_emplace(signature);
            if (inserted) order.push_back(signature);
            it->second.push_back({depth, &m});
        }
    }

    std::vector<DetectedFixture> out;
    for (const auto& signature : order) {
        const auto& decls = by_signature.at(signature);
        // annotation evidence may live anywhere along the override chain
        std::optional<std::pair<FixtureKind, FixtureScope>> evidence;
        for (const auto& d : decls)
            if ((evidence = fixture_evidence(*d.method, junit3))) break;
        if (!evidence) continue;
        const Declaration& winner = decls.front();  // most-derived body
        if (winner.depth > 0 && winner.method->modifiers.count("private"))
            continue;  // private superclass fixtures are not inherited
        DetectedFixture f;
        f.method = winner.method;
        f.declaring = chain[winner.depth].decl;
        f.unit = chain[winner.depth].unit;
        f.kind = evidence->first;
        f.scope = evidence->second;
        f.origin = winner.depth == 0 ? FixtureOrigin::Declared : FixtureOrigin::Inherited;
        out.push_back(f);
    }
    return out;
}

std::vector<CleanupOp> detect_cleanup_operations(const BodySequence& seq,
                                                 const FrameworkCatalog& catalog) {
    std::vector<CleanupOp> out;
    for (const auto& le : seq.entities) {
        if (le.entity.kind != EntityKind::MethodCall) continue;
        if (std::find(catalog.cleanup_names.begin(), catalog.cleanup_names.end(),
                      le.entity.method_name) == catalog.cleanup_names.end())
            continue;
        CleanupOp op;
        op.method_name = le.entity.method_name;
        op.receiver_type = le.entity.receiver_type;
        op.resource_kind = ResourceKind::Unknown;
        if (le.entity.receiver_type.resolved)
            for (const auto& [prefix, kind] : catalog.resource_libraries)
                if (prefix_matches(prefix, le.entity.receiver_type.fqn)) {
                    op.resource_kind = kind;
                    break;
                }
        out.push_back(std::move(op));
    }
    return out;
}

FixtureResult analyze_fixture(const DetectedFixture& fixture, const ProjectModel& project,
                              const FrameworkCatalog& catalog,
                              const std::set<std::string>& reserved_names) {
    FixtureResult result;
    BodyContext ctx{project, catalog, *fixture.unit, *fixture.declaring, reserved_names};
    result.sequence = analyze_body(*fixture.method, MockSite::Fixture, ctx);

    FixtureAnalysis& a = result.analysis;
    a.kind = fixture.kind;
    a.scope = fixture.scope;
    a.origin = fixture.origin;
    a.declaring_class =
        TypeRef{fixture.declaring->simple_name, fixture.declaring->qualified_name, true};
    a.name = fixture.method->name;
    auto metrics = method_metrics(*fixture.unit, *fixture.method);
    a.ncloc = metrics.ncloc;
    a.cyclomatic_complexity = metrics.cyclomatic_complexity;
    a.objects_created = result.sequence.objects_created;
    a.mocks = result.sequence.mocks;
    std::sort(a.mocks.begin(), a.mocks.end(), [](const MockUse& x, const MockUse& y) {
        return std::tie(x.source_position, x.mocked_type) < std::tie(y.source_position, y.mocked_type);
    });
    if (fixture.kind == FixtureKind::Teardown) {
        a.cleanup_operations = detect_cleanup_operations(result.sequence, catalog);
        for (const auto& le : result.sequence.entities)
            if (le.entity.kind == EntityKind::Assertion) ++a.assertions_in_teardown;
    }
    return result;
}

}  // namespace hamster
