// SPDX-License-Identifier: Apache-2.0
#include "hamster/analyzer.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "hamster/fixture_analyzer.hpp"
#include "hamster/input_analyzer.hpp"
#include "hamster/metrics.hpp"
#include "hamster/scope_analyzer.hpp"
#include "hamster/sequence_analyzer.hpp"
#include "hamster/test_detector.hpp"

namespace hamster {

namespace {

void sort_mocks(std::vector<MockUse>& mocks) {
    std::sort(mocks.begin(), mocks.end(), [](const MockUse& a, const MockUse& b) {
        return std::tie(a.source_position, a.mocked_type) <
               std::tie(b.source_position, b.mocked_type);
    });
}

void merge_inputs(std::vector<StructuredInputUse>& into,
                  const std::vector<StructuredInputUse>& from) {
    into.insert(into.end(), from.begin(), from.end());
    std::sort(into.begin(), into.end(),
              [](const StructuredInputUse& a, const StructuredInputUse& b) {
                  return std::tie(a.source_position, a.format, a.evidence, a.site) <
                         std::tie(b.source_position, b.format, b.evidence, b.site);
              });
    into.erase(std::unique(into.begin(), into.end()), into.end());
}

// Names never considered for helper expansion within `decl`: its test
// methods and its fixture methods.
std::set<std::string> reserved_names_of(const java::TypeDeclModel& decl,
                                        const ProjectModel& project,
                                        const FrameworkCatalog& catalog) {
    bool junit3 =
        project.inheritance.extends(decl.qualified_name, "junit.framework.TestCase", "TestCase");
    std::set<std::string> out;
    for (const auto& m : decl.methods) {
        if (m.is_constructor) continue;
        if (is_test_method(m, decl, project, catalog) || fixture_evidence(m, junit3))
            out.insert(m.name);
    }
    return out;
}

TestClassAnalysis analyze_test_class(const java::TypeDeclModel& decl,
                                     const java::CompilationUnitModel& unit,
                                     const ProjectModel& project,
                                     const FrameworkCatalog& catalog) {
    TestClassAnalysis out;
    out.qualified_name = decl.qualified_name;
    out.source_path = unit.source_path;
    for (const auto& [id, category] : identify_frameworks(unit, catalog))
        out.framework_ids.push_back(id);
    out.superclass_chain = project.inheritance.chain(decl.qualified_name);

    auto reserved = reserved_names_of(decl, project, catalog);
    BodyContext class_ctx{project, catalog, unit, decl, reserved};
    BodySequence field_seq = analyze_field_initializers(class_ctx, MockSite::Fixture);
    auto field_inputs = detect_structured_inputs(field_seq, catalog);

    // fixtures; setup sequences feed scope and input analysis of each test
    struct AnalyzedFixture {
        FixtureAnalysis analysis;
        BodySequence sequence;
        FixtureKind kind;
    };
    std::vector<AnalyzedFixture> fixtures;
    for (const auto& detected : detect_fixtures(decl, project, catalog)) {
        auto fixture_reserved = detected.declaring == &decl
                                    ? reserved
                                    : reserved_names_of(*detected.declaring, project, catalog);
        auto result = analyze_fixture(detected, project, catalog, fixture_reserved);
        fixtures.push_back(
            {std::move(result.analysis), std::move(result.sequence), detected.kind});
    }

    std::vector<const BodySequence*> scope_context;
    std::vector<StructuredInputUse> context_inputs = field_inputs;
    for (const auto& f : fixtures) {
        if (f.kind != FixtureKind::Setup) continue;
        scope_context.push_back(&f.sequence);
        merge_inputs(context_inputs, detect_structured_inputs(f.sequence, catalog));
    }
    scope_context.push_back(&field_seq);

    for (const auto& f : fixtures)
        (f.kind == FixtureKind::Setup ? out.setup_methods : out.teardown_methods)
            .push_back(f.analysis);
    auto fixture_order = [](const FixtureAnalysis& a, const FixtureAnalysis& b) {
        return std::tie(a.name, a.declaring_class.fqn) < std::tie(b.name, b.declaring_class.fqn);
    };
    std::sort(out.setup_methods.begin(), out.setup_methods.end(), fixture_order);
    std::sort(out.teardown_methods.begin(), out.teardown_methods.end(), fixture_order);

    for (const auto& method : decl.methods) {
        if (method.is_constructor) continue;
        if (!is_test_method(method, decl, project, catalog)) continue;
        BodySequence seq = analyze_body(method, MockSite::TestBody, class_ctx);

        TestMethodAnalysis t;
        t.name = method.name;
        t.signature = method.signature();
        auto metrics = method_metrics(unit, method);
        t.ncloc = metrics.ncloc;
        t.cyclomatic_complexity = metrics.cyclomatic_complexity;
        t.objects_created = seq.objects_created;

        t.mocks = seq.mocks;
        t.mocks.insert(t.mocks.end(), field_seq.mocks.begin(), field_seq.mocks.end());
        sort_mocks(t.mocks);

        t.invocation_sequence = entity_list(seq);
        for (const auto& e : t.invocation_sequence) {
            switch (e.kind) {
                case EntityKind::ConstructorCall: ++t.constructor_calls; break;
                case EntityKind::Assertion: ++t.assertion_count; break;
                default:
                    if (e.classification == CallClassification::ApplicationCall)
                        ++t.application_calls;
                    else if (e.classification == CallClassification::LibraryCall)
                        ++t.library_calls;
                    break;
            }
        }
        t.call_assertion_sequences = partition_call_assertion(t.invocation_sequence);

        auto scope = infer_scope(seq, scope_context, project, catalog);
        t.focal_classes = std::move(scope.focal_classes);
        t.focal_methods = std::move(scope.focal_methods);
        t.category = scope.category;

        t.structured_inputs = context_inputs;
        merge_inputs(t.structured_inputs, detect_structured_inputs(seq, catalog));
        t.helpers_expanded = seq.helpers_expanded;
        out.test_methods.push_back(std::move(t));
    }
    return out;
}

}  // namespace

ProjectAnalysis analyze_project_model(const ProjectModel& project, const std::string& name,
                                      const FrameworkCatalog& catalog) {
    ProjectAnalysis out;
    out.project_name = name;
    out.application_types = tag_application_types(project, catalog);

    std::set<std::string> framework_ids;
    for (const auto& unit : project.units)
        for (const auto& [id, category] : identify_frameworks(unit, catalog))
            framework_ids.insert(id);
    out.framework_ids.assign(framework_ids.begin(), framework_ids.end());

    for (const auto& unit : project.units)
        for (const auto* decl : detect_test_classes(unit, project, catalog))
            out.test_classes.push_back(analyze_test_class(*decl, unit, project, catalog));
    std::sort(out.test_classes.begin(), out.test_classes.end(),
              [](const TestClassAnalysis& a, const TestClassAnalysis& b) {
                  return std::tie(a.source_path, a.qualified_name) <
                         std::tie(b.source_path, b.qualified_name);
              });

    out.analysis_failures = project.failures;
    std::sort(out.analysis_failures.begin(), out.analysis_failures.end());
    return out;
}

ProjectAnalysis analyze_project(const std::string& root, const std::string& name,
                                const FrameworkCatalog& catalog, const AnalyzeOptions& options) {
    IndexOptions index_options;
    index_options.ignore_globs = options.ignore_globs;
    ProjectModel project = index_project(root, index_options);
    return analyze_project_model(project, name, catalog);
}

}  // namespace hamster
