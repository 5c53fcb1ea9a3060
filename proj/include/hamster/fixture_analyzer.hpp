// SPDX-License-Identifier: Apache-2.0
//
// Setup/teardown fixture detection (declared and inherited), execution-scope
// classification, fixture metrics, and teardown cleanup-operation detection.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hamster/catalog.hpp"
#include "hamster/java_ast.hpp"
#include "hamster/model.hpp"
#include "hamster/project_index.hpp"
#include "hamster/sequence_analyzer.hpp"

namespace hamster {

struct DetectedFixture {
    const java::MethodModel* method = nullptr;         // most-derived body
    const java::TypeDeclModel* declaring = nullptr;    // class declaring that body
    const java::CompilationUnitModel* unit = nullptr;  // unit of the declaring class
    FixtureKind kind = FixtureKind::Setup;
    FixtureScope scope = FixtureScope::PerTest;
    FixtureOrigin origin = FixtureOrigin::Declared;
};

// (kind, scope) implied by a fixture annotation's simple name, if any.
std::optional<std::pair<FixtureKind, FixtureScope>> classify_fixture_annotation(
    const std::string& simple_name);

// Fixture evidence of a single method: annotation first, then the JUnit 3
// setUp/tearDown convention when `junit3_class` holds.
std::optional<std::pair<FixtureKind, FixtureScope>> fixture_evidence(
    const java::MethodModel& method, bool junit3_class);

// Declared and inherited (public/protected) fixtures of a test class.
// Overridden fixtures are reported once with the most-derived body.
std::vector<DetectedFixture> detect_fixtures(const java::TypeDeclModel& test_class,
                                             const ProjectModel& project,
                                             const FrameworkCatalog& catalog);

// Cleanup operations in an (already linearized) teardown body.
std::vector<CleanupOp> detect_cleanup_operations(const BodySequence& seq,
                                                 const FrameworkCatalog& catalog);

struct FixtureResult {
    FixtureAnalysis analysis;
    BodySequence sequence;  // reused by scope and input analysis
};

// Metrics, object creations, fixture-site mocks, and (for teardowns) cleanup
// ops and assertion counts. `reserved_names` excludes the declaring class's
// tests/fixtures from helper expansion.
FixtureResult analyze_fixture(const DetectedFixture& fixture, const ProjectModel& project,
                              const FrameworkCatalog& catalog,
                              const std::set<std::string>& reserved_names);

}  // namespace hamster
