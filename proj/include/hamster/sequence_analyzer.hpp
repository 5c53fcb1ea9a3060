// SPDX-License-Identifier: Apache-2.0
//
// Linearizes a method body into the runtime-ordered invocation sequence
// (helpers inlined, arguments before their enclosing call, chains left to
// right), classifies every entity, detects mock creations, and partitions
// sequences into call-assertion blocks.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hamster/catalog.hpp"
#include "hamster/java_ast.hpp"
#include "hamster/model.hpp"
#include "hamster/project_index.hpp"

namespace hamster {

// One entity of the linearized sequence plus the side facts the scope and
// input analyzers need (variable bindings, value flow, literal arguments).
struct LinearEntity {
    InvocationEntity entity;
    std::string receiver_var;    // root variable of the receiver chain, "" if none
    std::string assigned_var;    // variable receiving this entity's value, "" if none
    int receiver_entity = -1;    // index of the entity producing the receiver value
    std::vector<int> arg_value_entities;  // entities producing direct arguments
    std::vector<std::string> arg_var_names;  // plain variable-name arguments
    std::vector<std::pair<java::Pos, std::string>> literal_string_args;
    MockSite site = MockSite::TestBody;
    bool value_consumed = false;           // assigned, chained from, or passed as argument
    bool receiver_is_static_type = false;  // receiver written as a type name
    bool is_mock_creation = false;         // entity is a mock/spy creation call
};

struct LiteralSignal {
    java::Pos pos;
    std::string text;
    MockSite site = MockSite::TestBody;
};

struct BodySequence {
    std::vector<LinearEntity> entities;
    std::vector<MockUse> mocks;
    std::vector<LiteralSignal> string_literals;  // every string literal seen
    std::vector<std::string> helpers_expanded;   // unique signatures, expansion order
    bool cycle_detected = false;
    int objects_created = 0;
    std::map<std::string, TypeRef> var_types;  // locals and owner-class fields
    std::set<std::string> mock_vars;           // variables bound to mock creations
};

struct BodyContext {
    const ProjectModel& project;
    const FrameworkCatalog& catalog;
    const java::CompilationUnitModel& unit;  // unit declaring the body
    const java::TypeDeclModel& owner;        // class declaring the body
    // test and fixture method names of the owner, excluded from helper expansion
    std::set<std::string> reserved_names;
};

// Linearizes `method`'s body. `root_site` is TestBody for test methods (helper
// bodies then record site=Helper) or Fixture for fixtures (helpers stay
// Fixture-site).
BodySequence analyze_body(const java::MethodModel& method, MockSite root_site,
                          const BodyContext& ctx);

// Linearizes the owner class's field initializers (mock fields, candidate
// objects). Annotation-declared mocks (@Mock et al.) are included.
BodySequence analyze_field_initializers(const BodyContext& ctx, MockSite site);

std::vector<InvocationEntity> entity_list(const BodySequence& seq);

// Greedy partition: maximal non-assertion run, then the maximal assertion run
// following it. A leading assertion run yields a first sequence with an empty
// call part; a trailing call run yields one with an empty assertion part.
std::vector<CallAssertionSequence> partition_call_assertion(
    const std::vector<InvocationEntity>& sequence);

}  // namespace hamster
