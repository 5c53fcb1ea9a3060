// SPDX-License-Identifier: Apache-2.0
//
// Focal class/method inference through a lightweight dataflow over the
// linearized sequences, and the test-category decision flow
// (UI > API > Unit/Integration > Library > Unknown).
#pragma once

#include <vector>

#include "hamster/catalog.hpp"
#include "hamster/model.hpp"
#include "hamster/project_index.hpp"
#include "hamster/sequence_analyzer.hpp"

namespace hamster {

struct ScopeResult {
    std::vector<TypeRef> focal_classes;    // sorted set; application side when
                                           // present, else library side
    std::vector<FocalMethod> focal_methods;  // sorted set, application classes only
    TestCategory category = TestCategory::Unknown;
};

// `test` is the test method's sequence; `context` carries the class's setup
// fixtures and field initializers (candidate objects may originate there).
ScopeResult infer_scope(const BodySequence& test,
                        const std::vector<const BodySequence*>& context,
                        const ProjectModel& project, const FrameworkCatalog& catalog);

}  // namespace hamster
