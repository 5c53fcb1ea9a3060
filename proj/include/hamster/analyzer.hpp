// SPDX-License-Identifier: Apache-2.0
//
// End-to-end single-project analysis: parse and index a source tree, then
// run test detection, fixtures, sequences, scope, and input detection into
// one ProjectAnalysis.
#pragma once

#include <string>
#include <vector>

#include "hamster/catalog.hpp"
#include "hamster/model.hpp"
#include "hamster/project_index.hpp"

namespace hamster {

struct AnalyzeOptions {
    std::vector<std::string> ignore_globs = IndexOptions{}.ignore_globs;
};

// Analysis over an already-built project model.
ProjectAnalysis analyze_project_model(const ProjectModel& project, const std::string& name,
                                      const FrameworkCatalog& catalog);

// Walks `root`, parses every Java file (per-file failures are recorded, not
// fatal), and analyzes the result. Throws std::runtime_error when `root`
// does not exist.
ProjectAnalysis analyze_project(const std::string& root, const std::string& name,
                                const FrameworkCatalog& catalog,
                                const AnalyzeOptions& options = {});

}  // namespace hamster
