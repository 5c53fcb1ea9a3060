// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hamster/java_ast.hpp"

namespace hamster {

struct MetricResult {
    int ncloc = 0;
    int cyclomatic_complexity = 1;
};

// Counts lines in [start_line, end_line] carrying at least one token that is
// neither comment nor whitespace. Blank and comment-only lines are excluded;
// the signature line and closing-brace line count when they carry tokens.
int ncloc(const java::CompilationUnitModel& unit, int start_line, int end_line);

// 1 + decision points: if, loop headers, case labels (excluding default),
// catch clauses, ternaries, and short-circuit && / ||.
int cyclomatic_complexity(const java::Stmt* body);

MetricResult method_metrics(const java::CompilationUnitModel& unit,
                            const java::MethodModel& method);

}  // namespace hamster
