// SPDX-License-Identifier: Apache-2.0
#include "hamster/metrics.hpp"

#include <algorithm>

namespace hamster {

namespace {

using java::Expr;
using java::ExprKind;
using java::Stmt;
using java::StmtKind;

int stmt_decisions(const Stmt* s);

int expr_decisions(const Expr* e) {
    if (!e) return 0;
    int n = 0;
    if (e->kind == ExprKind::Ternary) ++n;
    if (e->kind == ExprKind::Binary && (e->name == "&&" || e->name == "||")) ++n;
    n += expr_decisions(e->target.get());
    n += expr_decisions(e->rhs.get());
    n += expr_decisions(e->cond.get());
    for (const auto& a : e->args) n += expr_decisions(a.get());
    // lambda and switch-expression bodies contribute at their site
    if (e->body) n += stmt_decisions(e->body.get());
    if (e->anon_body) {
        for (const auto& blk : e->anon_body->initializer_blocks)
            n += stmt_decisions(blk.get());
        for (const auto& f : e->anon_body->fields)
            n += expr_decisions(f.initializer.get());
        for (const auto& m : e->anon_body->methods) n += stmt_decisions(m.body.get());
    }
    return n;
}

int stmt_decisions(const Stmt* s) {
    if (!s) return 0;
    int n = 0;
    switch (s->kind) {
        case StmtKind::If:
        case StmtKind::While:
        case StmtKind::DoWhile:
        case StmtKind::For:
        case StmtKind::ForEach:
            ++n;
            break;
        case StmtKind::Catch:
            ++n;
            break;
        case StmtKind::Case:
            if (s->name == "case") n += std::max<int>(1, s->exprs.size());
            break;
        default:
            break;
    }
    for (const auto& e : s->exprs) n += expr_decisions(e.get());
    for (const auto& c : s->stmts) n += stmt_decisions(c.get());
    return n;
}

}  // namespace

int ncloc(const java::CompilationUnitModel& unit, int start_line, int end_line) {
    if (end_line < start_line) return 0;
    auto lo = std::lower_bound(unit.token_lines.begin(), unit.token_lines.end(), start_line);
    auto hi = std::upper_bound(unit.token_lines.begin(), unit.token_lines.end(), end_line);
    return static_cast<int>(hi - lo);
}

int cyclomatic_complexity(const java::Stmt* body) { return 1 + stmt_decisions(body); }

MetricResult method_metrics(const java::CompilationUnitModel& unit,
                            const java::MethodModel& method) {
    MetricResult r;
    r.ncloc = ncloc(unit, method.start_line, method.end_line);
    r.cyclomatic_complexity = cyclomatic_complexity(method.body.get());
    return r;
}

}  // namespace hamster
