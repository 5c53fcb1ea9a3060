// SPDX-License-Identifier: Apache-2.0
//
// Corpus-level aggregation over per-project analyses and deterministic
// report emission (JSON summary, CSV tables, markdown digest).
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hamster/model.hpp"

namespace hamster {

// Nearest-rank percentiles: p_q is the value at 1-based index ceil(q*n) of
// the sorted input. Throws std::invalid_argument on empty input.
PercentileSummary percentile_summary(std::vector<double> values);

struct InputSplitRow {
    std::int64_t test_methods = 0;
    double mean_ncloc = 0;
    double mean_complexity = 0;
    double mean_assertions = 0;
};

struct CorpusSummary {
    std::map<std::string, std::int64_t> totals;
    // per-project distributions of corpus-overview metrics
    std::map<std::string, PercentileSummary> overview;
    std::map<std::string, std::int64_t> framework_category_counts;  // once per project
    struct ScopeSlice {
        std::int64_t count = 0;
        double fraction = 0;
    };
    std::map<std::string, ScopeSlice> scope_distribution;  // all six categories
    std::map<std::int64_t, std::int64_t> focal_class_histogram;
    std::map<std::int64_t, std::int64_t> focal_method_histogram;
    // kind ("setup"/"teardown") -> metric -> summary
    std::map<std::string, std::map<std::string, PercentileSummary>> fixture_table;
    // test category -> metric -> summary
    std::map<std::string, std::map<std::string, PercentileSummary>> method_table;
    InputSplitRow with_structured_inputs;
    InputSplitRow without_structured_inputs;
    std::vector<std::string> diagnostics;  // skipped rows (empty metric inputs)
};

struct AggregateOptions {
    // Percent of values trimmed from each tail before summarizing a metric.
    double trim_percent = 0;
    // framework id -> category; the default catalog's mapping when empty.
    std::map<std::string, std::string> framework_categories;
};

// Sequential fold over project analyses; permutation-invariant, and totals
// are additive across disjoint model partitions.
CorpusSummary aggregate(const std::vector<ProjectAnalysis>& models,
                        const AggregateOptions& options = {});

std::string summary_to_json(const CorpusSummary& summary);
CorpusSummary summary_from_json(const std::string& document);

enum class ReportFormat { Json, Csv, Markdown, All };

// Writes summary.json / table1.csv / table2_fixtures.csv / table3_methods.csv
// / scope_distribution.csv / frameworks.csv / report.md under out_dir,
// restricted to the chosen format family. Deterministic bytes. Throws
// std::runtime_error on I/O failure.
void emit_report(const CorpusSummary& summary, ReportFormat format,
                 const std::string& out_dir);

}  // namespace hamster
