// SPDX-License-Identifier: Apache-2.0
#include "hamster/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hamster/catalog.hpp"

namespace hamster {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::string>& all_categories() {
    static const std::vector<std::string> kCategories = {
        to_string(TestCategory::UI),      to_string(TestCategory::API),
        to_string(TestCategory::Library), to_string(TestCategory::Unit),
        to_string(TestCategory::Integration), to_string(TestCategory::Unknown),
    };
    return kCategories;
}

const std::vector<std::string>& fixture_metrics() {
    static const std::vector<std::string> kMetrics = {
        "ncloc", "cyclomatic_complexity", "objects_created", "cleanup_operations", "mocks"};
    return kMetrics;
}

const std::vector<std::string>& method_metric_names() {
    static const std::vector<std::string> kMetrics = {
        "ncloc",           "cyclomatic_complexity",    "objects_created", "mocks",
        "constructor_calls", "application_calls",      "library_calls",   "assertions",
        "invocation_entities", "call_assertion_sequences", "focal_classes", "focal_methods"};
    return kMetrics;
}

// Collects metric samples and summarizes them, recording a diagnostic (and
// omitting the row) for metrics that never received a value.
class MetricTable {
  public:
    MetricTable(double trim_percent, std::vector<std::string>& diagnostics)
        : trim_percent_(trim_percent), diagnostics_(diagnostics) {}

    void add(const std::string& metric, double value) { samples_[metric].push_back(value); }

    std::map<std::string, PercentileSummary> summarize(const std::string& context,
                                                       const std::vector<std::string>& order) {
        std::map<std::string, PercentileSummary> out;
        for (const auto& metric : order) {
            auto it = samples_.find(metric);
            if (it == samples_.end() || it->second.empty()) {
                diagnostics_.push_back("skipped " + context + "/" + metric +
                                       ": no values");
                continue;
            }
            out[metric] = summarize_values(it->second);
        }
        return out;
    }

    PercentileSummary summarize_values(std::vector<double> values) const {
        if (trim_percent_ > 0 && values.size() > 1) {
            std::sort(values.begin(), values.end());
            auto drop = static_cast<size_t>(
                std::floor(static_cast<double>(values.size()) * trim_percent_ / 100.0));
            drop = std::min(drop, (values.size() - 1) / 2);
            values.assign(values.begin() + static_cast<std::ptrdiff_t>(drop),
                          values.end() - static_cast<std::ptrdiff_t>(drop));
        }
        return percentile_summary(std::move(values));
    }

  private:
    double trim_percent_;
    std::vector<std::string>& diagnostics_;
    std::map<std::string, std::vector<double>> samples_;
};

ordered_json summary_json(const PercentileSummary& p) {
    return ordered_json{{"count", p.count}, {"mean", p.mean}, {"p25", p.p25},
                        {"p50", p.p50},     {"p75", p.p75},   {"p90", p.p90}};
}

PercentileSummary summary_from(const ordered_json& j) {
    PercentileSummary p;
    p.count = j.at("count").get<std::int64_t>();
    p.mean = j.at("mean").get<double>();
    p.p25 = j.at("p25").get<double>();
    p.p50 = j.at("p50").get<double>();
    p.p75 = j.at("p75").get<double>();
    p.p90 = j.at("p90").get<double>();
    return p;
}

ordered_json split_json(const InputSplitRow& r) {
    return ordered_json{{"test_methods", r.test_methods},
                        {"mean_ncloc", r.mean_ncloc},
                        {"mean_complexity", r.mean_complexity},
                        {"mean_assertions", r.mean_assertions}};
}

InputSplitRow split_from(const ordered_json& j) {
    InputSplitRow r;
    r.test_methods = j.at("test_methods").get<std::int64_t>();
    r.mean_ncloc = j.at("mean_ncloc").get<double>();
    r.mean_complexity = j.at("mean_complexity").get<double>();
    r.mean_assertions = j.at("mean_assertions").get<double>();
    return r;
}

std::string format_number(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        return std::to_string(static_cast<long long>(v));
    }
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + path.string());
}

void append_summary_row(std::string& csv, const PercentileSummary& p) {
    csv += std::to_string(p.count) + "," + format_number(p.mean) + "," + format_number(p.p25) +
           "," + format_number(p.p50) + "," + format_number(p.p75) + "," + format_number(p.p90) +
           "\n";
}

std::string render_markdown(const CorpusSummary& s);

}  // namespace

PercentileSummary percentile_summary(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("percentile_summary: empty input");
    std::sort(values.begin(), values.end());
    auto n = values.size();
    auto at_rank = [&](double q) {
        auto rank = static_cast<size_t>(std::ceil(q * static_cast<double>(n)));
        if (rank < 1) rank = 1;
        return values[rank - 1];
    };
    PercentileSummary p;
    p.count = static_cast<std::int64_t>(n);
    p.p25 = at_rank(0.25);
    p.p50 = at_rank(0.50);
    p.p75 = at_rank(0.75);
    p.p90 = at_rank(0.90);
    double sum = 0;
    for (double v : values) sum += v;
    p.mean = sum / static_cast<double>(n);
    return p;
}

CorpusSummary aggregate(const std::vector<ProjectAnalysis>& models,
                        const AggregateOptions& options) {
    std::map<std::string, std::string> categories = options.framework_categories;
    if (categories.empty())
        for (const auto& fw : FrameworkCatalog::default_catalog().frameworks)
            categories[fw.id] = fw.category;

    CorpusSummary s;
    auto& totals = s.totals;
    totals["projects"] = static_cast<std::int64_t>(models.size());
    for (const char* key : {"test_classes", "test_methods", "fixture_methods", "test_ncloc",
                            "analysis_failures"})
        totals[key] = 0;
    for (const auto& c : all_categories()) s.scope_distribution[c];

    MetricTable overview(options.trim_percent, s.diagnostics);
    MetricTable setup_table(options.trim_percent, s.diagnostics);
    MetricTable teardown_table(options.trim_percent, s.diagnostics);
    std::map<std::string, MetricTable> per_category;
    for (const auto& c : all_categories())
        per_category.emplace(c, MetricTable(options.trim_percent, s.diagnostics));

    struct SplitAccum {
        std::int64_t n = 0;
        double ncloc = 0, complexity = 0, assertions = 0;
    } with_acc, without_acc;

    for (const auto& model : models) {
        std::int64_t project_classes = 0, project_methods = 0, project_fixtures = 0,
                     project_ncloc = 0;
        std::set<std::string> project_categories;
        for (const auto& id : model.framework_ids) {
            auto it = categories.find(id);
            project_categories.insert(it == categories.end() ? "Unknown" : it->second);
        }
        for (const auto& category : project_categories) ++s.framework_category_counts[category];
        totals["analysis_failures"] +=
            static_cast<std::int64_t>(model.analysis_failures.size());

        for (const auto& cls : model.test_classes) {
            ++project_classes;
            auto fold_fixture = [&](const FixtureAnalysis& f, MetricTable& table) {
                ++project_fixtures;
                table.add("ncloc", f.ncloc);
                table.add("cyclomatic_complexity", f.cyclomatic_complexity);
                table.add("objects_created", f.objects_created);
                table.add("cleanup_operations",
                          static_cast<double>(f.cleanup_operations.size()));
                table.add("mocks", static_cast<double>(f.mocks.size()));
            };
            for (const auto& f : cls.setup_methods) fold_fixture(f, setup_table);
            for (const auto& f : cls.teardown_methods) fold_fixture(f, teardown_table);

            for (const auto& t : cls.test_methods) {
                ++project_methods;
                project_ncloc += t.ncloc;
                ++s.scope_distribution[to_string(t.category)].count;
                ++s.focal_class_histogram[static_cast<std::int64_t>(t.focal_classes.size())];
                ++s.focal_method_histogram[static_cast<std::int64_t>(t.focal_methods.size())];

                MetricTable& table = per_category.at(to_string(t.category));
                table.add("ncloc", t.ncloc);
                table.add("cyclomatic_complexity", t.cyclomatic_complexity);
                table.add("objects_created", t.objects_created);
                table.add("mocks", static_cast<double>(t.mocks.size()));
                table.add("constructor_calls", t.constructor_calls);
                table.add("application_calls", t.application_calls);
                table.add("library_calls", t.library_calls);
                table.add("assertions", t.assertion_count);
                table.add("invocation_entities",
                          static_cast<double>(t.invocation_sequence.size()));
                table.add("call_assertion_sequences",
                          static_cast<double>(t.call_assertion_sequences.size()));
                table.add("focal_classes", static_cast<double>(t.focal_classes.size()));
                table.add("focal_methods", static_cast<double>(t.focal_methods.size()));

                SplitAccum& acc = t.structured_inputs.empty() ? without_acc : with_acc;
                ++acc.n;
                acc.ncloc += t.ncloc;
                acc.complexity += t.cyclomatic_complexity;
                acc.assertions += t.assertion_count;
            }
        }
        totals["test_classes"] += project_classes;
        totals["test_methods"] += project_methods;
        totals["fixture_methods"] += project_fixtures;
        totals["test_ncloc"] += project_ncloc;
        overview.add("test_classes", static_cast<double>(project_classes));
        overview.add("test_methods", static_cast<double>(project_methods));
        overview.add("fixture_methods", static_cast<double>(project_fixtures));
        overview.add("test_ncloc", static_cast<double>(project_ncloc));
    }

    s.overview = overview.summarize(
        "overview", {"test_classes", "test_methods", "fixture_methods", "test_ncloc"});
    auto setup_rows = setup_table.summarize("fixtures/setup", fixture_metrics());
    if (!setup_rows.empty()) s.fixture_table["setup"] = std::move(setup_rows);
    auto teardown_rows = teardown_table.summarize("fixtures/teardown", fixture_metrics());
    if (!teardown_rows.empty()) s.fixture_table["teardown"] = std::move(teardown_rows);
    for (const auto& category : all_categories()) {
        auto rows = per_category.at(category).summarize("methods/" + category,
                                                        method_metric_names());
        if (!rows.empty()) s.method_table[category] = std::move(rows);
    }

    std::int64_t total_methods = totals["test_methods"];
    for (auto& [category, slice] : s.scope_distribution)
        slice.fraction = total_methods == 0
                             ? 0.0
                             : static_cast<double>(slice.count) /
                                   static_cast<double>(total_methods);

    auto finish_split = [](const SplitAccum& acc) {
        InputSplitRow row;
        row.test_methods = acc.n;
        if (acc.n > 0) {
            row.mean_ncloc = acc.ncloc / static_cast<double>(acc.n);
            row.mean_complexity = acc.complexity / static_cast<double>(acc.n);
            row.mean_assertions = acc.assertions / static_cast<double>(acc.n);
        }
        return row;
    };
    s.with_structured_inputs = finish_split(with_acc);
    s.without_structured_inputs = finish_split(without_acc);
    return s;
}

std::string summary_to_json(const CorpusSummary& s) {
    ordered_json j;
    j["hamster_schema"] = 1;
    j["totals"] = ordered_json::object();
    for (const auto& [k, v] : s.totals) j["totals"][k] = v;
    j["overview"] = ordered_json::object();
    for (const auto& [k, v] : s.overview) j["overview"][k] = summary_json(v);
    j["framework_category_counts"] = ordered_json::object();
    for (const auto& [k, v] : s.framework_category_counts)
        j["framework_category_counts"][k] = v;
    j["scope_distribution"] = ordered_json::object();
    for (const auto& [k, v] : s.scope_distribution)
        j["scope_distribution"][k] = ordered_json{{"count", v.count}, {"fraction", v.fraction}};
    auto hist_json = [](const std::map<std::int64_t, std::int64_t>& h) {
        ordered_json out = ordered_json::object();
        for (const auto& [k, v] : h) out[std::to_string(k)] = v;
        return out;
    };
    j["focal_class_histogram"] = hist_json(s.focal_class_histogram);
    j["focal_method_histogram"] = hist_json(s.focal_method_histogram);
    j["fixture_table"] = ordered_json::object();
    for (const auto& [kind, metrics] : s.fixture_table) {
        ordered_json rows = ordered_json::object();
        for (const auto& [metric, p] : metrics) rows[metric] = summary_json(p);
        j["fixture_table"][kind] = std::move(rows);
    }
    j["method_table"] = ordered_json::object();
    for (const auto& [category, metrics] : s.method_table) {
        ordered_json rows = ordered_json::object();
        for (const auto& [metric, p] : metrics) rows[metric] = summary_json(p);
        j["method_table"][category] = std::move(rows);
    }
    j["structured_input_split"] =
        ordered_json{{"with", split_json(s.with_structured_inputs)},
                     {"without", split_json(s.without_structured_inputs)}};
    j["diagnostics"] = s.diagnostics;
    return j.dump(2) + "\n";
}

CorpusSummary summary_from_json(const std::string& document) {
    ordered_json j;
    try {
        j = ordered_json::parse(document);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("summary: invalid JSON: ") + e.what());
    }
    try {
        if (j.at("hamster_schema").get<int>() != 1)
            throw SchemaError("summary/hamster_schema: unsupported version");
        CorpusSummary s;
        for (const auto& [k, v] : j.at("totals").items())
            s.totals[k] = v.get<std::int64_t>();
        for (const auto& [k, v] : j.at("overview").items()) s.overview[k] = summary_from(v);
        for (const auto& [k, v] : j.at("framework_category_counts").items())
            s.framework_category_counts[k] = v.get<std::int64_t>();
        for (const auto& [k, v] : j.at("scope_distribution").items())
            s.scope_distribution[k] = {v.at("count").get<std::int64_t>(),
                                       v.at("fraction").get<double>()};
        for (const auto& [k, v] : j.at("focal_class_histogram").items())
            s.focal_class_histogram[std::stoll(k)] = v.get<std::int64_t>();
        for (const auto& [k, v] : j.at("focal_method_histogram").items())
            s.focal_method_histogram[std::stoll(k)] = v.get<std::int64_t>();
        for (const auto& [kind, rows] : j.at("fixture_table").items())
            for (const auto& [metric, p] : rows.items())
                s.fixture_table[kind][metric] = summary_from(p);
        for (const auto& [category, rows] : j.at("method_table").items())
            for (const auto& [metric, p] : rows.items())
                s.method_table[category][metric] = summary_from(p);
        s.with_structured_inputs = split_from(j.at("structured_input_split").at("with"));
        s.without_structured_inputs = split_from(j.at("structured_input_split").at("without"));
        for (const auto& d : j.at("diagnostics")) s.diagnostics.push_back(d.get<std::string>());
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("summary: ") + e.what());
    }
}

namespace {

std::string render_markdown(const CorpusSummary& s) {
    std::ostringstream md;
    md << "# Corpus report\n\n";
    md << "## Totals\n\n| Metric | Value |\n|---|---|\n";
    for (const auto& [k, v] : s.totals) md << "| " << k << " | " << v << " |\n";

    auto table_header = [&](const std::string& first) {
        md << "| " << first << " | Count | Mean | P25 | P50 | P75 | P90 |\n";
        md << "|---|---|---|---|---|---|---|\n";
    };
    auto table_row = [&](const std::string& label, const PercentileSummary& p) {
        md << "| " << label << " | " << p.count << " | " << format_number(p.mean) << " | "
           << format_number(p.p25) << " | " << format_number(p.p50) << " | "
           << format_number(p.p75) << " | " << format_number(p.p90) << " |\n";
    };

    md << "\n## Per-project overview\n\n";
    table_header("Metric");
    for (const auto& [k, p] : s.overview) table_row(k, p);

    md << "\n## Frameworks (projects per category)\n\n| Category | Projects |\n|---|---|\n";
    for (const auto& [k, v] : s.framework_category_counts) md << "| " << k << " | " << v << " |\n";

    md << "\n## Test scope distribution\n\n| Category | Count | Fraction |\n|---|---|---|\n";
    for (const auto& category : all_categories()) {
        const auto& slice = s.scope_distribution.at(category);
        md << "| " << category << " | " << slice.count << " | " << format_number(slice.fraction)
           << " |\n";
    }

    md << "\n## Test fixtures\n\n";
    for (const auto& [kind, rows] : s.fixture_table) {
        md << "### " << kind << "\n\n";
        table_header("Metric");
        for (const auto& metric : fixture_metrics()) {
            auto it = rows.find(metric);
            if (it != rows.end()) table_row(metric, it->second);
        }
        md << "\n";
    }

    md << "## Test methods by category\n\n";
    for (const auto& [category, rows] : s.method_table) {
        md << "### " << category << "\n\n";
        table_header("Metric");
        for (const auto& metric : method_metric_names()) {
            auto it = rows.find(metric);
            if (it != rows.end()) table_row(metric, it->second);
        }
        md << "\n";
    }

    md << "## Structured inputs\n\n";
    md << "| Split | Test methods | Mean NCLOC | Mean complexity | Mean assertions |\n";
    md << "|---|---|---|---|---|\n";
    auto split_row = [&](const std::string& label, const InputSplitRow& r) {
        md << "| " << label << " | " << r.test_methods << " | " << format_number(r.mean_ncloc)
           << " | " << format_number(r.mean_complexity) << " | "
           << format_number(r.mean_assertions) << " |\n";
    };
    split_row("with", s.with_structured_inputs);
    split_row("without", s.without_structured_inputs);

    if (!s.diagnostics.empty()) {
        md << "\n## Diagnostics\n\n";
        for (const auto& d : s.diagnostics) md << "- " << d << "\n";
    }
    return md.str();
}

}  // namespace

void emit_report(const CorpusSummary& s, ReportFormat format, const std::string& out_dir) {
    std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

    bool json = format == ReportFormat::Json || format == ReportFormat::All;
    bool csv = format == ReportFormat::Csv || format == ReportFormat::All;
    bool markdown = format == ReportFormat::Markdown || format == ReportFormat::All;

    if (json) write_file(dir / "summary.json", summary_to_json(s));

    if (csv) {
        std::string table1 = "metric,count,mean,p25,p50,p75,p90\n";
        for (const auto& [k, p] : s.overview) {
            table1 += k + ",";
            append_summary_row(table1, p);
        }
        write_file(dir / "table1.csv", table1);

        std::string table2 = "kind,metric,count,mean,p25,p50,p75,p90\n";
        for (const auto& [kind, rows] : s.fixture_table)
            for (const auto& metric : fixture_metrics()) {
                auto it = rows.find(metric);
                if (it == rows.end()) continue;
                table2 += kind + "," + metric + ",";
                append_summary_row(table2, it->second);
            }
        write_file(dir / "table2_fixtures.csv", table2);

        std::string table3 = "category,metric,count,mean,p25,p50,p75,p90\n";
        for (const auto& [category, rows] : s.method_table)
            for (const auto& metric : method_metric_names()) {
                auto it = rows.find(metric);
                if (it == rows.end()) continue;
                table3 += category + "," + metric + ",";
                append_summary_row(table3, it->second);
            }
        write_file(dir / "table3_methods.csv", table3);

        std::string scope = "category,count,fraction\n";
        for (const auto& category : all_categories()) {
            const auto& slice = s.scope_distribution.at(category);
            scope += category + "," + std::to_string(slice.count) + "," +
                     format_number(slice.fraction) + "\n";
        }
        write_file(dir / "scope_distribution.csv", scope);

        std::string frameworks = "category,projects\n";
        for (const auto& [k, v] : s.framework_category_counts)
            frameworks += k + "," + std::to_string(v) + "\n";
        write_file(dir / "frameworks.csv", frameworks);
    }

    if (markdown) write_file(dir / "report.md", render_markdown(s));
}

}  // namespace hamster
