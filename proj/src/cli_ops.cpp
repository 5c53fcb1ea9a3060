// SPDX-License-Identifier: Apache-2.0
#include "hamster/cli_ops.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "hamster/analyzer.hpp"
#include "hamster/catalog.hpp"
#include "hamster/report.hpp"

namespace hamster {

namespace {

namespace fs = std::filesystem;

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonFlags {
    std::string catalog_path;
    std::vector<std::string> ignore_globs;
    std::string out;
    int parallelism = 1;
    ReportFormat format = ReportFormat::All;
    double trim_percent = 0;
    std::string name;
    std::vector<std::string> positionals;
};

CommonFlags parse_flags(const std::vector<std::string>& args, size_t first) {
    CommonFlags f;
    auto need_value = [&](size_t& i, const std::string& flag) -> const std::string& {
        if (i + 1 >= args.size()) throw CliError(flag + " requires a value");
        return args[++i];
    };
    for (size_t i = first; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--catalog") {
            f.catalog_path = need_value(i, a);
        } else if (a == "--ignore") {
            f.ignore_globs.push_back(need_value(i, a));
        } else if (a == "--out") {
            f.out = need_value(i, a);
        } else if (a == "--name") {
            f.name = need_value(i, a);
        } else if (a == "--parallelism") {
            f.parallelism = std::stoi(need_value(i, a));
            if (f.parallelism < 1) throw CliError("--parallelism must be >= 1");
        } else if (a == "--trim-percent") {
            f.trim_percent = std::stod(need_value(i, a));
            if (f.trim_percent < 0 || f.trim_percent >= 50)
                throw CliError("--trim-percent must be in [0, 50)");
        } else if (a == "--format") {
            const std::string& v = need_value(i, a);
            if (v == "json") f.format = ReportFormat::Json;
            else if (v == "csv") f.format = ReportFormat::Csv;
            else if (v == "md") f.format = ReportFormat::Markdown;
            else throw CliError("--format must be json|csv|md");
        } else if (!a.empty() && a[0] == '-') {
            throw CliError("unknown flag: " + a);
        } else {
            f.positionals.push_back(a);
        }
    }
    return f;
}

AnalyzeOptions analyze_options(const CommonFlags& f) {
    AnalyzeOptions options;
    if (!f.ignore_globs.empty()) options.ignore_globs = f.ignore_globs;
    return options;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError("cannot write " + path.string());
    out << content;
    if (!out.flush()) throw CliError("write failed for " + path.string());
}

int cmd_analyze(const CommonFlags& f, std::ostream& out, std::ostream& err) {
    if (f.positionals.size() != 1) throw CliError("usage: hamster analyze <path> [flags]");
    const std::string& root = f.positionals[0];
    auto catalog = FrameworkCatalog::load(f.catalog_path);
    std::string name = f.name.empty() ? fs::path(root).filename().string() : f.name;
    if (name.empty()) name = root;

    ProjectAnalysis analysis = analyze_project(root, name, catalog, analyze_options(f));
    std::string document = serialize_model(analysis);
    if (f.out.empty())
        out << document;
    else
        write_file(f.out, document);
    for (const auto& failure : analysis.analysis_failures)
        err << "warning: " << failure.path << ": " << failure.reason << "\n";
    return analysis.analysis_failures.empty() ? 0 : 2;
}

struct ManifestEntry {
    std::string name;
    std::string path;
};

// Manifest: either JSON ({"projects": {name: path, ...}, "ignore": [...],
// "catalog": "..."}) or plain text with one `name path` pair per line.
std::vector<ManifestEntry> load_manifest(const std::string& path, CommonFlags& flags) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError("cannot read manifest " + path);
    std::string text((std::istreambuf_iterator<char>(in)), {});

    std::vector<ManifestEntry> entries;
    auto body_start = text.find_first_not_of(" \t\r\n");
    if (body_start != std::string::npos && text[body_start] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw CliError("invalid manifest JSON: " + std::string(e.what()));
        }
        if (!j.contains("projects") || !j.at("projects").is_object())
            throw CliError("manifest: missing \"projects\" object");
        for (const auto& [name, p] : j.at("projects").items())
            entries.push_back({name, p.get<std::string>()});
        if (j.contains("ignore") && flags.ignore_globs.empty())
            for (const auto& g : j.at("ignore"))
                flags.ignore_globs.push_back(g.get<std::string>());
        if (j.contains("catalog") && flags.catalog_path.empty())
            flags.catalog_path = j.at("catalog").get<std::string>();
    } else {
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            std::istringstream fields(line);
            ManifestEntry e;
            if (!(fields >> e.name >> e.path)) continue;  // blank line
            entries.push_back(std::move(e));
        }
    }

    if (entries.empty()) throw CliError("manifest lists no projects");
    std::map<std::string, int> seen;
    for (const auto& e : entries)
        if (++seen[e.name] > 1) throw CliError("duplicate project name: " + e.name);
    // a missing project path is a per-project failure (logged, exit 2),
    // not a manifest error: one bad entry must not abort the corpus
    return entries;
}

int cmd_corpus(CommonFlags f, std::ostream& /*out*/, std::ostream& err) {
    if (f.positionals.size() != 1) throw CliError("usage: hamster corpus <manifest> [flags]");
    if (f.out.empty()) throw CliError("corpus requires --out <dir>");
    auto entries = load_manifest(f.positionals[0], f);
    auto catalog = FrameworkCatalog::load(f.catalog_path);
    auto options = analyze_options(f);

    fs::path out_dir(f.out);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw CliError("cannot create " + out_dir.string() + ": " + ec.message());

    struct Outcome {
        bool fatal = false;
        bool partial = false;
        std::string message;  // fatal reason or partial summary
    };
    std::vector<Outcome> outcomes(entries.size());
    std::atomic<size_t> next{0};
    std::mutex log_mutex;

    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < entries.size(); i = next.fetch_add(1)) {
            const auto& entry = entries[i];
            Outcome& result = outcomes[i];
            try {
                ProjectAnalysis analysis =
                    analyze_project(entry.path, entry.name, catalog, options);
                write_file(out_dir / (entry.name + ".json"), serialize_model(analysis));
                if (!analysis.analysis_failures.empty()) {
                    result.partial = true;
                    result.message = std::to_string(analysis.analysis_failures.size()) +
                                     " file(s) failed analysis";
                }
            } catch (const std::exception& e) {
                result.fatal = true;
                result.message = e.what();
            }
            std::lock_guard<std::mutex> lock(log_mutex);
            err << "analyzed " << entry.name << (result.fatal ? " (failed)" : "") << "\n";
        }
    };
    size_t threads = std::min<size_t>(static_cast<size_t>(f.parallelism), entries.size());
    std::vector<std::thread> pool;
    for (size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    // failure log ordered by project name, regardless of completion order
    std::vector<size_t> order(entries.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return entries[a].name < entries[b].name; });
    std::string log;
    bool any_problem = false;
    for (size_t i : order) {
        const auto& result = outcomes[i];
        if (result.fatal) {
            log += entries[i].name + ": FAILED: " + result.message + "\n";
            any_problem = true;
        } else if (result.partial) {
            log += entries[i].name + ": partial: " + result.message + "\n";
            any_problem = true;
        }
    }
    write_file(out_dir / "failures.log", log);
    return any_problem ? 2 : 0;
}

int cmd_report(const CommonFlags& f, std::ostream& /*out*/, std::ostream& err) {
    if (f.positionals.size() != 1) throw CliError("usage: hamster report <models-dir> [flags]");
    if (f.out.empty()) throw CliError("report requires --out <dir>");
    fs::path models_dir(f.positionals[0]);
    if (!fs::is_directory(models_dir))
        throw CliError("model directory does not exist: " + models_dir.string());

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(models_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<ProjectAnalysis> models;
    bool skipped = false;
    for (const auto& file : files) {
        std::ifstream in(file, std::ios::binary);
        std::string text((std::istreambuf_iterator<char>(in)), {});
        try {
            models.push_back(deserialize_model(text));
        } catch (const std::exception& e) {
            err << "warning: skipping " << file.string() << ": " << e.what() << "\n";
            skipped = true;
        }
    }
    if (models.empty()) throw CliError("no valid model documents in " + models_dir.string());

    AggregateOptions options;
    options.trim_percent = f.trim_percent;
    for (const auto& fw : FrameworkCatalog::load(f.catalog_path).frameworks)
        options.framework_categories[fw.id] = fw.category;
    emit_report(aggregate(models, options), f.format, f.out);
    return skipped ? 2 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        if (args.empty())
            throw CliError("usage: hamster <analyze|corpus|report> [args] [flags]");
        const std::string& command = args[0];
        CommonFlags flags = parse_flags(args, 1);
        if (command == "analyze") return cmd_analyze(flags, out, err);
        if (command == "corpus") return cmd_corpus(std::move(flags), out, err);
        if (command == "report") return cmd_report(flags, out, err);
        throw CliError("unknown command: " + command);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hamster
