// SPDX-License-Identifier: Apache-2.0
#include "hamster/input_analyzer.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <string>

namespace hamster {

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

bool is_sql_literal(const std::string& text) {
    static const std::set<std::string> kKeywords = {
        "select", "insert", "update", "delete", "upsert",
        "create", "drop",   "alter",  "merge",
    };
    size_t b = text.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return false;
    size_t e = b;
    while (e < text.size() && std::isalpha(static_cast<unsigned char>(text[e]))) ++e;
    return kKeywords.count(lower(text.substr(b, e - b))) > 0;
}

// A path-like literal: no whitespace, ends with a known data extension.
std::optional<InputFormat> path_format(const std::string& text,
                                       const FrameworkCatalog& catalog) {
    if (text.empty()) return std::nullopt;
    if (text.find_first_of(" \t\r\n") != std::string::npos) return std::nullopt;
    auto dot = text.rfind('.');
    if (dot == std::string::npos || dot == 0) return std::nullopt;
    auto it = catalog.extension_map.find(lower(text.substr(dot)));
    if (it == catalog.extension_map.end()) return std::nullopt;
    return it->second;
}

SourcePosition to_position(const java::Pos& p) { return SourcePosition{p.line, p.column}; }

std::optional<InputFormat> api_format(const LinearEntity& le, const FrameworkCatalog& catalog) {
    if (le.entity.kind == EntityKind::MethodCall) {
        auto it = catalog.input_api_methods.find(le.entity.method_name);
        if (it != catalog.input_api_methods.end()) return it->second;
        return std::nullopt;
    }
    if (le.entity.kind == EntityKind::ConstructorCall) {
        for (const auto& [name, fmt] : catalog.input_ctor_types)
            if (le.entity.receiver_type.name == name) return fmt;
    }
    return std::nullopt;
}

}  // namespace

std::vector<StructuredInputUse> detect_structured_inputs(const BodySequence& seq,
                                                         const FrameworkCatalog& catalog) {
    std::vector<StructuredInputUse> out;
    std::set<std::pair<int, int>> covered_literals;  // positions explained by an API call

    for (const auto& le : seq.entities) {
        auto fmt = api_format(le, catalog);
        if (!fmt) continue;
        // "non-trivial text": a call whose only literal argument is blank is
        // not evidence of a structured input
        bool all_blank = !le.literal_string_args.empty();
        for (const auto& [pos, text] : le.literal_string_args)
            if (text.find_first_not_of(" \t\r\n") != std::string::npos) all_blank = false;
        if (all_blank) continue;

        out.push_back(StructuredInputUse{*fmt, InputEvidence::ApiCall, le.site,
                                         le.entity.source_position});
        // the API-implied format outranks extension mapping of its direct
        // arguments, except that classpath loaders leave room for the loaded
        // file's own format to surface as a second signal
        if (*fmt != InputFormat::ClasspathResource)
            for (const auto& [pos, text] : le.literal_string_args)
                covered_literals.insert({pos.line, pos.column});
    }

    for (const auto& lit : seq.string_literals) {
        if (covered_literals.count({lit.pos.line, lit.pos.column})) continue;
        std::optional<InputFormat> fmt;
        if (is_sql_literal(lit.text))
            fmt = InputFormat::SQL;
        else
            fmt = path_format(lit.text, catalog);
        if (!fmt) continue;
        out.push_back(
            StructuredInputUse{*fmt, InputEvidence::LiteralPath, lit.site, to_position(lit.pos)});
    }

    std::sort(out.begin(), out.end(),
              [](const StructuredInputUse& a, const StructuredInputUse& b) {
                  return std::tie(a.source_position, a.format, a.evidence, a.site) <
                         std::tie(b.source_position, b.format, b.evidence, b.site);
              });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace hamster
