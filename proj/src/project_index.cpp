// SPDX-License-Identifier: Apache-2.0
#include "hamster/project_index.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_set>

namespace hamster {

namespace fs = std::filesystem;

namespace {

const std::unordered_set<std::string> kJavaLangTypes = {
    "Object", "String", "StringBuilder", "StringBuffer", "CharSequence", "Class",
    "Integer", "Long", "Short", "Byte", "Character", "Boolean", "Double", "Float",
    "Number", "Void", "Math", "System", "Thread", "Runnable", "ThreadLocal", "Iterable",
    "Comparable", "Cloneable", "AutoCloseable", "Enum", "Record", "Process",
    "ProcessBuilder", "ClassLoader", "Runtime", "Throwable", "Exception", "Error",
    "RuntimeException", "IllegalArgumentException", "IllegalStateException",
    "NullPointerException", "IndexOutOfBoundsException", "ArrayIndexOutOfBoundsException",
    "UnsupportedOperationException", "ArithmeticException", "ClassCastException",
    "NumberFormatException", "InterruptedException", "OutOfMemoryError",
    "StackOverflowError", "AssertionError", "Override", "Deprecated", "SuppressWarnings",
    "FunctionalInterface", "SafeVarargs",
};

void register_types(const java::TypeDeclModel& decl, const java::CompilationUnitModel& unit,
                    bool test_path, ProjectModel& project) {
    project.types[decl.qualified_name] = TypeInfo{&decl, &unit, test_path};
    project.by_simple[decl.simple_name].push_back(decl.qualified_name);
    for (const auto& nested : decl.nested) register_types(nested, unit, test_path, project);
}

std::string last_segment(const std::string& dotted) {
    auto d = dotted.rfind('.');
    return d == std::string::npos ? dotted : dotted.substr(d + 1);
}

}  // namespace

bool glob_match(const std::string& pattern, const std::string& path) {
    // recursive matcher; '**' spans segments, '*' stays within one
    std::function<bool(size_t, size_t)> go = [&](size_t pi, size_t si) -> bool {
        while (pi < pattern.size()) {
            if (pattern.compare(pi, 3, "**/") == 0 || pattern.compare(pi, 2, "**") == 0) {
                size_t skip = pattern.compare(pi, 3, "**/") == 0 ? 3 : 2;
                // try each segment start, plus the end of the path
                for (size_t k = si;;) {
                    if (go(pi + skip, k)) return true;
                    if (k >= path.size()) return false;
                    while (k < path.size() && path[k] != '/') ++k;
                    if (k < path.size()) ++k;
                }
            }
            if (pattern[pi] == '*') {
                for (size_t k = si; k <= path.size() && (k == si || path[k - 1] != '/'); ++k)
                    if (go(pi + 1, k)) return true;
                return false;
            }
            if (si >= path.size() || pattern[pi] != path[si]) return false;
            ++pi;
            ++si;
        }
        return si == path.size();
    };
    return go(0, 0);
}

bool is_test_path(const std::string& path) {
    std::string seg;
    for (size_t i = 0; i <= path.size(); ++i) {
        if (i == path.size() || path[i] == '/' || path[i] == '\\') {
            if (seg == "test" || seg == "tests") return true;
            seg.clear();
        } else {
            seg += static_cast<char>(std::tolower(static_cast<unsigned char>(path[i])));
        }
    }
    return false;
}

ResolvedTypeRef resolve_type(const std::string& simple_name,
                             const java::CompilationUnitModel& unit,
                             const ProjectModel& project) {
    ResolvedTypeRef out;
    out.simple_name = simple_name;
    if (simple_name.empty()) return out;

    for (const auto& imp : unit.imports) {
        if (imp.is_static || imp.is_wildcard) continue;
        if (last_segment(imp.path) == simple_name) {
            out.fqn = imp.path;
            out.resolution = Resolution::Explicit;
            return out;
        }
    }
    std::string same_pkg =
        unit.package_name.empty() ? simple_name : unit.package_name + "." + simple_name;
    if (project.has_type(same_pkg)) {
        out.fqn = same_pkg;
        out.resolution = Resolution::SamePackage;
        return out;
    }
    if (kJavaLangTypes.count(simple_name)) {
        out.fqn = "java.lang." + simple_name;
        out.resolution = Resolution::JavaLangDefault;
        return out;
    }
    auto it = project.by_simple.find(simple_name);
    if (it != project.by_simple.end()) {
        std::set<std::string> unique(it->second.begin(), it->second.end());
        if (unique.size() == 1) {
            out.fqn = *unique.begin();
            out.resolution = Resolution::ProjectIndex;
            return out;
        }
    }
    return out;
}

ResolvedTypeRef resolve_type_text(const std::string& type_text,
                                  const java::CompilationUnitModel& unit,
                                  const ProjectModel& project) {
    std::string erased = java::erase_generics(type_text);
    if (auto b = erased.find('['); b != std::string::npos) erased = erased.substr(0, b);
    if (erased.find('.') == std::string::npos) return resolve_type(erased, unit, project);

    ResolvedTypeRef out;
    out.simple_name = last_segment(erased);
    // dotted name: project fqn, '$'-nested project type, or taken as written
    if (project.has_type(erased)) {
        out.fqn = erased;
        out.resolution = Resolution::ProjectIndex;
        return out;
    }
    std::string dollar = erased;
    if (auto d = dollar.rfind('.'); d != std::string::npos) {
        dollar[d] = '$';
        if (project.has_type(dollar)) {
            out.fqn = dollar;
            out.resolution = Resolution::ProjectIndex;
            return out;
        }
    }
    // qualified external name (e.g. java.util.List): keep as written when it
    // starts lowercase, the Java package convention
    if (std::islower(static_cast<unsigned char>(erased[0]))) {
        out.fqn = erased;
        out.resolution = Resolution::Explicit;
        return out;
    }
    // Outer.Inner where Outer resolves
    std::string outer = erased.substr(0, erased.find('.'));
    std::string rest = erased.substr(erased.find('.') + 1);
    auto outer_ref = resolve_type(outer, unit, project);
    if (outer_ref.fqn) {
        std::string nested_rest = rest;
        std::replace(nested_rest.begin(), nested_rest.end(), '.', '$');
        if (project.has_type(*outer_ref.fqn + "$" + nested_rest)) {
            out.fqn = *outer_ref.fqn + "$" + nested_rest;
            out.resolution = Resolution::ProjectIndex;
            return out;
        }
        out.fqn = *outer_ref.fqn + "." + rest;
        out.resolution = outer_ref.resolution;
        return out;
    }
    return out;
}

std::vector<TypeRef> InheritanceGraph::chain(const std::string& fqn) const {
    std::vector<TypeRef> out;
    std::set<std::string> seen{fqn};
    std::string cur = fqn;
    while (true) {
        auto it = parent_of.find(cur);
        if (it == parent_of.end()) break;
        out.push_back(it->second.parent);
        if (!it->second.is_project) break;
        cur = it->second.parent.fqn;
        if (!seen.insert(cur).second) break;  // cycle already diagnosed at build time
    }
    return out;
}

bool InheritanceGraph::extends(const std::string& fqn, const std::string& target_fqn,
                               const std::string& target_simple) const {
    for (const auto& p : chain(fqn)) {
        if (p.resolved && p.fqn == target_fqn) return true;
        if (!p.resolved && !target_simple.empty() && p.name == target_simple) return true;
    }
    return false;
}

InheritanceGraph build_inheritance_graph(ProjectModel& project) {
    InheritanceGraph g;
    for (const auto& [fqn, info] : project.types) {
        ParentLink link;
        if (info.decl->superclass.empty()) {
            link.parent = TypeRef{"Object", "java.lang.Object", true};
            link.is_project = false;
        } else {
            auto ref = resolve_type_text(info.decl->superclass, *info.unit, project);
            link.parent = ref.to_type_ref();
            link.is_project = ref.fqn && project.has_type(*ref.fqn);
        }
        g.parent_of[fqn] = std::move(link);
    }
    // break cycles: drop the edge that closes a loop
    for (const auto& [fqn, _] : project.types) {
        std::set<std::string> seen{fqn};
        std::string cur = fqn;
        while (true) {
            auto it = g.parent_of.find(cur);
            if (it == g.parent_of.end() || !it->second.is_project) break;
            const std::string next = it->second.parent.fqn;
            if (!seen.insert(next).second) {
                g.diagnostics.push_back("inheritance cycle broken at edge " + cur + " -> " +
                                        next);
                it->second.is_project = false;
                it->second.parent.resolved = false;
                it->second.parent.fqn.clear();
                break;
            }
            cur = next;
        }
    }
    return g;
}

ProjectModel build_project_model(std::vector<java::CompilationUnitModel> units) {
    ProjectModel project;
    project.units = std::move(units);
    for (const auto& unit : project.units)
        if (!unit.parse_errors.empty())
            project.failures.push_back(
                {unit.source_path,
                 "parse errors (" + std::to_string(unit.parse_errors.size()) +
                     "): " + unit.parse_errors.front().message});
    for (const auto& unit : project.units) {
        bool test_path = is_test_path(unit.source_path);
        for (const auto& decl : unit.type_decls)
            register_types(decl, unit, test_path, project);
    }
    project.inheritance = build_inheritance_graph(project);
    return project;
}

ProjectModel index_project(const std::string& root, const IndexOptions& options) {
    if (!fs::exists(root) || !fs::is_directory(root))
        throw std::runtime_error("project root does not exist: " + root);

    ProjectModel project;
    std::vector<fs::path> files;
    std::error_code ec;
    for (fs::recursive_directory_iterator it(root, ec), end; it != end; it.increment(ec)) {
        if (ec) break;
        if (!it->is_regular_file()) continue;
        if (it->path().extension() != ".java") continue;
        std::string rel = fs::relative(it->path(), root).generic_string();
        bool ignored = false;
        for (const auto& glob : options.ignore_globs)
            if (glob_match(glob, rel)) {
                ignored = true;
                break;
            }
        if (!ignored) files.push_back(it->path());
    }
    std::sort(files.begin(), files.end());

    std::vector<AnalysisFailure> io_failures;
    std::vector<java::CompilationUnitModel> units;
    for (const auto& file : files) {
        std::string rel = fs::relative(file, root).generic_string();
        std::ifstream in(file, std::ios::binary);
        if (!in) {
            io_failures.push_back({rel, "unreadable file"});
            continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        units.push_back(java::parse_source(buf.str(), rel));
    }
    project = build_project_model(std::move(units));
    project.failures.insert(project.failures.end(), io_failures.begin(), io_failures.end());
    std::sort(project.failures.begin(), project.failures.end());
    return project;
}

}  // namespace hamster
