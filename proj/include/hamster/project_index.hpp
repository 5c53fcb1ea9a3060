// SPDX-License-Identifier: Apache-2.0
//
// Whole-project view over parsed compilation units: type index, best-effort
// name resolution, and the inheritance graph used by fixture and test
// detection.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hamster/java_ast.hpp"
#include "hamster/model.hpp"

namespace hamster {

enum class Resolution { Explicit, SamePackage, JavaLangDefault, ProjectIndex, Unresolved };

struct ResolvedTypeRef {
    std::string simple_name;
    std::optional<std::string> fqn;
    Resolution resolution = Resolution::Unresolved;

    TypeRef to_type_ref() const {
        TypeRef t;
        t.name = simple_name;
        if (fqn) {
            t.fqn = *fqn;
            t.resolved = true;
        }
        return t;
    }
};

struct TypeInfo {
    const java::TypeDeclModel* decl = nullptr;
    const java::CompilationUnitModel* unit = nullptr;
    bool in_test_path = false;
};

struct ParentLink {
    TypeRef parent;       // resolved iff the parent's fqn is known
    bool is_project = false;
};

struct InheritanceGraph {
    std::map<std::string, ParentLink> parent_of;  // child fqn -> parent
    std::vector<std::string> diagnostics;

    // Nearest-first chain of parents; ends at the first external parent
    // (java.lang.Object marker when no superclass is declared).
    std::vector<TypeRef> chain(const std::string& fqn) const;

    // True when `fqn` transitively extends a type whose fqn equals
    // `target_fqn` or whose simple name equals `target_simple`.
    bool extends(const std::string& fqn, const std::string& target_fqn,
                 const std::string& target_simple) const;
};

struct ProjectModel {
    std::vector<java::CompilationUnitModel> units;
    std::map<std::string, TypeInfo> types;                       // fqn -> info
    std::map<std::string, std::vector<std::string>> by_simple;   // simple -> fqns
    std::vector<AnalysisFailure> failures;
    InheritanceGraph inheritance;

    bool has_type(const std::string& fqn) const { return types.count(fqn) != 0; }
};

// Resolution priority: explicit import > same-package project type >
// java.lang > unique project-index match. Wildcard-only candidates and
// ambiguity yield Unresolved.
ResolvedTypeRef resolve_type(const std::string& simple_name,
                             const java::CompilationUnitModel& unit,
                             const ProjectModel& project);

// Resolves a possibly-qualified raw type text (generics erased first).
ResolvedTypeRef resolve_type_text(const std::string& type_text,
                                  const java::CompilationUnitModel& unit,
                                  const ProjectModel& project);

InheritanceGraph build_inheritance_graph(ProjectModel& project);

// True when the path contains a `test` or `tests` segment.
bool is_test_path(const std::string& path);

struct IndexOptions {
    std::vector<std::string> ignore_globs = {"**/target/**", "**/build/**",
                                             "**/generated-sources/**", "**/generated/**"};
};

// Walks *.java under root, parses every file, builds the type index and
// inheritance graph. Per-file failures are recorded, never fatal; a missing
// root throws std::runtime_error.
ProjectModel index_project(const std::string& root, const IndexOptions& options = {});

// Assembles a ProjectModel from already-parsed units (type index, failures
// for units with parse errors, inheritance graph). index_project delegates
// here after walking the filesystem.
ProjectModel build_project_model(std::vector<java::CompilationUnitModel> units);

// Minimal ** / * glob matcher over '/'-separated paths.
bool glob_match(const std::string& pattern, const std::string& path);

}  // namespace hamster
