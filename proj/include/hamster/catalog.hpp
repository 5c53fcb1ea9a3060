// SPDX-License-Identifier: Apache-2.0
//
// Externalized knowledge base: framework packages per category, assertion
// taxonomy, mock signatures, cleanup names, resource libraries, UI/API
// receivers, application-type markers, and structured-input signals.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "hamster/model.hpp"

namespace hamster {

struct FrameworkCatalog {
    struct Framework {
        std::string id;
        std::string category;  // Core, Assertion, Mocking, Android, API, UI, BDD
        std::vector<std::string> prefixes;
    };

    std::vector<Framework> frameworks;

    std::vector<std::string> assertion_receivers;  // class/package prefixes
    std::map<std::string, AssertionCategory> assertion_methods;
    std::map<std::string, AssertionCategory> chain_methods;  // fluent assertThat chains

    std::map<std::string, std::string> mock_methods;      // call name -> framework id
    std::map<std::string, std::string> mock_annotations;  // annotation -> framework id
    std::map<std::string, std::string> mock_receiver_frameworks;  // receiver class -> id

    std::vector<std::string> cleanup_names;
    std::vector<std::pair<std::string, ResourceKind>> resource_libraries;  // prefix -> kind

    std::map<std::string, std::vector<std::string>> app_type_markers;  // type name -> prefixes
    std::vector<std::string> ui_receivers;
    std::vector<std::string> api_receivers;

    std::map<std::string, InputFormat> extension_map;      // ".json" -> JSON
    std::map<std::string, InputFormat> input_api_methods;  // readValue -> JSON, ...
    std::vector<std::pair<std::string, InputFormat>> input_ctor_types;  // CSVParser -> CSV

    // Framework whose package prefix matches the import path, if any.
    const Framework* match_import(const std::string& import_path) const;

    static FrameworkCatalog default_catalog();
    static FrameworkCatalog from_json(const std::string& json_text);
    // Loads `path` when non-empty, else HAMSTER_CATALOG env var, else the
    // built-in default.
    static FrameworkCatalog load(const std::string& path);

    // Returns violations (duplicate ids, malformed prefixes); empty when valid.
    std::vector<std::string> validate() const;
};

// True when `name` starts with dotted prefix `prefix` at a package boundary.
bool prefix_matches(const std::string& prefix, const std::string& name);

}  // namespace hamster
