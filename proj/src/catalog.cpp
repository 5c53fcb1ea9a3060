// SPDX-License-Identifier: Apache-2.0
#include "hamster/catalog.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hamster {

using Json = nlohmann::json;

namespace {

// Seed knowledge base. Users extend or replace it via --catalog.
const char* kDefaultCatalogJson = R"JSON({
  "categories": {
    "Core": {
      "junit3": ["junit.framework"],
      "junit4": ["org.junit"],
      "junit5": ["org.junit.jupiter"],
      "testng": ["org.testng"]
    },
    "Assertion": {
      "assertj": ["org.assertj"],
      "hamcrest": ["org.hamcrest"],
      "truth": ["com.google.common.truth"]
    },
    "Mocking": {
      "mockito": ["org.mockito"],
      "easymock": ["org.easymock"],
      "powermock": ["org.powermock"],
      "jmockit": ["mockit"],
      "wiremock": ["com.github.tomakehurst.wiremock", "org.wiremock"]
    },
    "Android": {
      "robolectric": ["org.robolectric"],
      "espresso": ["androidx.test.espresso"],
      "androidx-test": ["androidx.test"]
    },
    "API": {
      "restassured": ["io.restassured", "com.jayway.restassured"],
      "karate": ["com.intuit.karate"]
    },
    "UI": {
      "selenium": ["org.openqa.selenium"],
      "selenide": ["com.codeborne.selenide"]
    },
    "BDD": {
      "cucumber": ["io.cucumber", "cucumber.api"],
      "jbehave": ["org.jbehave"]
    }
  },
  "assertion_receivers": [
    "org.junit.Assert", "org.junit.jupiter.api.Assertions", "org.junit.Assume",
    "org.testng.Assert", "org.testng.AssertJUnit",
    "junit.framework.Assert", "junit.framework.TestCase",
    "org.hamcrest.MatcherAssert", "com.google.common.truth.Truth",
    "org.assertj.core.api.Assertions"
  ],
  "assertion_methods": {
    "assertTrue": "Truthiness", "assertFalse": "Truthiness",
    "assertEquals": "Equality", "assertNotEquals": "Equality",
    "assertArrayEquals": "Equality", "assertIterableEquals": "Equality",
    "assertLinesMatch": "Equality",
    "assertSame": "Identity", "assertNotSame": "Identity",
    "assertNull": "Nullness", "assertNotNull": "Nullness",
    "assertThrows": "Exception", "assertThrowsExactly": "Exception",
    "assertDoesNotThrow": "Exception", "fail": "Exception",
    "assertThat": "Matcher", "assertWithMessage": "Matcher",
    "assertAll": "Other", "assertTimeout": "Other", "assertTimeoutPreemptively": "Other",
    "assertInstanceOf": "Other"
  },
  "chain_methods": {
    "isTrue": "Truthiness", "isFalse": "Truthiness",
    "isEqualTo": "Equality", "isNotEqualTo": "Equality", "containsExactly": "Equality",
    "contains": "Other", "containsAll": "Other", "hasSize": "Other", "isEmpty": "Other",
    "isNotEmpty": "Other", "startsWith": "Other", "endsWith": "Other",
    "isSameAs": "Identity", "isNotSameAs": "Identity",
    "isNull": "Nullness", "isNotNull": "Nullness",
    "isCloseTo": "NumericTolerance",
    "isInstanceOf": "Other", "hasMessage": "Other", "isPresent": "Other",
    "isGreaterThan": "Other", "isLessThan": "Other"
  },
  "mock_methods": {
    "mock": "mockito", "spy": "mockito", "mockStatic": "mockito",
    "createMock": "easymock", "createNiceMock": "easymock", "createStrictMock": "easymock"
  },
  "mock_annotations": {
    "Mock": "mockito", "Spy": "mockito", "InjectMocks": "mockito",
    "MockBean": "mockito", "SpyBean": "mockito", "Mocked": "jmockit"
  },
  "mock_receiver_frameworks": {
    "Mockito": "mockito", "BDDMockito": "mockito", "EasyMock": "easymock",
    "PowerMockito": "powermock", "PowerMock": "powermock"
  },
  "cleanup_names": [
    "close", "stop", "shutdown", "terminate", "disconnect",
    "destroy", "release", "cleanup", "deleteOnExit"
  ],
  "resource_libraries": {
    "java.io": "IOStream",
    "java.util.zip": "IOStream",
    "okio": "IOStream",
    "java.net": "NetworkConnection",
    "java.nio.channels": "NetworkConnection",
    "io.netty.channel": "NetworkConnection",
    "java.sql": "DatabaseHandle",
    "javax.sql": "DatabaseHandle",
    "jakarta.persistence": "DatabaseHandle",
    "org.hibernate": "DatabaseHandle",
    "java.nio.file": "FileSystem",
    "org.apache.hadoop.fs": "FileSystem",
    "org.eclipse.jetty.server": "Server",
    "org.apache.catalina": "Server",
    "io.undertow": "Server",
    "org.springframework.boot.web.server": "Server"
  },
  "app_type_markers": {
    "WebApp": ["javax.servlet", "jakarta.servlet", "org.springframework.web.servlet",
               "javax.faces", "jakarta.faces"],
    "WebAPI": ["javax.ws.rs", "jakarta.ws.rs", "org.springframework.web.bind",
               "io.swagger", "org.springframework.http"],
    "Android": ["android", "androidx"],
    "JavaEE": ["javax.ejb", "jakarta.ejb", "javax.persistence", "javax.jms",
               "javax.enterprise", "jakarta.enterprise"]
  },
  "ui_receivers": ["org.openqa.selenium", "com.codeborne.selenide"],
  "api_receivers": ["io.restassured", "com.jayway.restassured", "com.intuit.karate"],
  "extension_map": {
    ".json": "JSON", ".xml": "XML", ".csv": "CSV", ".sql": "SQL",
    ".properties": "Properties", ".html": "HTML", ".htm": "HTML",
    ".yaml": "Unknown", ".yml": "Unknown"
  },
  "input_api_methods": {
    "readValue": "JSON", "readTree": "JSON", "fromJson": "JSON",
    "prepareStatement": "SQL", "executeQuery": "SQL", "executeUpdate": "SQL",
    "getResourceAsStream": "ClasspathResource", "getResource": "ClasspathResource"
  },
  "input_ctor_types": {
    "CSVParser": "CSV", "CSVReader": "CSV",
    "JSONObject": "JSON", "JSONArray": "JSON",
    "SAXParser": "XML", "DocumentBuilder": "XML"
  }
})JSON";

AssertionCategory parse_assert_cat(const std::string& s, const std::string& ctx) {
    if (s == "Truthiness") return AssertionCategory::Truthiness;
    if (s == "Equality") return AssertionCategory::Equality;
    if (s == "Identity") return AssertionCategory::Identity;
    if (s == "Nullness") return AssertionCategory::Nullness;
    if (s == "NumericTolerance") return AssertionCategory::NumericTolerance;
    if (s == "Exception") return AssertionCategory::Exception;
    if (s == "Matcher") return AssertionCategory::Matcher;
    if (s == "Other") return AssertionCategory::Other;
    throw std::runtime_error("catalog: bad assertion category '" + s + "' in " + ctx);
}

ResourceKind parse_resource_kind(const std::string& s, const std::string& ctx) {
    if (s == "IOStream") return ResourceKind::IOStream;
    if (s == "NetworkConnection") return ResourceKind::NetworkConnection;
    if (s == "DatabaseHandle") return ResourceKind::DatabaseHandle;
    if (s == "FileSystem") return ResourceKind::FileSystem;
    if (s == "Server") return ResourceKind::Server;
    if (s == "Unknown") return ResourceKind::Unknown;
    throw std::runtime_error("catalog: bad resource kind '" + s + "' in " + ctx);
}

InputFormat parse_input_format(const std::string& s, const std::string& ctx) {
    if (s == "ClasspathResource") return InputFormat::ClasspathResource;
    if (s == "SQL") return InputFormat::SQL;
    if (s == "JSON") return InputFormat::JSON;
    if (s == "XML") return InputFormat::XML;
    if (s == "CSV") return InputFormat::CSV;
    if (s == "Properties") return InputFormat::Properties;
    if (s == "HTML") return InputFormat::HTML;
    if (s == "Unknown") return InputFormat::Unknown;
    throw std::runtime_error("catalog: bad input format '" + s + "' in " + ctx);
}

bool valid_dotted_name(const std::string& s) {
    if (s.empty() || s.front() == '.' || s.back() == '.') return false;
    bool seg_start = true;
    for (char c : s) {
        if (c == '.') {
            if (seg_start) return false;
            seg_start = true;
            continue;
        }
        if (seg_start && !(std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
            return false;
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '-'))
            return false;
        seg_start = false;
    }
    return true;
}

}  // namespace

bool prefix_matches(const std::string& prefix, const std::string& name) {
    if (name.size() < prefix.size()) return false;
    if (name.compare(0, prefix.size(), prefix) != 0) return false;
    return name.size() == prefix.size() || name[prefix.size()] == '.';
}

const FrameworkCatalog::Framework* FrameworkCatalog::match_import(
    const std::string& import_path) const {
    for (const auto& fw : frameworks)
        for (const auto& prefix : fw.prefixes)
            if (prefix_matches(prefix, import_path)) return &fw;
    return nullptr;
}

FrameworkCatalog FrameworkCatalog::from_json(const std::string& json_text) {
    Json j = Json::parse(json_text);
    FrameworkCatalog c;
    for (const auto& [category, frameworks] : j.at("categories").items())
        for (const auto& [id, prefixes] : frameworks.items()) {
            Framework fw;
            fw.id = id;
            fw.category = category;
            for (const auto& p : prefixes) fw.prefixes.push_back(p.get<std::string>());
            c.frameworks.push_back(std::move(fw));
        }
    // longest prefix first, so junit5 wins over junit4 on org.junit.jupiter.*
    std::stable_sort(c.frameworks.begin(), c.frameworks.end(),
                     [](const Framework& a, const Framework& b) {
                         auto longest = [](const Framework& f) {
                             size_t n = 0;
                             for (const auto& p : f.prefixes) n = std::max(n, p.size());
                             return n;
                         };
                         return longest(a) > longest(b);
                     });
    for (const auto& r : j.at("assertion_receivers"))
        c.assertion_receivers.push_back(r.get<std::string>());
    for (const auto& [name, cat] : j.at("assertion_methods").items())
        c.assertion_methods[name] = parse_assert_cat(cat.get<std::string>(), "assertion_methods");
    for (const auto& [name, cat] : j.at("chain_methods").items())
        c.chain_methods[name] = parse_assert_cat(cat.get<std::string>(), "chain_methods");
    for (const auto& [name, fw] : j.at("mock_methods").items())
        c.mock_methods[name] = fw.get<std::string>();
    for (const auto& [name, fw] : j.at("mock_annotations").items())
        c.mock_annotations[name] = fw.get<std::string>();
    if (j.contains("mock_receiver_frameworks"))
        for (const auto& [name, fw] : j.at("mock_receiver_frameworks").items())
            c.mock_receiver_frameworks[name] = fw.get<std::string>();
    for (const auto& n : j.at("cleanup_names")) c.cleanup_names.push_back(n.get<std::string>());
    for (const auto& [prefix, kind] : j.at("resource_libraries").items())
        c.resource_libraries.emplace_back(
            prefix, parse_resource_kind(kind.get<std::string>(), "resource_libraries"));
    for (const auto& [ty, prefixes] : j.at("app_type_markers").items()) {
        std::vector<std::string> ps;
        for (const auto& p : prefixes) ps.push_back(p.get<std::string>());
        c.app_type_markers[ty] = std::move(ps);
    }
    for (const auto& r : j.at("ui_receivers")) c.ui_receivers.push_back(r.get<std::string>());
    for (const auto& r : j.at("api_receivers")) c.api_receivers.push_back(r.get<std::string>());
    for (const auto& [ext, fmt] : j.at("extension_map").items())
        c.extension_map[ext] = parse_input_format(fmt.get<std::string>(), "extension_map");
    for (const auto& [name, fmt] : j.at("input_api_methods").items())
        c.input_api_methods[name] =
            parse_input_format(fmt.get<std::string>(), "input_api_methods");
    for (const auto& [name, fmt] : j.at("input_ctor_types").items())
        c.input_ctor_types.emplace_back(
            name, parse_input_format(fmt.get<std::string>(), "input_ctor_types"));

    auto problems = c.validate();
    if (!problems.empty()) throw std::runtime_error("invalid catalog: " + problems.front());
    return c;
}

std::vector<std::string> FrameworkCatalog::validate() const {
    std::vector<std::string> out;
    std::set<std::string> ids;
    for (const auto& fw : frameworks) {
        if (!ids.insert(fw.id).second) out.push_back("duplicate framework id '" + fw.id + "'");
        for (const auto& p : fw.prefixes)
            if (!valid_dotted_name(p))
                out.push_back("framework '" + fw.id + "': malformed package prefix '" + p + "'");
    }
    for (const auto& [prefix, kind] : resource_libraries)
        if (!valid_dotted_name(prefix))
            out.push_back("resource_libraries: malformed package prefix '" + prefix + "'");
    return out;
}

FrameworkCatalog FrameworkCatalog::default_catalog() {
    return from_json(kDefaultCatalogJson);
}

FrameworkCatalog FrameworkCatalog::load(const std::string& path) {
    std::string chosen = path;
    if (chosen.empty())
        if (const char* env = std::getenv("HAMSTER_CATALOG")) chosen = env;
    if (chosen.empty()) return default_catalog();
    std::ifstream in(chosen);
    if (!in) throw std::runtime_error("cannot read catalog file: " + chosen);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

}  // namespace hamster
