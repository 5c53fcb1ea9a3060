// SPDX-License-Identifier: Apache-2.0
#include "hamster/model.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

namespace hamster {

using Json = nlohmann::ordered_json;

namespace {

template <typename E>
struct EnumNames {
    std::vector<std::pair<E, const char*>> entries;

    std::string name(E v) const {
        for (const auto& [e, n] : entries)
            if (e == v) return n;
        return "?";
    }
    E parse(const std::string& s, const std::string& path) const {
        for (const auto& [e, n] : entries)
            if (s == n) return e;
        throw SchemaError(path + ": unknown enum value '" + s + "'");
    }
};

const EnumNames<ApplicationType> kAppType{{
    {ApplicationType::WebApp, "WebApp"},
    {ApplicationType::WebAPI, "WebAPI"},
    {ApplicationType::Android, "Android"},
    {ApplicationType::JavaEE, "JavaEE"},
    {ApplicationType::JavaSE, "JavaSE"},
}};
const EnumNames<TestCategory> kCategory{{
    {TestCategory::UI, "UI"},
    {TestCategory::API, "API"},
    {TestCategory::Library, "Library"},
    {TestCategory::Unit, "Unit"},
    {TestCategory::Integration, "Integration"},
    {TestCategory::Unknown, "Unknown"},
}};
const EnumNames<EntityKind> kEntityKind{{
    {EntityKind::MethodCall, "MethodCall"},
    {EntityKind::ConstructorCall, "ConstructorCall"},
    {EntityKind::MethodReference, "MethodReference"},
    {EntityKind::Assertion, "Assertion"},
}};
const EnumNames<CallClassification> kClassification{{
    {CallClassification::ApplicationCall, "ApplicationCall"},
    {CallClassification::LibraryCall, "LibraryCall"},
    {CallClassification::Constructor, "Constructor"},
    {CallClassification::Assertion, "Assertion"},
    {CallClassification::Unresolved, "Unresolved"},
}};
const EnumNames<AssertionCategory> kAssertCat{{
    {AssertionCategory::Truthiness, "Truthiness"},
    {AssertionCategory::Equality, "Equality"},
    {AssertionCategory::Identity, "Identity"},
    {AssertionCategory::Nullness, "Nullness"},
    {AssertionCategory::NumericTolerance, "NumericTolerance"},
    {AssertionCategory::Exception, "Exception"},
    {AssertionCategory::Matcher, "Matcher"},
    {AssertionCategory::Other, "Other"},
}};
const EnumNames<FixtureKind> kFixtureKind{{
    {FixtureKind::Setup, "Setup"},
    {FixtureKind::Teardown, "Teardown"},
}};
const EnumNames<FixtureScope> kFixtureScope{{
    {FixtureScope::PerTest, "PerTest"},
    {FixtureScope::PerClass, "PerClass"},
}};
const EnumNames<FixtureOrigin> kFixtureOrigin{{
    {FixtureOrigin::Declared, "Declared"},
    {FixtureOrigin::Inherited, "Inherited"},
}};
const EnumNames<MockSite> kMockSite{{
    {MockSite::Fixture, "Fixture"},
    {MockSite::TestBody, "TestBody"},
    {MockSite::Helper, "Helper"},
}};
const EnumNames<TypeOrigin> kTypeOrigin{{
    {TypeOrigin::Library, "Library"},
    {TypeOrigin::Application, "Application"},
    {TypeOrigin::Unresolved, "Unresolved"},
}};
const EnumNames<InputFormat> kInputFormat{{
    {InputFormat::ClasspathResource, "ClasspathResource"},
    {InputFormat::SQL, "SQL"},
    {InputFormat::JSON, "JSON"},
    {InputFormat::XML, "XML"},
    {InputFormat::CSV, "CSV"},
    {InputFormat::Properties, "Properties"},
    {InputFormat::HTML, "HTML"},
    {InputFormat::Unknown, "Unknown"},
}};
const EnumNames<InputEvidence> kInputEvidence{{
    {InputEvidence::ApiCall, "ApiCall"},
    {InputEvidence::LiteralPath, "LiteralPath"},
}};
const EnumNames<ResourceKind> kResourceKind{{
    {ResourceKind::IOStream, "IOStream"},
    {ResourceKind::NetworkConnection, "NetworkConnection"},
    {ResourceKind::DatabaseHandle, "DatabaseHandle"},
    {ResourceKind::FileSystem, "FileSystem"},
    {ResourceKind::Server, "Server"},
    {ResourceKind::Unknown, "Unknown"},
}};

// ---- validation ----

void check(bool ok, std::vector<std::string>& out, const std::string& msg) {
    if (!ok) out.push_back(msg);
}

void validate_method(const TestMethodAnalysis& m, const std::string& ctx,
                     std::vector<std::string>& out) {
    int assertions = 0;
    for (size_t i = 0; i < m.invocation_sequence.size(); ++i) {
        const auto& e = m.invocation_sequence[i];
        const std::string ectx = ctx + ".invocation_sequence[" + std::to_string(i) + "]";
        if (e.kind == EntityKind::Assertion) ++assertions;
        check(e.assertion_category.has_value() == (e.kind == EntityKind::Assertion), out,
              ectx + ": assertion_category present iff kind=Assertion");
        if (e.kind == EntityKind::ConstructorCall)
            check(e.classification == CallClassification::Constructor, out,
                  ectx + ": kind=ConstructorCall requires classification=Constructor");
    }
    check(m.assertion_count == assertions, out,
          ctx + ": assertion_count must equal number of Assertion entities");

    // Partition must cover [0, n) exactly once, in order, calls before
    // assertions within each sequence.
    int next = 0;
    bool ok = true;
    for (const auto& seq : m.call_assertion_sequences) {
        for (int idx : seq.call_entities)
            if (idx != next++) ok = false;
        for (int idx : seq.assertion_entities)
            if (idx != next++) ok = false;
    }
    if (next != static_cast<int>(m.invocation_sequence.size())) ok = false;
    check(ok, out, ctx + ": call_assertion_sequences must partition the invocation sequence");
    for (size_t s = 0; s < m.call_assertion_sequences.size(); ++s) {
        const auto& seq = m.call_assertion_sequences[s];
        for (int idx : seq.assertion_entities)
            if (idx >= 0 && idx < static_cast<int>(m.invocation_sequence.size()))
                check(m.invocation_sequence[idx].kind == EntityKind::Assertion, out,
                      ctx + ".call_assertion_sequences[" + std::to_string(s) +
                          "]: assertion index refers to a non-assertion entity");
        for (int idx : seq.call_entities)
            if (idx >= 0 && idx < static_cast<int>(m.invocation_sequence.size()))
                check(m.invocation_sequence[idx].kind != EntityKind::Assertion, out,
                      ctx + ".call_assertion_sequences[" + std::to_string(s) +
                          "]: call index refers to an assertion entity");
    }

    for (const auto& fm : m.focal_methods) {
        bool owned = std::any_of(m.focal_classes.begin(), m.focal_classes.end(),
                                 [&](const TypeRef& t) { return t == fm.owner; });
        check(owned, out, ctx + ": focal method owner '" + fm.owner.name +
                              "' missing from focal_classes");
    }
    if (m.category == TestCategory::Unit || m.category == TestCategory::Integration)
        check(!m.focal_classes.empty(), out,
              ctx + ": Unit/Integration category requires non-empty focal_classes");
    if (m.category == TestCategory::Unknown)
        check(m.focal_classes.empty(), out,
              ctx + ": Unknown category requires empty focal_classes");
    for (const auto& mu : m.mocks)
        if (mu.mocked_type_origin == TypeOrigin::Application)
            check(mu.mocked_type.resolved, out,
                  ctx + ": Application mock origin requires resolved mocked_type");
}

void validate_fixture(const FixtureAnalysis& f, FixtureKind expected,
                      const std::string& test_class, const std::string& ctx,
                      std::vector<std::string>& out) {
    check(f.kind == expected, out, ctx + ": fixture kind does not match its list");
    if (!f.cleanup_operations.empty())
        check(f.kind == FixtureKind::Teardown, out,
              ctx + ": cleanup_operations recorded on a setup fixture");
    if (f.origin == FixtureOrigin::Inherited)
        check(f.declaring_class.resolved ? f.declaring_class.fqn != test_class
                                         : f.declaring_class.name != test_class,
              out, ctx + ": inherited fixture declared in the analyzed class");
}

// ---- serialization ----

Json type_ref_json(const TypeRef& t) {
    Json j;
    j["name"] = t.name;
    if (t.resolved) j["fqn"] = t.fqn;
    j["resolved"] = t.resolved;
    return j;
}

Json position_json(const SourcePosition& p) {
    return Json{{"line", p.line}, {"column", p.column}};
}

Json mock_json(const MockUse& m) {
    Json j;
    j["mocked_type"] = type_ref_json(m.mocked_type);
    j["framework_id"] = m.framework_id;
    j["site"] = kMockSite.name(m.site);
    j["mocked_type_origin"] = kTypeOrigin.name(m.mocked_type_origin);
    return j;
}

Json fixture_json(const FixtureAnalysis& f) {
    Json j;
    j["kind"] = kFixtureKind.name(f.kind);
    j["scope"] = kFixtureScope.name(f.scope);
    j["origin"] = kFixtureOrigin.name(f.origin);
    j["declaring_class"] = type_ref_json(f.declaring_class);
    j["name"] = f.name;
    j["ncloc"] = f.ncloc;
    j["cyclomatic_complexity"] = f.cyclomatic_complexity;
    j["objects_created"] = f.objects_created;
    j["mocks"] = Json::array();
    for (const auto& m : f.mocks) j["mocks"].push_back(mock_json(m));
    j["cleanup_operations"] = Json::array();
    for (const auto& c : f.cleanup_operations) {
        Json cj;
        cj["method_name"] = c.method_name;
        cj["receiver_type"] = type_ref_json(c.receiver_type);
        cj["resource_kind"] = kResourceKind.name(c.resource_kind);
        j["cleanup_operations"].push_back(std::move(cj));
    }
    j["assertions_in_teardown"] = f.assertions_in_teardown;
    return j;
}

Json method_json(const TestMethodAnalysis& m) {
    Json j;
    j["name"] = m.name;
    j["signature"] = m.signature;
    j["ncloc"] = m.ncloc;
    j["cyclomatic_complexity"] = m.cyclomatic_complexity;
    j["objects_created"] = m.objects_created;
    j["mocks"] = Json::array();
    for (const auto& mu : m.mocks) j["mocks"].push_back(mock_json(mu));
    j["constructor_calls"] = m.constructor_calls;
    j["application_calls"] = m.application_calls;
    j["library_calls"] = m.library_calls;
    j["assertion_count"] = m.assertion_count;
    j["invocation_sequence"] = Json::array();
    for (const auto& e : m.invocation_sequence) {
        Json ej;
        ej["kind"] = kEntityKind.name(e.kind);
        ej["method_name"] = e.method_name;
        ej["receiver_type"] = type_ref_json(e.receiver_type);
        ej["arg_count"] = e.arg_count;
        ej["classification"] = kClassification.name(e.classification);
        if (e.assertion_category)
            ej["assertion_category"] = kAssertCat.name(*e.assertion_category);
        ej["source_position"] = position_json(e.source_position);
        j["invocation_sequence"].push_back(std::move(ej));
    }
    j["call_assertion_sequences"] = Json::array();
    for (const auto& s : m.call_assertion_sequences) {
        Json sj;
        sj["call_entities"] = s.call_entities;
        sj["assertion_entities"] = s.assertion_entities;
        j["call_assertion_sequences"].push_back(std::move(sj));
    }
    j["focal_classes"] = Json::array();
    for (const auto& t : m.focal_classes) j["focal_classes"].push_back(type_ref_json(t));
    j["focal_methods"] = Json::array();
    for (const auto& fm : m.focal_methods) {
        Json fj;
        fj["owner"] = type_ref_json(fm.owner);
        fj["signature"] = fm.signature;
        j["focal_methods"].push_back(std::move(fj));
    }
    j["category"] = kCategory.name(m.category);
    j["structured_inputs"] = Json::array();
    for (const auto& si : m.structured_inputs) {
        Json sj;
        sj["format"] = kInputFormat.name(si.format);
        sj["evidence"] = kInputEvidence.name(si.evidence);
        sj["site"] = kMockSite.name(si.site);
        sj["source_position"] = position_json(si.source_position);
        j["structured_inputs"].push_back(std::move(sj));
    }
    j["helpers_expanded"] = m.helpers_expanded;
    return j;
}

// ---- deserialization helpers ----

const Json& field(const Json& j, const char* key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path + "." + key + ": missing field");
    return *it;
}

std::string get_string(const Json& j, const char* key, const std::string& path) {
    const Json& v = field(j, key, path);
    if (!v.is_string()) throw SchemaError(path + "." + key + ": expected string");
    return v.get<std::string>();
}

int get_int(const Json& j, const char* key, const std::string& path) {
    const Json& v = field(j, key, path);
    if (!v.is_number_integer()) throw SchemaError(path + "." + key + ": expected integer");
    return v.get<int>();
}

bool get_bool(const Json& j, const char* key, const std::string& path) {
    const Json& v = field(j, key, path);
    if (!v.is_boolean()) throw SchemaError(path + "." + key + ": expected boolean");
    return v.get<bool>();
}

const Json& get_array(const Json& j, const char* key, const std::string& path) {
    const Json& v = field(j, key, path);
    if (!v.is_array()) throw SchemaError(path + "." + key + ": expected array");
    return v;
}

const Json& get_object(const Json& j, const char* key, const std::string& path) {
    const Json& v = field(j, key, path);
    if (!v.is_object()) throw SchemaError(path + "." + key + ": expected object");
    return v;
}

TypeRef parse_type_ref(const Json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path + ": expected object");
    TypeRef t;
    t.name = get_string(j, "name", path);
    t.resolved = get_bool(j, "resolved", path);
    if (t.resolved) t.fqn = get_string(j, "fqn", path);
    else if (j.contains("fqn")) throw SchemaError(path + ".fqn: present on unresolved type ref");
    return t;
}

SourcePosition parse_position(const Json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path + ": expected object");
    return {get_int(j, "line", path), get_int(j, "column", path)};
}

MockUse parse_mock(const Json& j, const std::string& path) {
    MockUse m;
    m.mocked_type = parse_type_ref(get_object(j, "mocked_type", path), path + ".mocked_type");
    m.framework_id = get_string(j, "framework_id", path);
    m.site = kMockSite.parse(get_string(j, "site", path), path + ".site");
    m.mocked_type_origin =
        kTypeOrigin.parse(get_string(j, "mocked_type_origin", path), path + ".mocked_type_origin");
    return m;
}

FixtureAnalysis parse_fixture(const Json& j, const std::string& path) {
    FixtureAnalysis f;
    f.kind = kFixtureKind.parse(get_string(j, "kind", path), path + ".kind");
    f.scope = kFixtureScope.parse(get_string(j, "scope", path), path + ".scope");
    f.origin = kFixtureOrigin.parse(get_string(j, "origin", path), path + ".origin");
    f.declaring_class =
        parse_type_ref(get_object(j, "declaring_class", path), path + ".declaring_class");
    f.name = get_string(j, "name", path);
    f.ncloc = get_int(j, "ncloc", path);
    f.cyclomatic_complexity = get_int(j, "cyclomatic_complexity", path);
    f.objects_created = get_int(j, "objects_created", path);
    int i = 0;
    for (const auto& mj : get_array(j, "mocks", path))
        f.mocks.push_back(parse_mock(mj, path + ".mocks[" + std::to_string(i++) + "]"));
    i = 0;
    for (const auto& cj : get_array(j, "cleanup_operations", path)) {
        const std::string cpath = path + ".cleanup_operations[" + std::to_string(i++) + "]";
        CleanupOp c;
        c.method_name = get_string(cj, "method_name", cpath);
        c.receiver_type =
            parse_type_ref(get_object(cj, "receiver_type", cpath), cpath + ".receiver_type");
        c.resource_kind =
            kResourceKind.parse(get_string(cj, "resource_kind", cpath), cpath + ".resource_kind");
        f.cleanup_operations.push_back(std::move(c));
    }
    f.assertions_in_teardown = get_int(j, "assertions_in_teardown", path);
    return f;
}

TestMethodAnalysis parse_method(const Json& j, const std::string& path) {
    TestMethodAnalysis m;
    m.name = get_string(j, "name", path);
    m.signature = get_string(j, "signature", path);
    m.ncloc = get_int(j, "ncloc", path);
    m.cyclomatic_complexity = get_int(j, "cyclomatic_complexity", path);
    m.objects_created = get_int(j, "objects_created", path);
    int i = 0;
    for (const auto& mj : get_array(j, "mocks", path))
        m.mocks.push_back(parse_mock(mj, path + ".mocks[" + std::to_string(i++) + "]"));
    m.constructor_calls = get_int(j, "constructor_calls", path);
    m.application_calls = get_int(j, "application_calls", path);
    m.library_calls = get_int(j, "library_calls", path);
    m.assertion_count = get_int(j, "assertion_count", path);
    i = 0;
    for (const auto& ej : get_array(j, "invocation_sequence", path)) {
        const std::string epath = path + ".invocation_sequence[" + std::to_string(i++) + "]";
        InvocationEntity e;
        e.kind = kEntityKind.parse(get_string(ej, "kind", epath), epath + ".kind");
        e.method_name = get_string(ej, "method_name", epath);
        e.receiver_type =
            parse_type_ref(get_object(ej, "receiver_type", epath), epath + ".receiver_type");
        e.arg_count = get_int(ej, "arg_count", epath);
        e.classification = kClassification.parse(get_string(ej, "classification", epath),
                                                 epath + ".classification");
        if (ej.contains("assertion_category"))
            e.assertion_category = kAssertCat.parse(
                get_string(ej, "assertion_category", epath), epath + ".assertion_category");
        e.source_position =
            parse_position(get_object(ej, "source_position", epath), epath + ".source_position");
        m.invocation_sequence.push_back(std::move(e));
    }
    i = 0;
    for (const auto& sj : get_array(j, "call_assertion_sequences", path)) {
        const std::string spath = path + ".call_assertion_sequences[" + std::to_string(i++) + "]";
        CallAssertionSequence s;
        for (const auto& v : get_array(sj, "call_entities", spath)) {
            if (!v.is_number_integer()) throw SchemaError(spath + ".call_entities: expected int");
            s.call_entities.push_back(v.get<int>());
        }
        for (const auto& v : get_array(sj, "assertion_entities", spath)) {
            if (!v.is_number_integer())
                throw SchemaError(spath + ".assertion_entities: expected int");
            s.assertion_entities.push_back(v.get<int>());
        }
        m.call_assertion_sequences.push_back(std::move(s));
    }
    i = 0;
    for (const auto& tj : get_array(j, "focal_classes", path))
        m.focal_classes.push_back(
            parse_type_ref(tj, path + ".focal_classes[" + std::to_string(i++) + "]"));
    i = 0;
    for (const auto& fj : get_array(j, "focal_methods", path)) {
        const std::string fpath = path + ".focal_methods[" + std::to_string(i++) + "]";
        FocalMethod fm;
        fm.owner = parse_type_ref(get_object(fj, "owner", fpath), fpath + ".owner");
        fm.signature = get_string(fj, "signature", fpath);
        m.focal_methods.push_back(std::move(fm));
    }
    m.category = kCategory.parse(get_string(j, "category", path), path + ".category");
    i = 0;
    for (const auto& sj : get_array(j, "structured_inputs", path)) {
        const std::string spath = path + ".structured_inputs[" + std::to_string(i++) + "]";
        StructuredInputUse s;
        s.format = kInputFormat.parse(get_string(sj, "format", spath), spath + ".format");
        s.evidence = kInputEvidence.parse(get_string(sj, "evidence", spath), spath + ".evidence");
        s.site = kMockSite.parse(get_string(sj, "site", spath), spath + ".site");
        s.source_position =
            parse_position(get_object(sj, "source_position", spath), spath + ".source_position");
        m.structured_inputs.push_back(std::move(s));
    }
    for (const auto& h : get_array(j, "helpers_expanded", path)) {
        if (!h.is_string()) throw SchemaError(path + ".helpers_expanded: expected string");
        m.helpers_expanded.push_back(h.get<std::string>());
    }
    return m;
}

}  // namespace

std::string to_string(ApplicationType v) { return kAppType.name(v); }
std::string to_string(TestCategory v) { return kCategory.name(v); }
std::string to_string(EntityKind v) { return kEntityKind.name(v); }
std::string to_string(CallClassification v) { return kClassification.name(v); }
std::string to_string(AssertionCategory v) { return kAssertCat.name(v); }
std::string to_string(FixtureKind v) { return kFixtureKind.name(v); }
std::string to_string(FixtureScope v) { return kFixtureScope.name(v); }
std::string to_string(FixtureOrigin v) { return kFixtureOrigin.name(v); }
std::string to_string(MockSite v) { return kMockSite.name(v); }
std::string to_string(TypeOrigin v) { return kTypeOrigin.name(v); }
std::string to_string(InputFormat v) { return kInputFormat.name(v); }
std::string to_string(InputEvidence v) { return kInputEvidence.name(v); }
std::string to_string(ResourceKind v) { return kResourceKind.name(v); }

std::vector<std::string> validate_model(const ProjectAnalysis& project) {
    std::vector<std::string> out;
    std::map<std::string, int> names;
    for (const auto& tc : project.test_classes) names[tc.qualified_name]++;
    for (const auto& [name, n] : names)
        check(n == 1, out, "test_classes: duplicate qualified name '" + name + "'");

    for (const auto& tc : project.test_classes) {
        const std::string ctx = "test_classes[" + tc.qualified_name + "]";
        check(!tc.test_methods.empty(), out, ctx + ": test class with zero test methods");
        for (size_t i = 0; i < tc.setup_methods.size(); ++i)
            validate_fixture(tc.setup_methods[i], FixtureKind::Setup, tc.qualified_name,
                             ctx + ".setup_methods[" + std::to_string(i) + "]", out);
        for (size_t i = 0; i < tc.teardown_methods.size(); ++i)
            validate_fixture(tc.teardown_methods[i], FixtureKind::Teardown, tc.qualified_name,
                             ctx + ".teardown_methods[" + std::to_string(i) + "]", out);
        for (const auto& tm : tc.test_methods)
            validate_method(tm, ctx + ".test_methods[" + tm.name + "]", out);
    }
    return out;
}

std::string serialize_model(const ProjectAnalysis& project) {
    auto violations = validate_model(project);
    if (!violations.empty())
        throw InvariantError("serialization refused: " + violations.front());

    Json j;
    j["hamster_schema"] = kSchemaVersion;
    j["project_name"] = project.project_name;
    j["application_types"] = Json::array();
    for (auto t : project.application_types) j["application_types"].push_back(kAppType.name(t));
    j["framework_ids"] = project.framework_ids;
    j["test_classes"] = Json::array();
    for (const auto& tc : project.test_classes) {
        Json cj;
        cj["qualified_name"] = tc.qualified_name;
        cj["source_path"] = tc.source_path;
        cj["framework_ids"] = tc.framework_ids;
        cj["superclass_chain"] = Json::array();
        for (const auto& s : tc.superclass_chain)
            cj["superclass_chain"].push_back(type_ref_json(s));
        cj["setup_methods"] = Json::array();
        for (const auto& f : tc.setup_methods) cj["setup_methods"].push_back(fixture_json(f));
        cj["teardown_methods"] = Json::array();
        for (const auto& f : tc.teardown_methods)
            cj["teardown_methods"].push_back(fixture_json(f));
        cj["test_methods"] = Json::array();
        for (const auto& m : tc.test_methods) cj["test_methods"].push_back(method_json(m));
        j["test_classes"].push_back(std::move(cj));
    }
    j["analysis_failures"] = Json::array();
    for (const auto& f : project.analysis_failures)
        j["analysis_failures"].push_back(Json{{"path", f.path}, {"reason", f.reason}});
    return j.dump(2) + "\n";
}

ProjectAnalysis deserialize_model(const std::string& document) {
    Json j;
    try {
        j = Json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("$: not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("$: expected top-level object");
    const std::string path = "$";
    if (get_int(j, "hamster_schema", path) != kSchemaVersion)
        throw SchemaError("$.hamster_schema: unsupported schema version");

    ProjectAnalysis p;
    p.project_name = get_string(j, "project_name", path);
    int i = 0;
    for (const auto& a : get_array(j, "application_types", path)) {
        const std::string apath = "$.application_types[" + std::to_string(i++) + "]";
        if (!a.is_string()) throw SchemaError(apath + ": expected string");
        p.application_types.push_back(kAppType.parse(a.get<std::string>(), apath));
    }
    for (const auto& f : get_array(j, "framework_ids", path)) {
        if (!f.is_string()) throw SchemaError("$.framework_ids: expected string");
        p.framework_ids.push_back(f.get<std::string>());
    }
    i = 0;
    for (const auto& cj : get_array(j, "test_classes", path)) {
        const std::string cpath = "$.test_classes[" + std::to_string(i++) + "]";
        TestClassAnalysis tc;
        tc.qualified_name = get_string(cj, "qualified_name", cpath);
        tc.source_path = get_string(cj, "source_path", cpath);
        for (const auto& f : get_array(cj, "framework_ids", cpath)) {
            if (!f.is_string()) throw SchemaError(cpath + ".framework_ids: expected string");
            tc.framework_ids.push_back(f.get<std::string>());
        }
        int k = 0;
        for (const auto& s : get_array(cj, "superclass_chain", cpath))
            tc.superclass_chain.push_back(
                parse_type_ref(s, cpath + ".superclass_chain[" + std::to_string(k++) + "]"));
        k = 0;
        for (const auto& fj : get_array(cj, "setup_methods", cpath))
            tc.setup_methods.push_back(
                parse_fixture(fj, cpath + ".setup_methods[" + std::to_string(k++) + "]"));
        k = 0;
        for (const auto& fj : get_array(cj, "teardown_methods", cpath))
            tc.teardown_methods.push_back(
                parse_fixture(fj, cpath + ".teardown_methods[" + std::to_string(k++) + "]"));
        k = 0;
        for (const auto& mj : get_array(cj, "test_methods", cpath))
            tc.test_methods.push_back(
                parse_method(mj, cpath + ".test_methods[" + std::to_string(k++) + "]"));
        p.test_classes.push_back(std::move(tc));
    }
    i = 0;
    for (const auto& fj : get_array(j, "analysis_failures", path)) {
        const std::string fpath = "$.analysis_failures[" + std::to_string(i++) + "]";
        p.analysis_failures.push_back(
            {get_string(fj, "path", fpath), get_string(fj, "reason", fpath)});
    }

    auto violations = validate_model(p);
    if (!violations.empty())
        throw SchemaError("document violates model invariant: " + violations.front());
    return p;
}

}  // namespace hamster
