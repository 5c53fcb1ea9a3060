// SPDX-License-Identifier: Apache-2.0
//
// Analysis data model: the per-project result tree populated by the
// analyzers and consumed by the reporter. Instances are immutable by
// convention once a project analysis completes.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hamster {

inline constexpr int kSchemaVersion = 1;

struct SourcePosition {
    int line = 0;
    int column = 0;

    friend auto operator<=>(const SourcePosition&, const SourcePosition&) = default;
};

enum class ApplicationType { WebApp, WebAPI, Android, JavaEE, JavaSE };
enum class TestCategory { UI, API, Library, Unit, Integration, Unknown };
enum class EntityKind { MethodCall, ConstructorCall, MethodReference, Assertion };
enum class CallClassification { ApplicationCall, LibraryCall, Constructor, Assertion, Unresolved };
enum class AssertionCategory {
    Truthiness, Equality, Identity, Nullness, NumericTolerance, Exception, Matcher, Other
};
enum class FixtureKind { Setup, Teardown };
enum class FixtureScope { PerTest, PerClass };
enum class FixtureOrigin { Declared, Inherited };
enum class MockSite { Fixture, TestBody, Helper };
enum class TypeOrigin { Library, Application, Unresolved };
enum class InputFormat { ClasspathResource, SQL, JSON, XML, CSV, Properties, HTML, Unknown };
enum class InputEvidence { ApiCall, LiteralPath };
enum class ResourceKind { IOStream, NetworkConnection, DatabaseHandle, FileSystem, Server, Unknown };

// A possibly-unresolved reference to a Java type. Unresolved references keep
// the simple name so downstream reports can still account for them.
struct TypeRef {
    std::string name;          // simple name, always present
    std::string fqn;           // empty iff !resolved
    bool resolved = false;

    friend auto operator<=>(const TypeRef&, const TypeRef&) = default;
};

struct MockUse {
    TypeRef mocked_type;
    std::string framework_id;
    MockSite site = MockSite::TestBody;
    TypeOrigin mocked_type_origin = TypeOrigin::Unresolved;
    SourcePosition source_position;  // ordering key, not serialized

    friend auto operator<=>(const MockUse&, const MockUse&) = default;
};

struct CleanupOp {
    std::string method_name;
    TypeRef receiver_type;
    ResourceKind resource_kind = ResourceKind::Unknown;

    friend auto operator<=>(const CleanupOp&, const CleanupOp&) = default;
};

struct StructuredInputUse {
    InputFormat format = InputFormat::Unknown;
    InputEvidence evidence = InputEvidence::ApiCall;
    MockSite site = MockSite::TestBody;  // reuses the site taxonomy
    SourcePosition source_position;

    friend auto operator<=>(const StructuredInputUse&, const StructuredInputUse&) = default;
};

struct InvocationEntity {
    EntityKind kind = EntityKind::MethodCall;
    std::string method_name;
    TypeRef receiver_type;
    int arg_count = 0;
    CallClassification classification = CallClassification::Unresolved;
    std::optional<AssertionCategory> assertion_category;
    SourcePosition source_position;

    friend auto operator<=>(const InvocationEntity&, const InvocationEntity&) = default;
};

// Indices into the owning test method's invocation_sequence. All call
// indices precede all assertion indices; concatenating the sequences in
// order reproduces the full index range exactly once.
struct CallAssertionSequence {
    std::vector<int> call_entities;
    std::vector<int> assertion_entities;

    friend auto operator<=>(const CallAssertionSequence&, const CallAssertionSequence&) = default;
};

struct FocalMethod {
    TypeRef owner;
    std::string signature;

    friend auto operator<=>(const FocalMethod&, const FocalMethod&) = default;
};

struct FixtureAnalysis {
    FixtureKind kind = FixtureKind::Setup;
    FixtureScope scope = FixtureScope::PerTest;
    FixtureOrigin origin = FixtureOrigin::Declared;
    TypeRef declaring_class;
    std::string name;
    int ncloc = 0;
    int cyclomatic_complexity = 1;
    int objects_created = 0;
    std::vector<MockUse> mocks;
    std::vector<CleanupOp> cleanup_operations;
    int assertions_in_teardown = 0;

    friend auto operator<=>(const FixtureAnalysis&, const FixtureAnalysis&) = default;
};

struct TestMethodAnalysis {
    std::string name;
    std::string signature;
    int ncloc = 0;
    int cyclomatic_complexity = 1;
    int objects_created = 0;
    std::vector<MockUse> mocks;
    int constructor_calls = 0;
    int application_calls = 0;
    int library_calls = 0;
    int assertion_count = 0;
    std::vector<InvocationEntity> invocation_sequence;
    std::vector<CallAssertionSequence> call_assertion_sequences;
    std::vector<TypeRef> focal_classes;            // sorted set
    std::vector<FocalMethod> focal_methods;        // sorted set
    TestCategory category = TestCategory::Unknown;
    std::vector<StructuredInputUse> structured_inputs;
    std::vector<std::string> helpers_expanded;

    friend auto operator<=>(const TestMethodAnalysis&, const TestMethodAnalysis&) = default;
};

struct TestClassAnalysis {
    std::string qualified_name;
    std::string source_path;
    std::vector<std::string> framework_ids;        // sorted set
    std::vector<TypeRef> superclass_chain;         // nearest parent first
    std::vector<FixtureAnalysis> setup_methods;
    std::vector<FixtureAnalysis> teardown_methods;
    std::vector<TestMethodAnalysis> test_methods;

    friend auto operator<=>(const TestClassAnalysis&, const TestClassAnalysis&) = default;
};

struct AnalysisFailure {
    std::string path;
    std::string reason;

    friend auto operator<=>(const AnalysisFailure&, const AnalysisFailure&) = default;
};

struct ProjectAnalysis {
    std::string project_name;
    std::vector<ApplicationType> application_types;  // sorted set
    std::vector<std::string> framework_ids;          // sorted set
    std::vector<TestClassAnalysis> test_classes;     // sorted by (source_path, qualified_name)
    std::vector<AnalysisFailure> analysis_failures;  // sorted by path

    friend auto operator<=>(const ProjectAnalysis&, const ProjectAnalysis&) = default;
};

struct PercentileSummary {
    double p25 = 0, p50 = 0, p75 = 0, p90 = 0;
    double mean = 0;
    std::int64_t count = 0;
};

// Raised when serialize_model is handed a model violating a type invariant.
class InvariantError : public std::runtime_error {
  public:
    explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

// Raised by deserialize_model on schema mismatch; message carries the JSON
// path of the offending field.
class SchemaError : public std::runtime_error {
  public:
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

std::string to_string(ApplicationType v);
std::string to_string(TestCategory v);
std::string to_string(EntityKind v);
std::string to_string(CallClassification v);
std::string to_string(AssertionCategory v);
std::string to_string(FixtureKind v);
std::string to_string(FixtureScope v);
std::string to_string(FixtureOrigin v);
std::string to_string(MockSite v);
std::string to_string(TypeOrigin v);
std::string to_string(InputFormat v);
std::string to_string(InputEvidence v);
std::string to_string(ResourceKind v);

// Checks every machine-checkable invariant; returns human-readable
// violations, empty when the model is valid.
std::vector<std::string> validate_model(const ProjectAnalysis& project);

// Canonical JSON form: stable key order, lists pre-sorted by the analyzers,
// two-space indentation, trailing newline. Byte-stable across runs.
std::string serialize_model(const ProjectAnalysis& project);

ProjectAnalysis deserialize_model(const std::string& document);

}  // namespace hamster
