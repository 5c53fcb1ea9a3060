// SPDX-License-Identifier: Apache-2.0
#include "hamster/sequence_analyzer.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace hamster {

namespace {

using java::Expr;
using java::ExprKind;
using java::Stmt;
using java::StmtKind;

SourcePosition to_position(const java::Pos& p) { return SourcePosition{p.line, p.column}; }

// Reconstructs a dotted name from a Name/FieldAccess chain; "" otherwise.
std::string dotted_name(const Expr* e) {
    if (!e) return "";
    if (e->kind == ExprKind::Name) return e->name;
    if (e->kind == ExprKind::FieldAccess) {
        std::string base = dotted_name(e->target.get());
        if (base.empty()) return "";
        return base + "." + e->name;
    }
    return "";
}

bool is_float_literal(const Expr* e) {
    return e && e->kind == ExprKind::Literal && e->aux == "float";
}

bool is_string_literal(const Expr* e) {
    return e && e->kind == ExprKind::Literal && (e->aux == "string" || e->aux == "textblock");
}

bool starts_upper(const std::string& s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

std::string simple_of(const std::string& dotted) {
    auto d = dotted.rfind('.');
    return d == std::string::npos ? dotted : dotted.substr(d + 1);
}

TypeOrigin classify_type_origin(const TypeRef& type, const ProjectModel& project) {
    if (!type.resolved) return TypeOrigin::Unresolved;
    if (project.has_type(type.fqn)) return TypeOrigin::Application;
    return TypeOrigin::Library;
}

class Walker {
  public:
    Walker(const BodyContext& ctx, MockSite root_site, BodySequence& out)
        : ctx_(ctx), root_site_(root_site), out_(out) {
        preload_fields(ctx_.owner);
        junit3_ = ctx_.project.inheritance.extends(ctx_.owner.qualified_name,
                                                   "junit.framework.TestCase", "TestCase");
    }

    void walk_method_body(const java::MethodModel& method, MockSite site) {
        active_.insert(method.signature());
        for (const auto& param : method.parameters)
            out_.var_types.insert_or_assign(param.name, resolve_ref(param.type));
        if (method.body) walk_stmt(method.body.get(), site);
        active_.erase(method.signature());
    }

    void walk_field_initializers(MockSite site) {
        for (const auto& field : ctx_.owner.fields) {
            for (const auto& ann : field.annotations) {
                auto it = ctx_.catalog.mock_annotations.find(simple_of(ann.name));
                if (it == ctx_.catalog.mock_annotations.end()) continue;
                MockUse use;
                use.mocked_type = resolve_ref(field.declared_type);
                use.framework_id = it->second;
                use.site = site;
                use.mocked_type_origin = classify_type_origin(use.mocked_type, ctx_.project);
                use.source_position = to_position(field.pos);
                out_.mocks.push_back(std::move(use));
                out_.mock_vars.insert(field.name);
                break;
            }
            if (!field.initializer) continue;
            auto res = walk_expr(field.initializer.get(), site);
            bind_value(field.name, res, /*declared_is_var=*/false);
        }
    }

  private:
    struct ExprResult {
        int tail = -1;                 // entity producing the value, -1 if none
        std::string root_var;          // variable at the root of the chain
        std::string var_name;          // set when the expr is a plain variable
        bool assertion_chain = false;  // tail is a chainable fluent assertion
        bool is_type_name = false;     // expr names a type (static receiver)
        TypeRef type_ref;
    };

    void preload_fields(const java::TypeDeclModel& owner) {
        for (const auto& field : owner.fields)
            out_.var_types.emplace(field.name, resolve_ref(field.declared_type));
        // inherited project-class fields are visible in inherited bodies
        for (const auto& parent : ctx_.project.inheritance.chain(owner.qualified_name)) {
            if (!parent.resolved) break;
            auto it = ctx_.project.types.find(parent.fqn);
            if (it == ctx_.project.types.end()) break;
            for (const auto& field : it->second.decl->fields)
                if (!field.modifiers.count("private"))
                    out_.var_types.emplace(field.name, resolve_ref(field.declared_type));
        }
    }

    TypeRef resolve_ref(const std::string& type_text) {
        if (type_text.empty() || type_text == "var") return TypeRef{};
        return resolve_type_text(type_text, ctx_.unit, ctx_.project).to_type_ref();
    }

    bool is_assertion_receiver(const TypeRef& type) const {
        for (const auto& r : ctx_.catalog.assertion_receivers) {
            if (type.resolved && type.fqn == r) return true;
            if (!type.resolved && !type.name.empty() && type.name == simple_of(r)) return true;
        }
        return false;
    }

    // Receiver implied by static imports for a bare call name.
    std::optional<TypeRef> static_import_receiver(const std::string& name) const {
        for (const auto& imp : ctx_.unit.imports) {
            if (!imp.is_static) continue;
            if (!imp.is_wildcard) {
                auto d = imp.path.rfind('.');
                if (d == std::string::npos) continue;
                if (imp.path.substr(d + 1) != name) continue;
                std::string cls = imp.path.substr(0, d);
                return TypeRef{simple_of(cls), cls, true};
            }
        }
        if (ctx_.catalog.assertion_methods.count(name)) {
            for (const auto& imp : ctx_.unit.imports) {
                if (!imp.is_static || !imp.is_wildcard) continue;
                for (const auto& r : ctx_.catalog.assertion_receivers)
                    if (imp.path == r) return TypeRef{simple_of(r), r, true};
            }
            if (junit3_) return TypeRef{"TestCase", "junit.framework.TestCase", true};
        }
        return std::nullopt;
    }

    const java::MethodModel* find_helper(const std::string& name, size_t arity) const {
        if (ctx_.reserved_names.count(name)) return nullptr;
        for (const auto& m : ctx_.owner.methods)
            if (!m.is_constructor && m.name == name && m.parameters.size() == arity && m.body)
                return &m;
        return nullptr;
    }

    void consume(int idx) {
        if (idx >= 0) out_.entities[static_cast<size_t>(idx)].value_consumed = true;
    }

    // Records the binding of an expression value to a variable.
    void bind_value(const std::string& var, const ExprResult& res, bool declared_is_var) {
        if (var.empty() || res.tail < 0) return;
        auto& producer = out_.entities[static_cast<size_t>(res.tail)];
        producer.assigned_var = var;
        producer.value_consumed = true;
        if (producer.is_mock_creation) {
            out_.mock_vars.insert(var);
            if (producer.entity.receiver_type.resolved || declared_is_var)
                out_.var_types[var] = producer.entity.receiver_type;
        } else if (declared_is_var && producer.entity.kind == EntityKind::ConstructorCall) {
            out_.var_types[var] = producer.entity.receiver_type;
        }
    }

    ExprResult resolve_plain_name(const std::string& name) {
        ExprResult r;
        if (out_.var_types.count(name)) {
            r.root_var = name;
            r.var_name = name;
            return r;
        }
        auto resolved = resolve_type(name, ctx_.unit, ctx_.project);
        if (resolved.fqn) {
            r.is_type_name = true;
            r.type_ref = resolved.to_type_ref();
            return r;
        }
        if (starts_upper(name)) {
            r.is_type_name = true;
            r.type_ref = TypeRef{name, "", false};
            return r;
        }
        r.root_var = name;  // likely an inherited or unmodeled variable
        r.var_name = name;
        return r;
    }

    ExprResult walk_dotted(const Expr* e, MockSite site) {
        std::string dotted = dotted_name(e);
        if (dotted.empty()) {
            // e.g. field access off a call: value flows through the target
            if (e->target) return walk_expr(e->target.get(), site);
            return {};
        }
        auto first_dot = dotted.find('.');
        if (first_dot == std::string::npos) return resolve_plain_name(dotted);
        std::string head = dotted.substr(0, first_dot);
        if (out_.var_types.count(head)) {
            ExprResult r;
            r.root_var = head;  // field path rooted at a known variable
            return r;
        }
        auto resolved = resolve_type_text(dotted, ctx_.unit, ctx_.project);
        ExprResult r;
        if (resolved.fqn) {
            r.is_type_name = true;
            r.type_ref = resolved.to_type_ref();
            return r;
        }
        if (starts_upper(simple_of(dotted))) {
            r.is_type_name = true;
            r.type_ref = TypeRef{simple_of(dotted), "", false};
            return r;
        }
        r.root_var = head;
        return r;
    }

    struct ArgFacts {
        std::vector<int> value_entities;
        std::vector<std::string> var_names;
        std::vector<std::pair<java::Pos, std::string>> literal_strings;
    };

    ArgFacts walk_args(const std::vector<std::unique_ptr<Expr>>& args, MockSite site) {
        ArgFacts facts;
        for (const auto& arg : args) {
            if (!arg) continue;
            if (is_string_literal(arg.get()))
                facts.literal_strings.emplace_back(arg->pos, arg->name);
            auto res = walk_expr(arg.get(), site);
            if (!res.var_name.empty()) facts.var_names.push_back(res.var_name);
            if (res.tail >= 0) {
                facts.value_entities.push_back(res.tail);
                consume(res.tail);
            }
        }
        return facts;
    }

    int emit(LinearEntity&& le) {
        out_.entities.push_back(std::move(le));
        return static_cast<int>(out_.entities.size()) - 1;
    }

    ExprResult walk_call(const Expr* e, MockSite site) {
        bool bare = !e->target || e->target->kind == ExprKind::This;
        ExprResult recv;
        if (!bare) recv = walk_expr(e->target.get(), site);

        if (bare) {
            if (const auto* helper = find_helper(e->name, e->args.size())) {
                auto facts = walk_args(e->args, site);
                (void)facts;
                std::string signature = helper->signature();
                if (active_.count(signature)) {
                    out_.cycle_detected = true;
                    return {};
                }
                if (std::find(out_.helpers_expanded.begin(), out_.helpers_expanded.end(),
                              signature) == out_.helpers_expanded.end())
                    out_.helpers_expanded.push_back(signature);
                active_.insert(signature);
                MockSite inner =
                    root_site_ == MockSite::TestBody ? MockSite::Helper : root_site_;
                walk_stmt(helper->body.get(), inner);
                active_.erase(signature);
                return {};
            }
            if (auto implied = static_import_receiver(e->name)) {
                recv.is_type_name = true;
                recv.type_ref = *implied;
            }
        }

        auto facts = walk_args(e->args, site);

        // assertion classification
        bool is_assertion = false;
        std::optional<AssertionCategory> category;
        bool chainable = false;
        auto method_it = ctx_.catalog.assertion_methods.find(e->name);
        if (recv.assertion_chain) {
            auto chain_it = ctx_.catalog.chain_methods.find(e->name);
            if (chain_it != ctx_.catalog.chain_methods.end()) {
                is_assertion = true;
                category = chain_it->second;
                chainable = true;
            }
        }
        if (!is_assertion && recv.is_type_name && is_assertion_receiver(recv.type_ref)) {
            is_assertion = true;
            category = method_it != ctx_.catalog.assertion_methods.end()
                           ? method_it->second
                           : AssertionCategory::Other;
            chainable = e->name == "assertThat" || e->name == "assertWithMessage";
        }
        if (is_assertion && (e->name == "assertEquals" || e->name == "assertNotEquals") &&
            e->args.size() == 3 &&
            std::any_of(e->args.begin(), e->args.end(),
                        [](const auto& a) { return is_float_literal(a.get()); }))
            category = AssertionCategory::NumericTolerance;

        LinearEntity le;
        le.entity.kind = is_assertion ? EntityKind::Assertion : EntityKind::MethodCall;
        le.entity.method_name = e->name;
        le.entity.arg_count = static_cast<int>(e->args.size());
        le.entity.assertion_category = category;
        le.entity.source_position = to_position(e->pos);
        le.site = site;
        le.receiver_var = recv.root_var;
        le.receiver_entity = recv.tail;
        consume(recv.tail);
        le.receiver_is_static_type = recv.is_type_name;
        le.arg_value_entities = std::move(facts.value_entities);
        le.arg_var_names = std::move(facts.var_names);
        le.literal_string_args = std::move(facts.literal_strings);

        if (recv.is_type_name) {
            le.entity.receiver_type = recv.type_ref;
        } else if (recv.tail < 0 && !recv.root_var.empty()) {
            auto it = out_.var_types.find(recv.root_var);
            if (it != out_.var_types.end()) le.entity.receiver_type = it->second;
        }

        if (is_assertion) {
            le.entity.classification = CallClassification::Assertion;
        } else {
            const TypeRef& rt = le.entity.receiver_type;
            if (rt.resolved && ctx_.project.has_type(rt.fqn)) {
                bool test_side = ctx_.project.types.at(rt.fqn).in_test_path;
                le.entity.classification = test_side ? CallClassification::Unresolved
                                                     : CallClassification::ApplicationCall;
            } else if (rt.resolved) {
                le.entity.classification = CallClassification::LibraryCall;
            } else {
                le.entity.classification = CallClassification::Unresolved;
            }
        }

        // mock creation detection
        bool mockish_receiver =
            recv.is_type_name &&
            ctx_.catalog.mock_receiver_frameworks.count(recv.type_ref.name) != 0;
        auto mock_it = ctx_.catalog.mock_methods.find(e->name);
        if (mock_it != ctx_.catalog.mock_methods.end() &&
            (bare || mockish_receiver)) {
            MockUse use;
            if (!e->args.empty() && e->args[0] &&
                e->args[0]->kind == ExprKind::ClassLiteral)
                use.mocked_type = resolve_ref(e->args[0]->type_name);
            use.framework_id = mockish_receiver
                                   ? ctx_.catalog.mock_receiver_frameworks.at(recv.type_ref.name)
                                   : mock_it->second;
            use.site = site;
            use.mocked_type_origin = classify_type_origin(use.mocked_type, ctx_.project);
            use.source_position = to_position(e->pos);
            out_.mocks.push_back(use);
            le.is_mock_creation = true;
            if (use.mocked_type.resolved || !use.mocked_type.name.empty())
                le.entity.receiver_type = use.mocked_type;  // value type of mock()
        }

        int idx = emit(std::move(le));
        ExprResult r;
        r.tail = idx;
        r.root_var = recv.root_var;
        r.assertion_chain = chainable;
        return r;
    }

    ExprResult walk_creation(const Expr* e, MockSite site) {
        TypeRef type = resolve_ref(e->type_name);
        auto facts = walk_args(e->args, site);
        LinearEntity le;
        le.entity.kind = EntityKind::ConstructorCall;
        le.entity.method_name = java::simple_type_name(java::erase_generics(e->type_name));
        le.entity.receiver_type = type;
        le.entity.arg_count = static_cast<int>(e->args.size());
        le.entity.classification = CallClassification::Constructor;
        le.entity.source_position = to_position(e->pos);
        le.site = site;
        le.arg_value_entities = std::move(facts.value_entities);
        le.arg_var_names = std::move(facts.var_names);
        le.literal_string_args = std::move(facts.literal_strings);
        out_.objects_created += 1;
        int idx = emit(std::move(le));
        if (e->anon_body) {
            for (const auto& blk : e->anon_body->initializer_blocks)
                walk_stmt(blk.get(), site);
            for (const auto& field : e->anon_body->fields)
                if (field.initializer) (void)walk_expr(field.initializer.get(), site);
        }
        ExprResult r;
        r.tail = idx;
        return r;
    }

    ExprResult walk_method_ref(const Expr* e, MockSite site) {
        ExprResult recv;
        if (e->target && e->target->kind != ExprKind::This &&
            e->target->kind != ExprKind::Super)
            recv = walk_expr(e->target.get(), site);
        LinearEntity le;
        le.entity.kind = EntityKind::MethodReference;
        le.entity.method_name = e->name;
        le.entity.source_position = to_position(e->pos);
        le.site = site;
        le.receiver_var = recv.root_var;
        if (recv.is_type_name) {
            le.entity.receiver_type = recv.type_ref;
            le.receiver_is_static_type = true;
        } else if (!recv.root_var.empty()) {
            auto it = out_.var_types.find(recv.root_var);
            if (it != out_.var_types.end()) le.entity.receiver_type = it->second;
        }
        const TypeRef& rt = le.entity.receiver_type;
        if (rt.resolved && ctx_.project.has_type(rt.fqn)) {
            bool test_side = ctx_.project.types.at(rt.fqn).in_test_path;
            le.entity.classification = test_side ? CallClassification::Unresolved
                                                 : CallClassification::ApplicationCall;
        } else if (rt.resolved) {
            le.entity.classification = CallClassification::LibraryCall;
        } else {
            le.entity.classification = CallClassification::Unresolved;
        }
        emit(std::move(le));
        return {};
    }

    ExprResult walk_expr(const Expr* e, MockSite site) {
        if (!e) return {};
        switch (e->kind) {
            case ExprKind::Literal:
                if (is_string_literal(e))
                    out_.string_literals.push_back({e->pos, e->name, site});
                return {};
            case ExprKind::Name:
                return resolve_plain_name(e->name);
            case ExprKind::This:
            case ExprKind::Super:
                return {};
            case ExprKind::FieldAccess: {
                if (e->target && e->target->kind == ExprKind::This) {
                    ExprResult r;
                    r.root_var = e->name;
                    r.var_name = e->name;
                    return r;
                }
                return walk_dotted(e, site);
            }
            case ExprKind::MethodCall:
                return walk_call(e, site);
            case ExprKind::ObjectCreation:
                return walk_creation(e, site);
            case ExprKind::ArrayCreation:
                (void)walk_args(e->args, site);
                return {};
            case ExprKind::MethodRef:
                return walk_method_ref(e, site);
            case ExprKind::Lambda:
                if (e->target) (void)walk_expr(e->target.get(), site);
                if (e->body) walk_stmt(e->body.get(), site);
                return {};
            case ExprKind::Binary:
            case ExprKind::ArrayAccess:
            case ExprKind::InstanceOf:
                (void)walk_expr(e->target.get(), site);
                (void)walk_expr(e->rhs.get(), site);
                return {};
            case ExprKind::Unary:
                (void)walk_expr(e->target.get(), site);
                return {};
            case ExprKind::Assign: {
                std::string var;
                if (e->target) {
                    if (e->target->kind == ExprKind::Name) {
                        var = e->target->name;
                    } else if (e->target->kind == ExprKind::FieldAccess && e->target->target &&
                               e->target->target->kind == ExprKind::This) {
                        var = e->target->name;
                    } else {
                        (void)walk_expr(e->target.get(), site);
                    }
                }
                auto res = walk_expr(e->rhs.get(), site);
                bool untyped = var.empty() || !out_.var_types.count(var) ||
                               !out_.var_types[var].resolved;
                bind_value(var, res, untyped);
                return {};
            }
            case ExprKind::Ternary:
                (void)walk_expr(e->cond.get(), site);
                (void)walk_expr(e->target.get(), site);
                (void)walk_expr(e->rhs.get(), site);
                return {};
            case ExprKind::Cast:
                return walk_expr(e->target.get(), site);
            case ExprKind::ClassLiteral:
                return {};
            case ExprKind::ArrayInit:
                (void)walk_args(e->args, site);
                return {};
            case ExprKind::SwitchExpr:
                if (e->body) walk_stmt(e->body.get(), site);
                return {};
            case ExprKind::Unknown:
            default:
                (void)walk_expr(e->target.get(), site);
                (void)walk_expr(e->rhs.get(), site);
                (void)walk_expr(e->cond.get(), site);
                (void)walk_args(e->args, site);
                return {};
        }
    }

    void walk_local_var(const Stmt* s, MockSite site) {
        TypeRef declared = resolve_ref(s->declared_type);
        bool declared_is_var = s->declared_type == "var" || !declared.resolved;
        std::vector<std::string> names;
        names.push_back(s->name);
        names.insert(names.end(), s->extra_names.begin(), s->extra_names.end());
        for (size_t i = 0; i < names.size(); ++i) {
            if (!names[i].empty() && (!declared.name.empty()))
                out_.var_types[names[i]] = declared;
            if (i < s->exprs.size() && s->exprs[i]) {
                if (is_string_literal(s->exprs[i].get()))
                    out_.string_literals.push_back({s->exprs[i]->pos, s->exprs[i]->name, site});
                auto res = walk_expr(s->exprs[i].get(), site);
                bind_value(names[i], res, declared_is_var);
            }
        }
    }

    void walk_stmt(const Stmt* s, MockSite site) {
        if (!s) return;
        switch (s->kind) {
            case StmtKind::LocalVar:
                walk_local_var(s, site);
                return;
            case StmtKind::DoWhile:
                for (const auto& c : s->stmts) walk_stmt(c.get(), site);
                for (const auto& e : s->exprs) (void)walk_expr(e.get(), site);
                return;
            case StmtKind::ForEach:
                if (!s->name.empty()) out_.var_types[s->name] = resolve_ref(s->declared_type);
                for (const auto& e : s->exprs) (void)walk_expr(e.get(), site);
                for (const auto& c : s->stmts) walk_stmt(c.get(), site);
                return;
            case StmtKind::For:
                if (s->stmts.size() > 1) walk_stmt(s->stmts.front().get(), site);
                for (const auto& e : s->exprs) (void)walk_expr(e.get(), site);
                if (!s->stmts.empty()) walk_stmt(s->stmts.back().get(), site);
                return;
            default:
                for (const auto& e : s->exprs) {
                    if (is_string_literal(e.get()))
                        out_.string_literals.push_back({e->pos, e->name, site});
                    (void)walk_expr(e.get(), site);
                }
                for (const auto& c : s->stmts) walk_stmt(c.get(), site);
                return;
        }
    }

    const BodyContext& ctx_;
    MockSite root_site_;
    BodySequence& out_;
    std::set<std::string> active_;
    bool junit3_ = false;
};

}  // namespace

BodySequence analyze_body(const java::MethodModel& method, MockSite root_site,
                          const BodyContext& ctx) {
    BodySequence out;
    Walker walker(ctx, root_site, out);
    walker.walk_method_body(method, root_site);
    return out;
}

BodySequence analyze_field_initializers(const BodyContext& ctx, MockSite site) {
    BodySequence out;
    Walker walker(ctx, site, out);
    walker.walk_field_initializers(site);
    return out;
}

std::vector<InvocationEntity> entity_list(const BodySequence& seq) {
    std::vector<InvocationEntity> out;
    out.reserve(seq.entities.size());
    for (const auto& le : seq.entities) out.push_back(le.entity);
    return out;
}

std::vector<CallAssertionSequence> partition_call_assertion(
    const std::vector<InvocationEntity>& sequence) {
    std::vector<CallAssertionSequence> out;
    int i = 0;
    const int n = static_cast<int>(sequence.size());
    while (i < n) {
        CallAssertionSequence s;
        while (i < n && sequence[static_cast<size_t>(i)].kind != EntityKind::Assertion)
            s.call_entities.push_back(i++);
        while (i < n && sequence[static_cast<size_t>(i)].kind == EntityKind::Assertion)
            s.assertion_entities.push_back(i++);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace hamster
