// SPDX-License-Identifier: Apache-2.0
#include "hamster/scope_analyzer.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace hamster {

namespace {

// One entity of the merged (context-then-test) sequence with global indices.
struct GlobalEntity {
    const LinearEntity* le = nullptr;
    int receiver = -1;
    std::vector<int> args;
};

bool is_accessor(const InvocationEntity& e) {
    return e.kind == EntityKind::MethodCall && e.arg_count == 0 &&
           (e.method_name.rfind("get", 0) == 0 || e.method_name.rfind("is", 0) == 0);
}

bool is_setter(const InvocationEntity& e) {
    return e.kind == EntityKind::MethodCall && e.arg_count == 1 &&
           e.method_name.rfind("set", 0) == 0;
}

class ScopeEngine {
  public:
    ScopeEngine(const BodySequence& test, const std::vector<const BodySequence*>& context,
                const ProjectModel& project, const FrameworkCatalog& catalog)
        : project_(project), catalog_(catalog) {
        for (const auto* seq : context) absorb(*seq);
        absorb(test);
        build_consumers();
    }

    ScopeResult run() {
        collect_candidates();
        propagate();
        return summarize();
    }

  private:
    struct Candidate {
        TypeRef type;
        bool exercises = false;
    };

    void absorb(const BodySequence& seq) {
        int base = static_cast<int>(entities_.size());
        for (const auto& le : seq.entities) {
            GlobalEntity g;
            g.le = &le;
            if (le.receiver_entity >= 0) g.receiver = le.receiver_entity + base;
            for (int a : le.arg_value_entities) g.args.push_back(a + base);
            entities_.push_back(std::move(g));
        }
        for (const auto& [var, type] : seq.var_types) var_types_.emplace(var, type);
        mock_vars_.insert(seq.mock_vars.begin(), seq.mock_vars.end());
    }

    void build_consumers() {
        consumers_.assign(entities_.size(), {});
        for (size_t i = 0; i < entities_.size(); ++i) {
            const auto& g = entities_[i];
            if (g.receiver >= 0) consumers_[static_cast<size_t>(g.receiver)].push_back(i);
            for (int a : g.args) consumers_[static_cast<size_t>(a)].push_back(i);
        }
    }

    // The analysis never treats testing-infrastructure types as candidates.
    bool is_framework_type(const TypeRef& type) const {
        if (!type.resolved) return false;
        for (const auto& fw : catalog_.frameworks)
            for (const auto& prefix : fw.prefixes)
                if (prefix_matches(prefix, type.fqn)) return true;
        for (const auto& r : catalog_.assertion_receivers)
            if (type.fqn == r) return true;
        return false;
    }

    // True when the value of entity `idx` reaches an assertion, following
    // receiver chains; argument flow into constructors or plain calls stops
    // (objects built solely to construct others are not focal).
    bool flows_to_assertion(size_t idx, std::set<size_t>& seen) const {
        if (!seen.insert(idx).second) return false;
        for (size_t c : consumers_[idx]) {
            const auto& consumer = entities_[c];
            if (consumer.le->entity.kind == EntityKind::Assertion) return true;
            if (consumer.receiver == static_cast<int>(idx) &&
                flows_to_assertion(c, seen))
                return true;
        }
        return false;
    }

    void collect_candidates() {
        for (size_t i = 0; i < entities_.size(); ++i) {
            const auto& le = *entities_[i].le;
            const auto& e = le.entity;
            bool creation = e.kind == EntityKind::ConstructorCall;
            bool static_call = e.kind == EntityKind::MethodCall &&
                               e.classification != CallClassification::Assertion &&
                               le.receiver_is_static_type;
            if (!creation && !static_call) continue;
            if (le.is_mock_creation || is_framework_type(e.receiver_type)) continue;
            if (!le.assigned_var.empty() && mock_vars_.count(le.assigned_var)) continue;

            if (static_call && !le.value_consumed) {
                // result unused: the void-static rule makes the declaring
                // class focal outright
                focal_types_.insert(e.receiver_type);
                continue;
            }
            if (!le.assigned_var.empty()) {
                auto [it, inserted] =
                    var_candidates_.try_emplace(le.assigned_var, Candidate{e.receiver_type});
                (void)it;
                (void)inserted;
            } else {
                entity_candidates_.emplace(i, Candidate{e.receiver_type});
            }
        }
    }

    bool var_exercised_once(const std::string& var) {
        for (size_t i = 0; i < entities_.size(); ++i) {
            const auto& le = *entities_[i].le;
            const auto& e = le.entity;
            if (le.receiver_var == var && e.kind == EntityKind::MethodCall &&
                e.classification != CallClassification::Assertion) {
                if (!is_accessor(e) && !is_setter(e)) return true;
                std::set<size_t> seen;
                if (is_accessor(e) && flows_to_assertion(i, seen)) return true;
            }
            if (std::find(le.arg_var_names.begin(), le.arg_var_names.end(), var) !=
                le.arg_var_names.end()) {
                if (e.kind == EntityKind::Assertion) return true;
                // argument to a call exercising a focal candidate
                if (!le.receiver_var.empty()) {
                    auto it = var_candidates_.find(le.receiver_var);
                    if (it != var_candidates_.end() && it->second.exercises) return true;
                }
            }
        }
        return false;
    }

    void propagate() {
        for (auto& [idx, cand] : entity_candidates_) {
            for (size_t c : consumers_[idx]) {
                const auto& consumer = entities_[c];
                if (consumer.receiver == static_cast<int>(idx) &&
                    consumer.le->entity.kind == EntityKind::MethodCall &&
                    consumer.le->entity.classification != CallClassification::Assertion &&
                    !is_accessor(consumer.le->entity) && !is_setter(consumer.le->entity)) {
                    cand.exercises = true;
                    break;
                }
            }
            if (!cand.exercises) {
                std::set<size_t> seen;
                cand.exercises = flows_to_assertion(idx, seen);
            }
        }
        // variable candidates need a fixpoint: promotion through arguments to
        // calls on already-exercising candidates
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& [var, cand] : var_candidates_) {
                if (cand.exercises) continue;
                if (var_exercised_once(var)) {
                    cand.exercises = true;
                    changed = true;
                }
            }
        }
        for (const auto& [var, cand] : var_candidates_)
            if (cand.exercises) focal_types_.insert(cand.type);
        for (const auto& [idx, cand] : entity_candidates_)
            if (cand.exercises) focal_types_.insert(cand.type);
    }

    bool receiver_prefix_match(const std::vector<std::string>& prefixes) const {
        for (const auto& g : entities_) {
            const TypeRef& t = g.le->entity.receiver_type;
            if (!t.resolved) continue;
            for (const auto& p : prefixes)
                if (prefix_matches(p, t.fqn)) return true;
        }
        return false;
    }

    std::string focal_signature(const TypeRef& owner, const std::string& name,
                                int arg_count) const {
        auto it = project_.types.find(owner.fqn);
        if (it != project_.types.end()) {
            const java::MethodModel* by_name = nullptr;
            int by_name_count = 0;
            for (const auto& m : it->second.decl->methods) {
                if (m.is_constructor || m.name != name) continue;
                if (static_cast<int>(m.parameters.size()) == arg_count) return m.signature();
                by_name = &m;
                ++by_name_count;
            }
            if (by_name_count == 1) return by_name->signature();
        }
        std::string args;
        for (int i = 0; i < arg_count; ++i) args += i ? ",?" : "?";
        return name + "(" + args + ")";
    }

    ScopeResult summarize() {
        std::set<TypeRef> app_focal, lib_focal;
        for (const auto& t : focal_types_) {
            if (!t.resolved) continue;
            auto it = project_.types.find(t.fqn);
            if (it != project_.types.end()) {
                if (!it->second.in_test_path) app_focal.insert(t);
            } else {
                lib_focal.insert(t);
            }
        }

        ScopeResult result;
        std::set<FocalMethod> methods;
        for (const auto& g : entities_) {
            const auto& e = g.le->entity;
            if (e.kind != EntityKind::MethodCall ||
                e.classification == CallClassification::Assertion)
                continue;
            if (!app_focal.count(e.receiver_type)) continue;
            if (is_accessor(e)) continue;
            methods.insert(FocalMethod{
                e.receiver_type, focal_signature(e.receiver_type, e.method_name, e.arg_count)});
        }
        result.focal_methods.assign(methods.begin(), methods.end());

        if (receiver_prefix_match(catalog_.ui_receivers)) {
            result.category = TestCategory::UI;
        } else if (receiver_prefix_match(catalog_.api_receivers)) {
            result.category = TestCategory::API;
        } else if (!app_focal.empty()) {
            result.category =
                app_focal.size() == 1 ? TestCategory::Unit : TestCategory::Integration;
        } else if (!lib_focal.empty()) {
            result.category = TestCategory::Library;
        } else {
            result.category = TestCategory::Unknown;
        }

        const auto& chosen = app_focal.empty() ? lib_focal : app_focal;
        result.focal_classes.assign(chosen.begin(), chosen.end());
        if (app_focal.empty()) result.focal_methods.clear();
        return result;
    }

    const ProjectModel& project_;
    const FrameworkCatalog& catalog_;
    std::vector<GlobalEntity> entities_;
    std::vector<std::vector<size_t>> consumers_;
    std::map<std::string, TypeRef> var_types_;
    std::set<std::string> mock_vars_;
    std::map<std::string, Candidate> var_candidates_;
    std::map<size_t, Candidate> entity_candidates_;
    std::set<TypeRef> focal_types_;
};

}  // namespace

ScopeResult infer_scope(const BodySequence& test,
                        const std::vector<const BodySequence*>& context,
                        const ProjectModel& project, const FrameworkCatalog& catalog) {
    return ScopeEngine(test, context, project, catalog).run();
}

}  // namespace hamster
