#pragma once

// Independent oracles for the analytics and policy modules. Everything here
// is deliberately brute force and shares no traversal code with the library.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gridstix/analytics/analytics.hpp"
#include "gridstix/policy/policy.hpp"

namespace gstest {

using gridstix::core::StixId;
using gridstix::analytics::ThreatGraph;

/// Max product over all simple propagation paths of <= hop_limit edges,
/// found by exhaustive DFS over every path.
inline std::map<StixId, double> oracle_cascade(const ThreatGraph& graph,
                                               const std::set<StixId>& seeds,
                                               int hop_limit) {
    std::map<StixId, double> best;
    for (const auto& seed : seeds) best[seed] = 1.0;

    std::set<StixId> on_path;
    std::function<void(const StixId&, double, int)> walk = [&](const StixId& v,
                                                               double product, int used) {
        if (used >= hop_limit) return;
        for (const auto& e : graph.edges()) {
            if (!e.propagates() || !(e.propagation_source() == v)) continue;
            const StixId& next = e.propagation_target();
            if (on_path.count(next)) continue;
            const double p = product * e.amplification;
            if (p <= 0.0) continue;
            auto it = best.find(next);
            if (it == best.end() || it->second < p) best[next] = p;
            on_path.insert(next);
            walk(next, p, used + 1);
            on_path.erase(next);
        }
    };
    for (const auto& seed : seeds) {
        on_path = {seed};
        walk(seed, 1.0, 0);
    }
    return best;
}

using StepSequence = std::vector<std::pair<StixId, std::string>>;

/// Every simple step sequence from an entry-type node to a target-type node,
/// built by trying every (node, relationship type) extension rather than by
/// walking adjacency lists.
inline std::vector<StepSequence> oracle_attack_paths(
    const ThreatGraph& graph, const std::vector<std::string>& entry_types,
    const std::vector<std::string>& target_types,
    const std::set<std::string>& traversal_types, int max_depth) {
    const auto& registry = graph.registry();
    auto matches = [&](const StixId& id, const std::vector<std::string>& family) {
        const auto* node = graph.node(id);
        return std::any_of(family.begin(), family.end(), [&](const std::string& t) {
            return registry.is_subtype_safe(node->type_name, t);
        });
    };
    auto step_types = [&](const StixId& from, const StixId& to) {
        std::set<std::string> types;
        for (const auto& e : graph.edges()) {
            if (!e.propagates() || !traversal_types.count(e.relationship_type)) continue;
            if (e.propagation_target() == from && e.propagation_source() == to) {
                types.insert(e.relationship_type);
            }
        }
        return types;
    };

    std::vector<StepSequence> found;
    StepSequence steps;
    std::set<StixId> used;
    std::function<void(const StixId&)> extend = [&](const StixId& v) {
        if (matches(v, target_types)) found.push_back(steps);
        if (static_cast<int>(steps.size()) - 1 >= max_depth) return;
        for (const auto& [next_id, node] : graph.nodes()) {
            if (used.count(next_id)) continue;
            for (const auto& t : step_types(v, next_id)) {
                steps.push_back({next_id, t});
                used.insert(next_id);
                extend(next_id);
                used.erase(next_id);
                steps.pop_back();
            }
        }
    };
    for (const auto& [id, node] : graph.nodes()) {
        if (!matches(id, entry_types)) continue;
        steps = {{id, "entry"}};
        used = {id};
        extend(id);
    }
    std::sort(found.begin(), found.end());
    return found;
}

/// Direct recursive evaluation of the risk recurrence.
inline std::map<StixId, double> oracle_supply_risk(
    const ThreatGraph& graph, const StixId& root,
    const std::map<StixId, double>& base_risk) {
    std::map<StixId, std::set<StixId>> children;
    for (const auto& e : graph.edges()) {
        if (e.relationship_type == "contains" || e.relationship_type == "depends-on") {
            children[e.source].insert(e.target);
        }
    }
    auto base = [&](const StixId& c) -> double {
        auto it = base_risk.find(c);
        if (it != base_risk.end()) return it->second;
        double strongest = 0.0;
        for (const auto& e : graph.edges()) {
            const StixId* other = nullptr;
            if (e.source == c) other = &e.target;
            if (e.target == c) other = &e.source;
            if (other == nullptr) continue;
            const auto* n = graph.node(*other);
            if (n == nullptr || n->type_name != "supply-chain-risk") continue;
            auto score = n->properties.find("risk-score");
            if (score != n->properties.end() && score->is_number()) {
                strongest = std::max(strongest,
                                     std::min(1.0, std::max(0.0, score->get<double>())));
            }
        }
        return strongest;
    };
    std::map<StixId, double> out;
    std::function<double(const StixId&)> risk = [&](const StixId& c) -> double {
        double survive = 1.0 - base(c);
        for (const auto& child : children[c]) survive *= 1.0 - risk(child);
        out[c] = 1.0 - survive;
        return out[c];
    };
    risk(root);
    return out;
}

// ---- reference policy evaluator -----------------------------------------

using gridstix::policy::AccessRequest;
using gridstix::policy::Effect;
using gridstix::policy::FirmwareIntegrity;
using gridstix::policy::PolicyRule;

inline int effect_severity(Effect e) {
    switch (e) {
        case Effect::permit: return 0;
        case Effect::step_up_auth: return 1;
        case Effect::quarantine: return 2;
        case Effect::deny: return 3;
    }
    return 3;
}

struct ReferenceOutcome {
    Effect outcome;
    bool any_fired;
};

/// Straight-line restatement of the documented decision semantics over
/// pre-resolved target type and operational state.
inline ReferenceOutcome reference_policy(const AccessRequest& request,
                                         const std::vector<PolicyRule>& rules,
                                         const std::string& target_type,
                                         const StixId& target_id,
                                         const std::optional<std::string>& active_state,
                                         const gridstix::schema::SchemaRegistry& registry) {
    std::vector<Effect> fired;
    for (const auto& rule : rules) {
        bool in_scope = rule.applies_to_ids.count(target_id) > 0;
        for (const auto& t : rule.applies_to_types) {
            if (registry.is_subtype_safe(target_type, t)) in_scope = true;
        }
        if (!in_scope) continue;
        if (rule.privileges.count(request.privilege) == 0) continue;
        if (rule.conditions.operational_states) {
            if (!active_state) continue;
            if (rule.conditions.operational_states->count(*active_state) == 0) continue;
        }

        const bool weak_auth =
            (rule.conditions.min_auth_factors &&
             *rule.conditions.min_auth_factors > request.auth_factors) ||
            (rule.conditions.require_firmware_verified &&
             request.firmware_integrity != FirmwareIntegrity::verified);

        if (rule.effect == Effect::deny) {
            fired.push_back(Effect::deny);
        } else if (rule.effect == Effect::quarantine) {
            if (rule.conditions.on_anomaly && request.anomaly_flag) {
                fired.push_back(Effect::quarantine);
            }
        } else if (rule.effect == Effect::step_up_auth) {
            if (weak_auth) fired.push_back(Effect::step_up_auth);
        } else {  // permit
            if (weak_auth) {
                fired.push_back(Effect::step_up_auth);
            } else if (!rule.conditions.on_anomaly || request.anomaly_flag) {
                fired.push_back(Effect::permit);
            }
        }
    }
    if (fired.empty()) return {Effect::deny, false};
    Effect strongest = Effect::permit;
    for (Effect e : fired) {
        if (effect_severity(e) > effect_severity(strongest)) strongest = e;
    }
    return {strongest, true};
}

}  // namespace gstest
