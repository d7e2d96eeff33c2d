#include "gridstix/policy/policy.hpp"

#include <algorithm>

#include "gridstix/errors.hpp"

namespace gridstix::policy {

using core::StixId;
using core::StixObject;

namespace {

constexpr std::pair<Privilege, std::string_view> kPrivileges[] = {
    {Privilege::read, "read"},
    {Privilege::operate, "operate"},
    {Privilege::configure, "configure"},
    {Privilege::firmware_update, "firmware-update"},
};

constexpr std::pair<FirmwareIntegrity, std::string_view> kIntegrities[] = {
    {FirmwareIntegrity::verified, "verified"},
    {FirmwareIntegrity::unverified, "unverified"},
    {FirmwareIntegrity::failed, "failed"},
};

constexpr std::pair<Effect, std::string_view> kEffects[] = {
    {Effect::permit, "permit"},
    {Effect::step_up_auth, "step-up-auth"},
    {Effect::quarantine, "quarantine"},
    {Effect::deny, "deny"},
};

}  // namespace

std::string_view privilege_name(Privilege p) {
    for (auto [v, n] : kPrivileges) {
        if (v == p) return n;
    }
    return "read";
}

std::optional<Privilege> privilege_from_name(std::string_view name) {
    for (auto [v, n] : kPrivileges) {
        if (n == name) return v;
    }
    return std::nullopt;
}

std::string_view integrity_name(FirmwareIntegrity i) {
    for (auto [v, n] : kIntegrities) {
        if (v == i) return n;
    }
    return "unverified";
}

std::optional<FirmwareIntegrity> integrity_from_name(std::string_view name) {
    for (auto [v, n] : kIntegrities) {
        if (n == name) return v;
    }
    return std::nullopt;
}

std::string_view effect_name(Effect e) {
    for (auto [v, n] : kEffects) {
        if (v == e) return n;
    }
    return "deny";
}

std::optional<Effect> effect_from_name(std::string_view name) {
    for (auto [v, n] : kEffects) {
        if (n == name) return v;
    }
    return std::nullopt;
}

AccessRequest AccessRequest::from_json(const Json& doc) {
    if (!doc.is_object()) {
        throw Error("access request is not a JSON object");
    }
    AccessRequest req;
    auto id_field = [&](const char* key) {
        auto it = doc.find(key);
        if (it == doc.end() || !it->is_string()) {
            throw Error(std::string("access request missing id '") + key + "'");
        }
        auto id = StixId::split(it->get<std::string>());
        if (!id) throw Error(std::string("access request '") + key + "' is not a STIX id");
        return *id;
    };
    req.subject = id_field("subject");
    req.target = id_field("target");
    auto priv_it = doc.find("privilege");
    if (priv_it == doc.end() || !priv_it->is_string()) {
        throw Error("access request missing 'privilege'");
    }
    auto priv = privilege_from_name(priv_it->get<std::string>());
    if (!priv) throw Error("unknown privilege '" + priv_it->get<std::string>() + "'");
    req.privilege = *priv;
    if (auto it = doc.find("auth-factors"); it != doc.end() && it->is_number_integer()) {
        req.auth_factors = it->get<int>();
        if (req.auth_factors < 0) throw Error("auth-factors must be non-negative");
    }
    if (auto it = doc.find("firmware-integrity"); it != doc.end() && it->is_string()) {
        auto integrity = integrity_from_name(it->get<std::string>());
        if (!integrity) {
            throw Error("unknown firmware-integrity '" + it->get<std::string>() + "'");
        }
        req.firmware_integrity = *integrity;
    }
    if (auto it = doc.find("anomaly"); it != doc.end() && it->is_boolean()) {
        req.anomaly_flag = it->get<bool>();
    }
    if (auto it = doc.find("at"); it != doc.end() && it->is_string()) {
        auto ts = core::Timestamp::parse(it->get<std::string>());
        if (!ts) throw Error("access request 'at' is not a canonical timestamp");
        req.at = *ts;
    }
    return req;
}

Json AccessRequest::to_json() const {
    Json doc = Json::object();
    doc["subject"] = subject.str();
    doc["target"] = target.str();
    doc["privilege"] = std::string(privilege_name(privilege));
    doc["auth-factors"] = auth_factors;
    doc["firmware-integrity"] = std::string(integrity_name(firmware_integrity));
    doc["anomaly"] = anomaly_flag;
    doc["at"] = at.str();
    return doc;
}

PolicyRule PolicyRule::from_object(const StixObject& obj) {
    PolicyRule rule;
    rule.id = obj.id();
    if (const Json* v = obj.find("applies-to-types"); v != nullptr && v->is_array()) {
        for (const auto& t : *v) {
            if (t.is_string()) rule.applies_to_types.insert(t.get<std::string>());
        }
    }
    if (const Json* v = obj.find("applies-to-ids"); v != nullptr && v->is_array()) {
        for (const auto& t : *v) {
            if (!t.is_string()) continue;
            if (auto id = StixId::split(t.get<std::string>())) {
                rule.applies_to_ids.insert(*id);
            }
        }
    }
    if (rule.applies_to_types.empty() && rule.applies_to_ids.empty()) {
        throw Error("policy '" + rule.id.str() +
                    "' scopes neither applies-to-types nor applies-to-ids");
    }
    const Json* privs = obj.find("privileges");
    if (privs == nullptr || !privs->is_array() || privs->empty()) {
        throw Error("policy '" + rule.id.str() + "' lists no privileges");
    }
    for (const auto& p : *privs) {
        auto priv = p.is_string() ? privilege_from_name(p.get<std::string>()) : std::nullopt;
        if (!priv) {
            throw Error("policy '" + rule.id.str() + "' lists an unknown privilege");
        }
        rule.privileges.insert(*priv);
    }
    const Json* effect_v = obj.find("effect");
    auto effect = effect_v != nullptr && effect_v->is_string()
                      ? effect_from_name(effect_v->get<std::string>())
                      : std::nullopt;
    if (!effect) {
        throw Error("policy '" + rule.id.str() + "' has no recognizable effect");
    }
    rule.effect = *effect;
    if (const Json* cond = obj.find("conditions"); cond != nullptr && cond->is_object()) {
        if (auto it = cond->find("operational-states"); it != cond->end() && it->is_array()) {
            std::set<std::string> states;
            for (const auto& s : *it) {
                if (s.is_string()) states.insert(s.get<std::string>());
            }
            rule.conditions.operational_states = std::move(states);
        }
        if (auto it = cond->find("min-auth-factors");
            it != cond->end() && it->is_number_integer()) {
            rule.conditions.min_auth_factors = it->get<int>();
        }
        if (auto it = cond->find("require-firmware-verified");
            it != cond->end() && it->is_boolean()) {
            rule.conditions.require_firmware_verified = it->get<bool>();
        }
        if (auto it = cond->find("on-anomaly"); it != cond->end() && it->is_boolean()) {
            rule.conditions.on_anomaly = it->get<bool>();
        }
    }
    return rule;
}

Json PolicyDecision::to_json() const {
    Json doc = Json::object();
    doc["outcome"] = std::string(effect_name(outcome));
    Json matched = Json::array();
    for (const auto& id : matched_rules) matched.push_back(id.str());
    doc["matched-rules"] = std::move(matched);
    doc["rationale"] = rationale;
    return doc;
}

namespace {

std::optional<std::string> active_operational_state(const analytics::ThreatGraph& graph,
                                                    const std::set<StixId>& contexts) {
    std::set<std::string> states;
    for (const auto& ctx : contexts) {
        const auto* node = graph.node(ctx);
        if (node == nullptr) {
            throw UnknownContextError("context '" + ctx.str() + "' is not in the graph");
        }
        if (!graph.registry().is_subtype_safe(node->type_name, "operational-context")) {
            continue;
        }
        auto it = node->properties.find("operational-state");
        if (it != node->properties.end() && it->is_string()) {
            states.insert(it->get<std::string>());
        }
    }
    if (states.size() > 1) {
        throw ConflictingContextsError(
            "multiple operational contexts declare conflicting states");
    }
    if (states.empty()) return std::nullopt;
    return *states.begin();
}

}  // namespace

std::vector<PolicyRule> applicable_rules(const AccessRequest& request,
                                         const std::vector<PolicyRule>& rules,
                                         const analytics::ThreatGraph& graph,
                                         const std::set<StixId>& contexts) {
    const auto* target = graph.node(request.target);
    if (target == nullptr) {
        throw UnknownTargetError("target '" + request.target.str() + "' is not in the graph");
    }
    const auto active_state = active_operational_state(graph, contexts);

    std::vector<PolicyRule> applicable;
    for (const auto& rule : rules) {
        const bool id_match = rule.applies_to_ids.count(request.target) > 0;
        const bool type_match = std::any_of(
            rule.applies_to_types.begin(), rule.applies_to_types.end(),
            [&](const std::string& t) {
                return graph.registry().is_subtype_safe(target->type_name, t);
            });
        if (!id_match && !type_match) continue;
        if (!rule.privileges.count(request.privilege)) continue;
        if (rule.conditions.operational_states) {
            if (!active_state || !rule.conditions.operational_states->count(*active_state)) {
                continue;
            }
        }
        applicable.push_back(rule);
    }
    return applicable;
}

PolicyDecision evaluate(const AccessRequest& request, const std::vector<PolicyRule>& rules,
                        const analytics::ThreatGraph& graph,
                        const std::set<StixId>& contexts) {
    const auto applicable = applicable_rules(request, rules, graph, contexts);

    auto auth_short = [&](const RuleConditions& c) {
        if (c.min_auth_factors && *c.min_auth_factors > request.auth_factors) return true;
        if (c.require_firmware_verified &&
            request.firmware_integrity != FirmwareIntegrity::verified) {
            return true;
        }
        return false;
    };

    struct Fired {
        Effect outcome;
        StixId rule_id;
        std::string reason;
    };
    std::vector<Fired> fired;
    for (const auto& rule : applicable) {
        switch (rule.effect) {
            case Effect::deny:
                fired.push_back({Effect::deny, rule.id, "deny rule applies"});
                break;
            case Effect::quarantine:
                if (rule.conditions.on_anomaly && request.anomaly_flag) {
                    fired.push_back({Effect::quarantine, rule.id,
                                     "anomaly triggered quarantine"});
                }
                break;
            case Effect::step_up_auth:
                if (auth_short(rule.conditions)) {
                    fired.push_back({Effect::step_up_auth, rule.id,
                                     "authentication below required strength"});
                }
                break;
            case Effect::permit:
                if (auth_short(rule.conditions)) {
                    fired.push_back({Effect::step_up_auth, rule.id,
                                     "permit degraded: authentication below required "
                                     "strength"});
                } else if (!rule.conditions.on_anomaly || request.anomaly_flag) {
                    fired.push_back({Effect::permit, rule.id, "permit conditions satisfied"});
                }
                break;
        }
    }

    PolicyDecision decision;
    if (fired.empty()) {
        decision.outcome = Effect::deny;
        decision.rationale.push_back("no applicable rule fired; default deny");
        return decision;
    }
    decision.outcome = Effect::permit;
    for (const auto& f : fired) {
        decision.outcome = std::max(decision.outcome, f.outcome);
    }
    for (const auto& f : fired) {
        if (f.outcome == decision.outcome) {
            decision.matched_rules.push_back(f.rule_id);
            decision.rationale.push_back(f.rule_id.str() + ": " + f.reason);
        }
    }
    std::sort(decision.matched_rules.begin(), decision.matched_rules.end());
    std::sort(decision.rationale.begin(), decision.rationale.end());
    return decision;
}

std::vector<PolicyRule> rules_from_bundle(const core::Bundle& bundle,
                                          const schema::SchemaRegistry& registry) {
    std::vector<PolicyRule> rules;
    for (const auto& obj : bundle.objects()) {
        if (!registry.is_subtype_safe(obj.type(), "security-policy")) continue;
        rules.push_back(PolicyRule::from_object(obj));
    }
    return rules;
}

}  // namespace gridstix::policy
