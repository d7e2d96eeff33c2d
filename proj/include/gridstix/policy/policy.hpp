#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gridstix/analytics/graph.hpp"
#include "gridstix/core/timestamp.hpp"

namespace gridstix::policy {

enum class Privilege { read, operate, configure, firmware_update };
enum class FirmwareIntegrity { verified, unverified, failed };
enum class Effect { permit, step_up_auth, quarantine, deny };  // ascending severity

std::string_view privilege_name(Privilege p);
std::optional<Privilege> privilege_from_name(std::string_view name);
std::string_view integrity_name(FirmwareIntegrity i);
std::optional<FirmwareIntegrity> integrity_from_name(std::string_view name);
std::string_view effect_name(Effect e);
std::optional<Effect> effect_from_name(std::string_view name);

struct AccessRequest {
    core::StixId subject;
    core::StixId target;
    Privilege privilege = Privilege::read;
    int auth_factors = 0;  // distinct verified factors
    FirmwareIntegrity firmware_integrity = FirmwareIntegrity::unverified;
    bool anomaly_flag = false;
    core::Timestamp at;

    static AccessRequest from_json(const Json& doc);
    Json to_json() const;
};

struct RuleConditions {
    std::optional<std::set<std::string>> operational_states;
    std::optional<int> min_auth_factors;
    bool require_firmware_verified = false;
    bool on_anomaly = false;
};

struct PolicyRule {
    core::StixId id;
    std::set<std::string> applies_to_types;
    std::set<core::StixId> applies_to_ids;
    std::set<Privilege> privileges;
    RuleConditions conditions;
    Effect effect = Effect::deny;

    /// Read a rule from an access-policy/security-policy object.
    static PolicyRule from_object(const core::StixObject& obj);
};

struct PolicyDecision {
    Effect outcome = Effect::deny;
    std::vector<core::StixId> matched_rules;  // rules whose outcome prevailed
    std::vector<std::string> rationale;

    Json to_json() const;
};

/// Rules whose target scope, privilege set, and operational-state condition
/// match the request. The active operational state comes from the single
/// operational-context among `contexts`; conflicting states are an error.
/// Throws UnknownTargetError, UnknownContextError, ConflictingContextsError.
std::vector<PolicyRule> applicable_rules(const AccessRequest& request,
                                         const std::vector<PolicyRule>& rules,
                                         const analytics::ThreatGraph& graph,
                                         const std::set<core::StixId>& contexts);

/// Default-deny combination, severity-ordered deny > quarantine >
/// step-up-auth > permit. Per applicable rule: deny always fires; quarantine
/// fires on a flagged anomaly when the rule is anomaly-triggered; step-up-auth
/// fires when the request's authentication strength falls short; permit fires
/// when every condition is satisfied (short authentication degrades a permit
/// to step-up-auth rather than silently not applying).
PolicyDecision evaluate(const AccessRequest& request, const std::vector<PolicyRule>& rules,
                        const analytics::ThreatGraph& graph,
                        const std::set<core::StixId>& contexts);

/// Extract rules from every access-policy/security-policy object in a bundle.
std::vector<PolicyRule> rules_from_bundle(const core::Bundle& bundle,
                                          const schema::SchemaRegistry& registry);

}  // namespace gridstix::policy
