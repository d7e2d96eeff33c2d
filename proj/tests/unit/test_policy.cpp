#include <algorithm>

#include "doctest.h"

#include "gridstix/errors.hpp"
#include "gridstix/policy/policy.hpp"

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "../support/test_support.hpp"

using namespace gridstix;
using namespace gridstix::core;
using namespace gridstix::policy;
using analytics::ThreatGraph;

namespace {

const schema::SchemaRegistry& reg() { return schema::builtin_registry(); }

StixId fid(const std::string& type, unsigned n) {
    return *StixId::parse(type + "--" + gstest::uid(n));
}

/// Relay target plus one operational-context per state, plus a non-operational
/// context. Context activation is chosen per evaluation call.
ThreatGraph environment() {
    std::vector<Json> objects;
    objects.push_back(gstest::obj("protection-relay", 1,
                                  {{"protocols", Json::array({"DNP3"})}}));
    objects.push_back(gstest::obj("head-end-system", 2, {{"name", "head end"}}));
    objects.push_back(gstest::rel(3, "controls-relationship", objects[1], objects[0]));
    unsigned n = 10;
    for (const char* state : {"normal", "peak-demand", "maintenance", "emergency"}) {
        objects.push_back(gstest::obj("operational-context", n++,
                                      {{"operational-state", state}}));
    }
    objects.push_back(gstest::obj("cyber-context", 20, {{"network-segment", "ot"}}));
    return ThreatGraph::build(gstest::bundle_of(objects), reg());
}

PolicyRule rule(unsigned n, Effect effect, RuleConditions conditions = {},
                std::set<Privilege> privileges = {Privilege::operate}) {
    PolicyRule r;
    r.id = fid("access-policy", 100 + n);
    r.applies_to_types = {"ot-device"};
    r.privileges = std::move(privileges);
    r.conditions = std::move(conditions);
    r.effect = effect;
    return r;
}

AccessRequest request(Privilege privilege = Privilege::operate, int auth = 2,
                      FirmwareIntegrity integrity = FirmwareIntegrity::verified,
                      bool anomaly = false) {
    AccessRequest req;
    req.subject = fid("supplier", 90);
    req.target = fid("protection-relay", 1);
    req.privilege = privilege;
    req.auth_factors = auth;
    req.firmware_integrity = integrity;
    req.anomaly_flag = anomaly;
    req.at = *Timestamp::parse(gstest::kTs);
    return req;
}

}  // namespace

TEST_CASE("default deny") {
    const auto graph = environment();
    const auto decision = evaluate(request(), {}, graph, {});
    CHECK(decision.outcome == Effect::deny);
    CHECK(decision.matched_rules.empty());
}

TEST_CASE("applicable_rules") {
    const auto graph = environment();

    SUBCASE("no rules means nothing applies") {
        CHECK(applicable_rules(request(), {}, graph, {}).empty());
    }

    SUBCASE("subtype scope: ot-device rule covers a protection relay") {
        const auto rules = std::vector<PolicyRule>{
            rule(1, Effect::permit, {}, {Privilege::firmware_update})};
        const auto hits =
            applicable_rules(request(Privilege::firmware_update), rules, graph, {});
        CHECK(hits.size() == 1);
    }

    SUBCASE("privilege must match") {
        const auto rules = std::vector<PolicyRule>{
            rule(1, Effect::permit, {}, {Privilege::firmware_update})};
        CHECK(applicable_rules(request(Privilege::read), rules, graph, {}).empty());
    }

    SUBCASE("operational state condition gates applicability") {
        RuleConditions peak;
        peak.operational_states = {{"peak-demand"}};
        const auto rules = std::vector<PolicyRule>{rule(1, Effect::deny, peak)};
        CHECK(applicable_rules(request(), rules, graph,
                               {fid("operational-context", 10)})  // normal
                  .empty());
        CHECK(applicable_rules(request(), rules, graph,
                               {fid("operational-context", 11)})  // peak-demand
                  .size() == 1);
        // no active context at all: the conditioned rule does not apply
        CHECK(applicable_rules(request(), rules, graph, {}).empty());
    }

    SUBCASE("id scope") {
        PolicyRule r = rule(1, Effect::deny);
        r.applies_to_types.clear();
        r.applies_to_ids = {fid("protection-relay", 1)};
        CHECK(applicable_rules(request(), {r}, graph, {}).size() == 1);
        r.applies_to_ids = {fid("protection-relay", 99)};
        CHECK(applicable_rules(request(), {r}, graph, {}).empty());
    }

    SUBCASE("errors") {
        auto req = request();
        req.target = fid("protection-relay", 99);
        CHECK_THROWS_AS(applicable_rules(req, {}, graph, {}), UnknownTargetError);
        CHECK_THROWS_AS(applicable_rules(request(), {}, graph, {fid("cyber-context", 99)}),
                        UnknownContextError);
        CHECK_THROWS_AS(applicable_rules(request(), {}, graph,
                                         {fid("operational-context", 10),
                                          fid("operational-context", 11)}),
                        ConflictingContextsError);
        // a non-operational context alongside one operational context is fine
        CHECK_NOTHROW(applicable_rules(request(), {}, graph,
                                       {fid("operational-context", 10),
                                        fid("cyber-context", 20)}));
    }
}

TEST_CASE("spec examples") {
    const auto graph = environment();

    SUBCASE("permit rule short on auth escalates") {
        RuleConditions strong;
        strong.min_auth_factors = 2;
        const auto rules = std::vector<PolicyRule>{rule(1, Effect::permit, strong)};
        const auto decision = evaluate(request(Privilege::operate, 1), rules, graph, {});
        CHECK(decision.outcome == Effect::step_up_auth);
    }

    SUBCASE("quarantine outranks a satisfied permit") {
        RuleConditions on_anomaly;
        on_anomaly.on_anomaly = true;
        const auto rules = std::vector<PolicyRule>{
            rule(1, Effect::quarantine, on_anomaly),
            rule(2, Effect::permit),
        };
        const auto decision = evaluate(
            request(Privilege::operate, 2, FirmwareIntegrity::verified, true), rules,
            graph, {});
        CHECK(decision.outcome == Effect::quarantine);
        REQUIRE(decision.matched_rules.size() == 1);
        CHECK(decision.matched_rules.front() == fid("access-policy", 101));
    }

    SUBCASE("deny overrides everything") {
        const auto rules = std::vector<PolicyRule>{
            rule(1, Effect::permit),
            rule(2, Effect::deny),
        };
        CHECK(evaluate(request(), rules, graph, {}).outcome == Effect::deny);
    }

    SUBCASE("firmware verification gates a permit") {
        RuleConditions fw;
        fw.require_firmware_verified = true;
        const auto rules = std::vector<PolicyRule>{rule(1, Effect::permit, fw)};
        CHECK(evaluate(request(Privilege::operate, 2, FirmwareIntegrity::unverified),
                       rules, graph, {})
                  .outcome == Effect::step_up_auth);
        CHECK(evaluate(request(Privilege::operate, 2, FirmwareIntegrity::verified), rules,
                       graph, {})
                  .outcome == Effect::permit);
    }
}

TEST_CASE("rule order never changes the outcome") {
    const auto graph = environment();
    gstest::Rng rng(606);
    RuleConditions strong;
    strong.min_auth_factors = 2;
    RuleConditions on_anomaly;
    on_anomaly.on_anomaly = true;
    std::vector<PolicyRule> rules = {
        rule(1, Effect::permit, strong),
        rule(2, Effect::quarantine, on_anomaly),
        rule(3, Effect::step_up_auth, strong),
        rule(4, Effect::permit),
    };
    const auto req = request(Privilege::operate, 1, FirmwareIntegrity::verified, true);
    const auto baseline = evaluate(req, rules, graph, {});
    for (int i = 0; i < 20; ++i) {
        std::shuffle(rules.begin(), rules.end(), rng);
        const auto shuffled = evaluate(req, rules, graph, {});
        CHECK(shuffled.outcome == baseline.outcome);
        CHECK(shuffled.matched_rules == baseline.matched_rules);
    }
}

TEST_CASE("random rule sets agree with the reference evaluator") {
    const auto graph = environment();
    gstest::Rng rng(7777);

    const std::vector<std::optional<std::set<std::string>>> state_conditions = {
        std::nullopt, std::set<std::string>{"peak-demand"}};
    const std::vector<std::optional<int>> auth_conditions = {std::nullopt, 2};
    std::vector<PolicyRule> grid;
    unsigned n = 0;
    for (Effect effect : {Effect::permit, Effect::deny, Effect::quarantine,
                          Effect::step_up_auth}) {
        for (const auto& states : state_conditions) {
            for (const auto& auth : auth_conditions) {
                for (bool fw : {false, true}) {
                    for (bool anomaly : {false, true}) {
                        RuleConditions c;
                        c.operational_states = states;
                        c.min_auth_factors = auth;
                        c.require_firmware_verified = fw;
                        c.on_anomaly = anomaly;
                        grid.push_back(rule(n++, effect, c,
                                            {Privilege::operate,
                                             Privilege::firmware_update}));
                    }
                }
            }
        }
    }

    const std::vector<StixId> contexts = {
        fid("operational-context", 10), fid("operational-context", 11),
        fid("operational-context", 12), fid("operational-context", 13)};
    const std::vector<std::string> states = {"normal", "peak-demand", "maintenance",
                                             "emergency"};

    for (int trial = 0; trial < 4000; ++trial) {
        std::vector<PolicyRule> rules;
        for (int k = gstest::rand_int(rng, 0, 3); k > 0; --k) {
            rules.push_back(gstest::pick(rng, grid));
        }
        const int state_index = gstest::rand_int(rng, 0, 3);
        const auto req = request(
            static_cast<Privilege>(gstest::rand_int(rng, 0, 3)),
            gstest::rand_int(rng, 0, 2),
            static_cast<FirmwareIntegrity>(gstest::rand_int(rng, 0, 2)),
            gstest::rand_int(rng, 0, 1) == 1);
        const auto got = evaluate(req, rules, graph,
                                  {contexts[static_cast<std::size_t>(state_index)]});
        const auto want = gstest::reference_policy(
            req, rules, "protection-relay", req.target,
            states[static_cast<std::size_t>(state_index)], reg());
        CHECK(got.outcome == want.outcome);
        if (!want.any_fired) CHECK(got.matched_rules.empty());
    }
}

TEST_CASE("rules_from_bundle reads the fixture") {
    const auto rules = rules_from_bundle(gstest::load_fixture("policy_rules.json"), reg());
    REQUIRE(rules.size() == 3);
    bool saw_deny = false;
    for (const auto& r : rules) {
        if (r.effect == Effect::deny) {
            saw_deny = true;
            CHECK(r.conditions.operational_states ==
                  std::optional<std::set<std::string>>{{"peak-demand"}});
            CHECK(r.privileges == std::set<Privilege>{Privilege::firmware_update});
        }
    }
    CHECK(saw_deny);
}

TEST_CASE("condition soundness: permits only through satisfied permit rules") {
    const auto graph = environment();
    gstest::Rng rng(909);
    RuleConditions strong;
    strong.min_auth_factors = 1;
    for (int i = 0; i < 200; ++i) {
        std::vector<PolicyRule> rules;
        for (int k = gstest::rand_int(rng, 1, 3); k > 0; --k) {
            RuleConditions c;
            if (gstest::rand_int(rng, 0, 1)) c.min_auth_factors = gstest::rand_int(rng, 1, 3);
            c.require_firmware_verified = gstest::rand_int(rng, 0, 1) == 1;
            c.on_anomaly = gstest::rand_int(rng, 0, 1) == 1;
            rules.push_back(rule(static_cast<unsigned>(k), static_cast<Effect>(
                                     gstest::rand_int(rng, 0, 3)), c));
        }
        const auto req = request(Privilege::operate, gstest::rand_int(rng, 0, 2),
                                 static_cast<FirmwareIntegrity>(gstest::rand_int(rng, 0, 2)),
                                 gstest::rand_int(rng, 0, 1) == 1);
        const auto decision = evaluate(req, rules, graph, {});
        if (decision.outcome == Effect::permit) {
            bool justified = false;
            for (const auto& r : rules) {
                if (r.effect != Effect::permit) continue;
                const bool weak =
                    (r.conditions.min_auth_factors &&
                     *r.conditions.min_auth_factors > req.auth_factors) ||
                    (r.conditions.require_firmware_verified &&
                     req.firmware_integrity != FirmwareIntegrity::verified);
                if (!weak && (!r.conditions.on_anomaly || req.anomaly_flag)) {
                    justified = true;
                }
            }
            CHECK(justified);
        }
    }
}
