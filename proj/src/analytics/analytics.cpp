#include "gridstix/analytics/analytics.hpp"

#include <algorithm>
#include <functional>

#include "gridstix/errors.hpp"

namespace gridstix::analytics {

using core::StixId;

Json ImpactReport::to_json() const {
    Json doc = Json::object();
    doc["hop-limit"] = hop_limit;
    Json seed_list = Json::array();
    for (const auto& s : seeds) seed_list.push_back(s.str());
    doc["seeds"] = std::move(seed_list);
    Json score_map = Json::object();
    for (const auto& [id, score] : scores) score_map[id.str()] = score;
    doc["scores"] = std::move(score_map);
    return doc;
}

ImpactReport cascade_impact(const ThreatGraph& graph, const std::set<StixId>& seeds,
                            int hop_limit) {
    if (hop_limit < 1) {
        throw Error("hop limit must be positive");
    }
    for (const auto& seed : seeds) {
        if (!graph.has_node(seed)) {
            throw UnknownSeedError("seed '" + seed.str() + "' is not a node");
        }
    }
    std::map<StixId, std::vector<const GraphEdge*>> out;
    for (const auto& e : graph.edges()) {
        if (e.propagates()) out[e.propagation_source()].push_back(&e);
    }

    // Layered relaxation: after layer h, best[v] is the maximum product over
    // propagation walks of at most h edges. Amplifications are <= 1, so the
    // optimum over walks equals the optimum over simple paths.
    std::map<StixId, double> best;
    std::set<StixId> frontier;
    for (const auto& seed : seeds) {
        best[seed] = 1.0;
        frontier.insert(seed);
    }
    for (int hop = 0; hop < hop_limit && !frontier.empty(); ++hop) {
        std::map<StixId, double> updates;
        for (const auto& v : frontier) {
            const double sv = best[v];
            auto it = out.find(v);
            if (it == out.end()) continue;
            for (const GraphEdge* e : it->second) {
                const double score = sv * e->amplification;
                if (score <= 0.0) continue;
                auto b = best.find(e->propagation_target());
                if (b != best.end() && b->second >= score) continue;
                auto u = updates.find(e->propagation_target());
                if (u == updates.end() || u->second < score) {
                    updates[e->propagation_target()] = score;
                }
            }
        }
        frontier.clear();
        for (const auto& [v, score] : updates) {
            auto b = best.find(v);
            if (b == best.end() || b->second < score) {
                best[v] = score;
                frontier.insert(v);
            }
        }
    }

    ImpactReport report;
    report.seeds = seeds;
    report.hop_limit = hop_limit;
    report.scores = std::move(best);
    return report;
}

Json RiskReport::to_json() const {
    Json doc = Json::object();
    Json risks = Json::object();
    for (const auto& [id, r] : aggregate_risk) risks[id.str()] = r;
    doc["aggregate-risk"] = std::move(risks);
    Json shares = Json::object();
    for (const auto& [id, s] : supplier_shares) shares[id.str()] = s;
    doc["supplier-shares"] = std::move(shares);
    doc["hhi"] = hhi;
    Json shared = Json::array();
    for (const auto& id : shared_dependencies) shared.push_back(id.str());
    doc["shared-dependencies"] = std::move(shared);
    return doc;
}

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

RiskReport supply_chain_risk(const ThreatGraph& graph, const StixId& root,
                             const std::map<StixId, double>& base_risk) {
    if (!graph.has_node(root)) {
        throw UnknownRootError("root '" + root.str() + "' is not a node");
    }

    // Declared-direction children over the dependency relationships.
    std::map<StixId, std::set<StixId>> children;
    for (const auto& e : graph.edges()) {
        if (e.relationship_type == "contains" || e.relationship_type == "depends-on") {
            children[e.source].insert(e.target);
        }
    }

    // Reachability with cycle detection (grey = on the current path).
    enum class Color { white, grey, black };
    std::map<StixId, Color> color;
    std::vector<StixId> stack;
    std::set<StixId> reachable;
    std::function<void(const StixId&)> visit = [&](const StixId& v) {
        color[v] = Color::grey;
        stack.push_back(v);
        reachable.insert(v);
        for (const auto& child : children[v]) {
            const Color c = color.count(child) ? color[child] : Color::white;
            if (c == Color::grey) {
                std::vector<std::string> witness;
                auto at = std::find(stack.begin(), stack.end(), child);
                for (; at != stack.end(); ++at) witness.push_back(at->str());
                witness.push_back(child.str());
                throw CycleError("contains/depends-on cycle under root '" + root.str() + "'",
                                 std::move(witness));
            }
            if (c == Color::white) visit(child);
        }
        stack.pop_back();
        color[v] = Color::black;
    };
    visit(root);

    // Base risk: explicit argument, else the strongest linked
    // supply-chain-risk object's risk-score.
    auto base_of = [&](const StixId& c) {
        auto it = base_risk.find(c);
        if (it != base_risk.end()) return clamp01(it->second);
        double strongest = 0.0;
        for (const auto& e : graph.edges()) {
            const StixId* other = nullptr;
            if (e.source == c) {
                other = &e.target;
            } else if (e.target == c) {
                other = &e.source;
            } else {
                continue;
            }
            const GraphNode* risk_node = graph.node(*other);
            if (risk_node == nullptr ||
                !graph.registry().is_subtype_safe(risk_node->type_name,
                                                  "supply-chain-risk")) {
                continue;
            }
            auto score_it = risk_node->properties.find("risk-score");
            if (score_it != risk_node->properties.end() && score_it->is_number()) {
                strongest = std::max(strongest, clamp01(score_it->get<double>()));
            }
        }
        return strongest;
    };

    RiskReport report;
    std::function<double(const StixId&)> risk_of = [&](const StixId& c) -> double {
        auto memo = report.aggregate_risk.find(c);
        if (memo != report.aggregate_risk.end()) return memo->second;
        double survival = 1.0 - base_of(c);
        for (const auto& child : children[c]) survival *= 1.0 - risk_of(child);
        const double risk = 1.0 - survival;
        report.aggregate_risk[c] = risk;
        return risk;
    };
    risk_of(root);

    // Supplier concentration over leaf attribution.
    std::map<StixId, double> counts;
    double total = 0.0;
    for (const auto& leaf : reachable) {
        if (!children[leaf].empty()) continue;
        for (const auto& e : graph.edges()) {
            if (e.relationship_type == "supplied-by" && e.source == leaf) {
                counts[e.target] += 1.0;
                total += 1.0;
            }
        }
    }
    if (total > 0.0) {
        for (const auto& [supplier, n] : counts) {
            const double share = n / total;
            report.supplier_shares[supplier] = share;
            report.hhi += share * share;
        }
    }

    // Components reachable through two or more distinct reachable parents.
    std::map<StixId, std::set<StixId>> parents;
    for (const auto& v : reachable) {
        for (const auto& child : children[v]) {
            if (reachable.count(child)) parents[child].insert(v);
        }
    }
    for (const auto& [v, ps] : parents) {
        if (ps.size() >= 2) report.shared_dependencies.insert(v);
    }
    return report;
}

Json attack_paths_to_json(const std::vector<AttackPath>& paths) {
    Json list = Json::array();
    for (const auto& path : paths) {
        Json p = Json::object();
        p["pattern"] = path.pattern.str();
        Json steps = Json::array();
        for (const auto& [node, arrival] : path.steps) {
            Json s = Json::object();
            s["node"] = node.str();
            s["arrival"] = arrival;
            steps.push_back(std::move(s));
        }
        p["steps"] = std::move(steps);
        list.push_back(std::move(p));
    }
    return list;
}

std::vector<AttackPath> attack_paths(const ThreatGraph& graph, const StixId& pattern,
                                     const std::set<std::string>& traversal_types,
                                     int max_depth) {
    if (max_depth < 1) {
        throw Error("max depth must be positive");
    }
    const GraphNode* pattern_node = graph.node(pattern);
    if (pattern_node == nullptr ||
        !graph.registry().is_subtype_safe(pattern_node->type_name, "grid-attack-pattern")) {
        throw UnknownPatternError("'" + pattern.str() +
                                  "' is not an attack-pattern object in the graph");
    }
    auto type_list = [&](const char* prop) {
        auto it = pattern_node->properties.find(prop);
        if (it == pattern_node->properties.end() || !it->is_array()) {
            throw MissingPatternPropertyError("attack pattern '" + pattern.str() +
                                              "' lacks list property '" + prop + "'");
        }
        std::vector<std::string> types;
        for (const auto& v : *it) {
            if (v.is_string()) types.push_back(v.get<std::string>());
        }
        return types;
    };
    const auto entry_types = type_list("entry-asset-types");
    const auto target_types = type_list("target-asset-types");

    auto matches_any = [&](const std::string& type_name,
                           const std::vector<std::string>& family) {
        return std::any_of(family.begin(), family.end(), [&](const std::string& t) {
            return graph.registry().is_subtype_safe(type_name, t);
        });
    };

    // Attackers move against the impact direction: from the controlled,
    // monitored, or dependent element toward what it answers to.
    std::map<StixId, std::vector<std::pair<StixId, std::string>>> reach;
    for (const auto& e : graph.edges()) {
        if (!e.propagates() || !traversal_types.count(e.relationship_type)) continue;
        reach[e.propagation_target()].push_back({e.propagation_source(),
                                                 e.relationship_type});
    }
    for (auto& [v, nexts] : reach) std::sort(nexts.begin(), nexts.end());

    std::vector<AttackPath> paths;
    std::set<std::vector<std::pair<StixId, std::string>>> seen;
    std::vector<std::pair<StixId, std::string>> steps;
    std::set<StixId> on_path;

    std::function<void(const StixId&)> extend = [&](const StixId& v) {
        if (matches_any(graph.node(v)->type_name, target_types) && !seen.count(steps)) {
            seen.insert(steps);
            paths.push_back(AttackPath{steps, pattern});
        }
        if (static_cast<int>(steps.size()) - 1 >= max_depth) return;
        auto it = reach.find(v);
        if (it == reach.end()) return;
        for (const auto& [next, rel_type] : it->second) {
            if (on_path.count(next)) continue;
            steps.push_back({next, rel_type});
            on_path.insert(next);
            extend(next);
            on_path.erase(next);
            steps.pop_back();
        }
    };

    for (const auto& [id, node] : graph.nodes()) {
        if (!matches_any(node.type_name, entry_types)) continue;
        steps = {{id, "entry"}};
        on_path = {id};
        extend(id);
    }

    std::sort(paths.begin(), paths.end(), [](const AttackPath& a, const AttackPath& b) {
        return a.steps < b.steps;
    });
    return paths;
}

std::set<StixId> protection_coverage(const ThreatGraph& graph) {
    std::set<StixId> protected_assets;
    for (const auto& e : graph.edges()) {
        if (e.relationship_type == "protects-asset") protected_assets.insert(e.target);
    }
    std::set<StixId> unprotected;
    for (const auto& [id, node] : graph.nodes()) {
        const bool grid_asset =
            graph.registry().is_subtype_safe(node.type_name, "physical-asset") ||
            graph.registry().is_subtype_safe(node.type_name, "grid-component");
        if (grid_asset && !protected_assets.count(id)) unprotected.insert(id);
    }
    return unprotected;
}

}  // namespace gridstix::analytics
