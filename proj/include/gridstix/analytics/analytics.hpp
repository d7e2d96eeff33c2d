#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gridstix/analytics/graph.hpp"

namespace gridstix::analytics {

struct ImpactReport {
    std::map<core::StixId, double> scores;  // (0,1]; absent = unreachable
    std::set<core::StixId> seeds;
    int hop_limit = 0;

    Json to_json() const;
};

/// Worst-chain compromise scores: score(v) is the maximum over propagation
/// paths of at most hop_limit edges from any seed to v of the product of
/// edge amplifications. Seeds score 1.0. Throws UnknownSeedError.
ImpactReport cascade_impact(const ThreatGraph& graph,
                            const std::set<core::StixId>& seeds, int hop_limit = 6);

struct RiskReport {
    std::map<core::StixId, double> aggregate_risk;
    std::map<core::StixId, double> supplier_shares;  // sums to 1 when non-empty
    double hhi = 0.0;                                // sum of squared shares
    std::set<core::StixId> shared_dependencies;

    Json to_json() const;
};

/// Fault-tree style aggregation over the contains/depends-on subtree under
/// root: risk(c) = 1 - (1 - base(c)) * prod over children (1 - risk(child)).
/// base(c) comes from the base_risk argument, else from a linked
/// supply-chain-risk object's risk-score, else 0. Supplier shares are counted
/// over leaf components' supplied-by attribution; hhi is their squared sum.
/// Throws UnknownRootError, CycleError (with a witness cycle).
RiskReport supply_chain_risk(const ThreatGraph& graph, const core::StixId& root,
                             const std::map<core::StixId, double>& base_risk = {});

struct AttackPath {
    /// (node, relationship type used to arrive); the first arrival is "entry".
    std::vector<std::pair<core::StixId, std::string>> steps;
    core::StixId pattern;
};

inline const std::set<std::string>& default_traversal_types() {
    static const std::set<std::string> types = {"controls-relationship",
                                                "monitors-relationship", "depends-on",
                                                "grid-synchronization"};
    return types;
}

/// All simple paths from nodes matching the pattern's entry-asset-types to
/// nodes matching its target-asset-types, walking traversal edges against
/// the impact direction (attackers climb from the edge toward what controls,
/// monitors, or underlies it), at most max_depth edges. Ordered
/// lexicographically by node id sequence. Throws UnknownPatternError,
/// MissingPatternPropertyError.
std::vector<AttackPath> attack_paths(
    const ThreatGraph& graph, const core::StixId& pattern,
    const std::set<std::string>& traversal_types = default_traversal_types(),
    int max_depth = 5);

Json attack_paths_to_json(const std::vector<AttackPath>& paths);

/// Physical/grid asset nodes that are the target of no protects-asset edge.
std::set<core::StixId> protection_coverage(const ThreatGraph& graph);

}  // namespace gridstix::analytics
