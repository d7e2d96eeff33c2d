#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gridstix/core/bundle.hpp"
#include "gridstix/schema/registry.hpp"

namespace gridstix::analytics {

struct GraphNode {
    core::StixId id;
    std::string type_name;
    Json properties;
};

struct GraphEdge {
    core::StixId edge_id;
    std::string relationship_type;
    core::StixId source;  // declared direction, kept for display
    core::StixId target;
    double amplification = 0.0;
    schema::ImpactDirection direction = schema::ImpactDirection::none;

    bool propagates() const { return direction != schema::ImpactDirection::none; }
    /// Compromise flows propagation_source -> propagation_target.
    const core::StixId& propagation_source() const {
        return direction == schema::ImpactDirection::reverse ? target : source;
    }
    const core::StixId& propagation_target() const {
        return direction == schema::ImpactDirection::reverse ? source : target;
    }
};

/// Directed multigraph over a bundle: one node per non-relationship object,
/// one edge per relationship object with a registered constraint. Immutable
/// after build; all analytics run read-only.
class ThreatGraph {
public:
    /// The bundle must already validate without errors; unresolvable edge
    /// endpoints throw GraphBuildError. Relationships of unregistered types
    /// (and edges onto relationship objects) are skipped with a note.
    static ThreatGraph build(const core::Bundle& bundle,
                             const schema::SchemaRegistry& registry);

    const std::map<core::StixId, GraphNode>& nodes() const { return nodes_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }
    const schema::SchemaRegistry& registry() const { return registry_; }
    const std::vector<std::string>& build_notes() const { return notes_; }

    bool has_node(const core::StixId& id) const { return nodes_.count(id) > 0; }
    const GraphNode* node(const core::StixId& id) const;

    Json to_json() const;

private:
    std::map<core::StixId, GraphNode> nodes_;
    std::vector<GraphEdge> edges_;
    schema::SchemaRegistry registry_;  // copied; graphs own their schema view
    std::vector<std::string> notes_;
};

}  // namespace gridstix::analytics
