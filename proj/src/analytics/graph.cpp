#include "gridstix/analytics/graph.hpp"

#include "gridstix/errors.hpp"

namespace gridstix::analytics {

using core::StixId;
using core::StixObject;

ThreatGraph ThreatGraph::build(const core::Bundle& bundle,
                               const schema::SchemaRegistry& registry) {
    ThreatGraph graph;
    graph.registry_ = registry;

    std::set<std::string> relationship_ids;
    for (const auto& obj : bundle.objects()) {
        if (obj.is_relationship()) {
            relationship_ids.insert(obj.id().str());
            continue;
        }
        // Later versions of an object overwrite earlier ones (canonical order).
        graph.nodes_[obj.id()] = GraphNode{obj.id(), obj.type(), obj.json()};
    }

    for (const auto& obj : bundle.objects()) {
        if (!obj.is_relationship()) continue;
        const auto rel_type = obj.relationship_type();
        if (!rel_type) {
            graph.notes_.push_back("relationship '" + obj.id().str() +
                                   "' has no relationship_type; skipped");
            continue;
        }
        const auto* constraint = registry.find_constraint(*rel_type);
        if (constraint == nullptr) {
            graph.notes_.push_back("relationship type '" + *rel_type +
                                   "' is not registered; edge '" + obj.id().str() +
                                   "' skipped");
            continue;
        }
        const auto source = obj.source_ref();
        const auto target = obj.target_ref();
        if (!source || !target) continue;  // envelope forbids this
        if (relationship_ids.count(source->str()) || relationship_ids.count(target->str())) {
            graph.notes_.push_back("edge '" + obj.id().str() +
                                   "' attaches to a relationship object; skipped");
            continue;
        }
        if (!graph.nodes_.count(*source) || !graph.nodes_.count(*target)) {
            throw GraphBuildError("relationship '" + obj.id().str() +
                                  "' references an object outside the bundle");
        }
        double amplification = constraint->default_amplification;
        if (const Json* amp = obj.find("amplification")) {
            if (amp->is_number()) {
                const double v = amp->get<double>();
                if (v >= 0.0 && v <= 1.0) {
                    amplification = v;
                } else {
                    graph.notes_.push_back("edge '" + obj.id().str() +
                                           "' amplification outside [0,1]; default used");
                }
            }
        }
        graph.edges_.push_back(GraphEdge{obj.id(), *rel_type, *source, *target,
                                         amplification, constraint->impact_direction});
    }
    return graph;
}

const GraphNode* ThreatGraph::node(const StixId& id) const {
    auto it = nodes_.find(id);
    return it == nodes_.end() ? nullptr : &it->second;
}

Json ThreatGraph::to_json() const {
    Json doc = Json::object();
    Json nodes = Json::array();
    for (const auto& [id, node] : nodes_) {
        Json n = Json::object();
        n["id"] = id.str();
        n["type"] = node.type_name;
        nodes.push_back(std::move(n));
    }
    Json edges = Json::array();
    for (const auto& e : edges_) {
        Json ed = Json::object();
        ed["id"] = e.edge_id.str();
        ed["relationship-type"] = e.relationship_type;
        ed["source"] = e.source.str();
        ed["target"] = e.target.str();
        ed["amplification"] = e.amplification;
        ed["impact-direction"] = std::string(schema::impact_direction_name(e.direction));
        edges.push_back(std::move(ed));
    }
    doc["nodes"] = std::move(nodes);
    doc["edges"] = std::move(edges);
    return doc;
}

}  // namespace gridstix::analytics
