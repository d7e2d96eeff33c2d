#include <algorithm>

#include "gridstix/errors.hpp"
#include "gridstix/exporter/exporter.hpp"

namespace gridstix::exporter {

std::vector<TypeIR> build_ir(const schema::SchemaRegistry& registry) {
    std::vector<TypeIR> out;
    for (const auto& [name, descriptor] : registry.descriptors()) {
        TypeIR ir;
        ir.type_name = descriptor.type_name;
        ir.label = descriptor.label;
        ir.module = descriptor.module;
        ir.parent = descriptor.parent;
        ir.stix_base = descriptor.stix_base;

        // Parent chain, root first.
        std::vector<const schema::TypeDescriptor*> chain;
        for (const auto* d = &descriptor; d != nullptr;
             d = d->parent ? registry.find(*d->parent) : nullptr) {
            chain.push_back(d);
        }
        std::reverse(chain.begin(), chain.end());

        struct Resolved {
            std::string semantic_type;
            bool required;
        };
        std::map<std::string, Resolved> resolved;
        std::vector<std::string> order;
        for (const auto* d : chain) {
            auto absorb = [&](const std::vector<schema::PropertySpec>& specs,
                              bool required) {
                for (const auto& spec : specs) {
                    auto it = resolved.find(spec.name);
                    if (it == resolved.end()) {
                        resolved[spec.name] = {spec.semantic_type, required};
                        order.push_back(spec.name);
                    } else if (it->second.semantic_type != spec.semantic_type) {
                        throw CollisionError("type '" + name + "' redeclares property '" +
                                             spec.name + "' as '" + spec.semantic_type +
                                             "' over ancestor '" +
                                             it->second.semantic_type + "'");
                    } else {
                        it->second.required = it->second.required || required;
                    }
                }
            };
            absorb(d->required_properties, true);
            absorb(d->optional_properties, false);
        }
        for (const auto& prop_name : order) {
            const auto& r = resolved[prop_name];
            auto& bucket = r.required ? ir.resolved_required : ir.resolved_optional;
            bucket.push_back({prop_name, r.semantic_type});
        }

        for (const auto& [rel_name, constraint] : registry.constraints()) {
            RelationshipSlot slot;
            slot.relationship_type = rel_name;
            slot.as_source = std::find(constraint.allowed_sources.begin(),
                                       constraint.allowed_sources.end(),
                                       name) != constraint.allowed_sources.end();
            slot.as_target = std::find(constraint.allowed_targets.begin(),
                                       constraint.allowed_targets.end(),
                                       name) != constraint.allowed_targets.end();
            if (slot.as_source || slot.as_target) {
                ir.relationship_slots.push_back(std::move(slot));
            }
        }
        out.push_back(std::move(ir));
    }
    // descriptors() is an ordered map, so `out` is already lexicographic.
    return out;
}

}  // namespace gridstix::exporter
