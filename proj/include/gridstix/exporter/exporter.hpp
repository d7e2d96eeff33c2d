#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gridstix/analytics/graph.hpp"
#include "gridstix/schema/registry.hpp"

namespace gridstix::exporter {

struct RelationshipSlot {
    std::string relationship_type;
    bool as_source = false;  // this type is listed in the source union
    bool as_target = false;
};

/// One registered type with inheritance flattened: every ancestor property
/// appears exactly once, requiredness promoted on redeclaration.
struct TypeIR {
    std::string type_name;
    std::string label;
    schema::Module module = schema::Module::assets;
    std::optional<std::string> parent;
    schema::StixBase stix_base = schema::StixBase::none;
    std::vector<schema::PropertySpec> resolved_required;
    std::vector<schema::PropertySpec> resolved_optional;
    std::vector<RelationshipSlot> relationship_slots;
};

/// Flatten the registry into IR, ordered lexicographically by type name.
/// Throws CollisionError when a child redeclares an ancestor property with a
/// different semantic type.
std::vector<TypeIR> build_ir(const schema::SchemaRegistry& registry);

/// JSON Schema document for one type.
Json schema_document(const TypeIR& ir, const schema::SchemaRegistry& registry);

/// Write one "<type>.schema.json" per IR entry plus "index.json".
/// Regeneration is byte-identical for identical registries. Throws IoError.
/// Returns the written file names in order.
std::vector<std::string> export_schemas(const std::vector<TypeIR>& ir_list,
                                        const schema::SchemaRegistry& registry,
                                        const std::filesystem::path& out_directory);

struct VizOptions {
    std::optional<std::set<std::string>> filter_modules;
    std::optional<std::set<std::string>> filter_types;
};

/// Fixed 12-entry palette keyed by module tag.
std::string_view module_color(schema::Module m);

/// Self-contained HTML node-link document with client-side module/type
/// filtering; no external network resources. Nodes of unregistered types are
/// shown under the pseudo-module "unregistered" (and drop out when a module
/// filter is given). An empty graph still yields a valid document.
std::string export_viz(const analytics::ThreatGraph& graph, const VizOptions& options = {});

}  // namespace gridstix::exporter
