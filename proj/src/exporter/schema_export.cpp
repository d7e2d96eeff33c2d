#include <fstream>

#include "gridstix/errors.hpp"
#include "gridstix/exporter/exporter.hpp"

namespace gridstix::exporter {

namespace {

constexpr const char* kUuidPattern =
    "[0-9a-f]{8}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{12}";
constexpr const char* kTimestampPattern =
    "^[0-9]{4}-[0-9]{2}-[0-9]{2}T[0-9]{2}:[0-9]{2}:[0-9]{2}\\.[0-9]{3}Z$";

Json semantic_fragment(std::string_view semantic_type,
                       const schema::SchemaRegistry& registry) {
    std::string_view t = semantic_type;
    if (t.starts_with("list:")) {
        Json frag = Json::object();
        frag["type"] = "array";
        frag["items"] = semantic_fragment(t.substr(5), registry);
        return frag;
    }
    Json frag = Json::object();
    if (auto vocab = schema::vocabulary_of(t)) {
        frag["type"] = "string";
        frag["vocabulary"] = *vocab;
        const auto* v = registry.find_vocabulary(*vocab);
        if (v != nullptr) frag["examples"] = v->terms;  // open vocabulary, non-asserting
        return frag;
    }
    if (t == "string") {
        frag["type"] = "string";
    } else if (t == "integer") {
        frag["type"] = "integer";
    } else if (t == "number") {
        frag["type"] = "number";
    } else if (t == "fraction") {
        frag["type"] = "number";
        frag["minimum"] = 0;
        frag["maximum"] = 1;
    } else if (t == "boolean") {
        frag["type"] = "boolean";
    } else if (t == "timestamp") {
        frag["type"] = "string";
        frag["pattern"] = kTimestampPattern;
    } else if (t == "identifier") {
        frag["type"] = "string";
        frag["pattern"] = std::string("^[a-z][a-z0-9-]*[a-z0-9]--") + kUuidPattern + "$";
    } else {  // map
        frag["type"] = "object";
    }
    return frag;
}

}  // namespace

Json schema_document(const TypeIR& ir, const schema::SchemaRegistry& registry) {
    Json doc = Json::object();
    doc["$schema"] = "https://json-schema.org/draft/2020-12/schema";
    doc["$id"] = ir.type_name + ".schema.json";
    doc["title"] = ir.type_name;
    doc["type"] = "object";

    Json props = Json::object();
    props["type"] = Json{{"const", ir.type_name}};
    props["id"] = Json{{"type", "string"},
                       {"pattern", "^" + ir.type_name + "--" + kUuidPattern + "$"}};
    props["spec_version"] = Json{{"const", "2.1"}};
    props["created"] = Json{{"type", "string"}, {"pattern", kTimestampPattern}};
    props["modified"] = Json{{"type", "string"}, {"pattern", kTimestampPattern}};
    std::vector<std::string> required = {"type", "id", "spec_version", "created", "modified"};
    for (const auto& spec : ir.resolved_required) {
        props[spec.name] = semantic_fragment(spec.semantic_type, registry);
        required.push_back(spec.name);
    }
    for (const auto& spec : ir.resolved_optional) {
        props[spec.name] = semantic_fragment(spec.semantic_type, registry);
    }
    doc["properties"] = std::move(props);
    doc["required"] = required;

    doc["x-label"] = ir.label;
    doc["x-module"] = std::string(schema::module_name(ir.module));
    doc["x-stix-base"] = std::string(schema::stix_base_name(ir.stix_base));
    if (ir.parent) doc["x-parent"] = *ir.parent;
    Json slots = Json::array();
    for (const auto& slot : ir.relationship_slots) {
        Json s = Json::object();
        s["relationship-type"] = slot.relationship_type;
        Json roles = Json::array();
        if (slot.as_source) roles.push_back("source");
        if (slot.as_target) roles.push_back("target");
        s["roles"] = std::move(roles);
        slots.push_back(std::move(s));
    }
    doc["x-relationship-slots"] = std::move(slots);
    return doc;
}

std::vector<std::string> export_schemas(const std::vector<TypeIR>& ir_list,
                                        const schema::SchemaRegistry& registry,
                                        const std::filesystem::path& out_directory) {
    std::error_code ec;
    std::filesystem::create_directories(out_directory, ec);
    if (ec) {
        throw IoError("cannot create directory '" + out_directory.string() +
                      "': " + ec.message());
    }
    auto write = [&](const std::string& file_name, const Json& doc) {
        std::ofstream out(out_directory / file_name, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open '" + (out_directory / file_name).string() +
                          "' for writing");
        }
        out << doc.dump(2) << '\n';
        if (!out) {
            throw IoError("short write to '" + (out_directory / file_name).string() + "'");
        }
    };

    std::vector<std::string> written;
    Json index = Json::object();
    Json types = Json::object();
    for (const auto& ir : ir_list) {
        const std::string file_name = ir.type_name + ".schema.json";
        write(file_name, schema_document(ir, registry));
        written.push_back(file_name);
        Json entry = Json::object();
        entry["file"] = file_name;
        entry["module"] = std::string(schema::module_name(ir.module));
        if (ir.parent) entry["parent"] = *ir.parent;
        types[ir.type_name] = std::move(entry);
    }
    index["types"] = std::move(types);
    index["type-count"] = ir_list.size();

    Json relationships = Json::object();
    for (const auto& [name, c] : registry.constraints()) {
        Json entry = Json::object();
        entry["sources"] = c.allowed_sources;
        entry["targets"] = c.allowed_targets;
        entry["impact-direction"] = std::string(schema::impact_direction_name(
            c.impact_direction));
        entry["default-amplification"] = c.default_amplification;
        relationships[name] = std::move(entry);
    }
    index["relationships"] = std::move(relationships);

    Json vocabularies = Json::object();
    for (const auto& [name, v] : registry.vocabularies()) {
        Json entry = Json::object();
        entry["open"] = v.open;
        entry["terms"] = v.terms;
        vocabularies[name] = std::move(entry);
    }
    index["vocabularies"] = std::move(vocabularies);

    write("index.json", index);
    written.push_back("index.json");
    return written;
}

}  // namespace gridstix::exporter
