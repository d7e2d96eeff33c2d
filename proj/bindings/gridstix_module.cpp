#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gridstix/analytics/analytics.hpp"
#include "gridstix/core/bundle.hpp"
#include "gridstix/errors.hpp"
#include "gridstix/exporter/exporter.hpp"
#include "gridstix/policy/policy.hpp"
#include "gridstix/redaction/redaction.hpp"
#include "gridstix/schema/registry.hpp"
#include "gridstix/validation/validator.hpp"

namespace py = pybind11;
using namespace gridstix;

namespace {

py::object json_to_py(const Json& j) {
    switch (j.type()) {
        case Json::value_t::null:
            return py::none();
        case Json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case Json::value_t::number_integer:
            return py::int_(j.get<std::int64_t>());
        case Json::value_t::number_unsigned:
            return py::int_(j.get<std::uint64_t>());
        case Json::value_t::number_float:
            return py::float_(j.get<double>());
        case Json::value_t::string:
            return py::str(j.get<std::string>());
        case Json::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case Json::value_t::object: {
            py::dict out;
            for (const auto& [key, value] : j.items()) {
                out[py::str(key)] = json_to_py(value);
            }
            return out;
        }
        default:
            return py::none();
    }
}

Json py_to_json(py::handle h) {
    if (h.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(h)) return h.cast<bool>();
    if (py::isinstance<py::int_>(h)) return h.cast<std::int64_t>();
    if (py::isinstance<py::float_>(h)) return h.cast<double>();
    if (py::isinstance<py::str>(h)) return h.cast<std::string>();
    if (py::isinstance<py::dict>(h)) {
        Json out = Json::object();
        for (auto item : h.cast<py::dict>()) {
            out[item.first.cast<std::string>()] = py_to_json(item.second);
        }
        return out;
    }
    if (py::isinstance<py::list>(h) || py::isinstance<py::tuple>(h)) {
        Json out = Json::array();
        for (auto item : h.cast<py::sequence>()) out.push_back(py_to_json(item));
        return out;
    }
    throw py::type_error("value is not representable in the interchange format");
}

core::StixId id_arg(const std::string& text, const char* what) {
    auto id = core::StixId::split(text);
    if (!id) throw Error(std::string(what) + " '" + text + "' is not a STIX id");
    return *id;
}

std::set<core::StixId> id_set(const std::vector<std::string>& ids, const char* what) {
    std::set<core::StixId> out;
    for (const auto& text : ids) out.insert(id_arg(text, what));
    return out;
}

schema::SchemaRegistry make_registry(const py::object& overlay) {
    std::vector<Json> docs;
    docs.push_back(Json::parse(schema::builtin_registry_document()));
    if (!overlay.is_none()) docs.push_back(py_to_json(overlay));
    return schema::SchemaRegistry::load(std::span<const Json>(docs));
}

}  // namespace

PYBIND11_MODULE(_gridstix, m) {
    m.doc() = "Grid-STIX: STIX 2.1 grid-security bundles, validation, threat-graph "
              "analytics, Zero Trust policy evaluation, redaction, and export";

    auto base = py::register_exception<Error>(m, "GridStixError");
    py::register_exception<SyntaxError>(m, "BundleSyntaxError", base);
    py::register_exception<EnvelopeError>(m, "EnvelopeError", base);
    py::register_exception<TokenError>(m, "TokenError", base);
    py::register_exception<MergeConflictError>(m, "MergeConflictError", base);
    py::register_exception<CycleError>(m, "CycleError", base);
    py::register_exception<ProfileConflictError>(m, "ProfileConflictError", base);

    py::class_<core::Bundle>(m, "Bundle")
        .def_static("parse", [](const std::string& text) { return core::parse_bundle(text); },
                    py::arg("text"), "Parse a bundle document")
        .def("serialize", &core::Bundle::serialize, "Canonical serialization")
        .def("to_dict", [](const core::Bundle& b) { return json_to_py(b.to_json()); })
        .def_property_readonly("id", [](const core::Bundle& b) { return b.id().str(); })
        .def("__len__", &core::Bundle::size)
        .def("object_ids",
             [](const core::Bundle& b) {
                 std::vector<std::string> ids;
                 for (const auto& obj : b.objects()) ids.push_back(obj.id().str());
                 return ids;
             })
        .def("__eq__", [](const core::Bundle& a, const core::Bundle& b) { return a == b; })
        .def("__repr__", [](const core::Bundle& b) {
            return "<Bundle " + b.id().str() + " with " + std::to_string(b.size()) +
                   " object(s)>";
        });

    py::class_<schema::SchemaRegistry>(m, "SchemaRegistry")
        .def("is_subtype", &schema::SchemaRegistry::is_subtype, py::arg("a"), py::arg("b"))
        .def("vocab_check",
             [](const schema::SchemaRegistry& r, const std::string& vocab,
                const std::string& value) {
                 return r.vocab_check(vocab, value) == schema::VocabCheck::member
                            ? "member"
                            : "non-member-open";
             },
             py::arg("vocab"), py::arg("value"))
        .def("has_type",
             [](const schema::SchemaRegistry& r, const std::string& name) {
                 return r.find(name) != nullptr;
             })
        .def("type_names",
             [](const schema::SchemaRegistry& r) {
                 std::vector<std::string> names;
                 for (const auto& [name, d] : r.descriptors()) names.push_back(name);
                 return names;
             })
        .def("relationship_types",
             [](const schema::SchemaRegistry& r) {
                 std::vector<std::string> names;
                 for (const auto& [name, c] : r.constraints()) names.push_back(name);
                 return names;
             })
        .def("describe",
             [](const schema::SchemaRegistry& r, const std::string& name) -> py::object {
                 const auto* d = r.find(name);
                 if (d == nullptr) return py::none();
                 py::dict out;
                 out["type_name"] = d->type_name;
                 out["label"] = d->label;
                 out["module"] = std::string(schema::module_name(d->module));
                 out["stix_base"] = std::string(schema::stix_base_name(d->stix_base));
                 out["parent"] = d->parent ? py::object(py::str(*d->parent))
                                           : py::object(py::none());
                 return out;
             },
             py::arg("type_name"));

    m.def("builtin_registry", [] { return schema::builtin_registry(); },
          "The shipped Grid-STIX registry");
    m.def("load_registry", &make_registry, py::arg("overlay") = py::none(),
          "Builtin registry plus an optional overlay document");
    m.def("to_label", [](const std::string& name) { return core::to_label(name); },
          py::arg("kebab_name"));

    m.def("new_object",
          [](const std::string& object_type, const py::object& properties) {
              return json_to_py(
                  core::new_object(object_type, py_to_json(properties)).json());
          },
          py::arg("object_type"), py::arg("properties") = py::dict());
    m.def("make_relationship",
          [](const std::string& relationship_type, const std::string& source,
             const std::string& target, const py::object& properties) {
              return json_to_py(core::make_relationship(
                                    relationship_type, id_arg(source, "source"),
                                    id_arg(target, "target"), py_to_json(properties))
                                    .json());
          },
          py::arg("relationship_type"), py::arg("source"), py::arg("target"),
          py::arg("properties") = py::dict());
    m.def("bundle_from_objects",
          [](const py::sequence& objects) {
              std::vector<core::StixObject> objs;
              for (auto item : objects) {
                  objs.push_back(core::StixObject::from_json(py_to_json(item)));
              }
              return core::Bundle::create(std::move(objs));
          },
          py::arg("objects"));

    m.def("validate_bundle",
          [](const core::Bundle& bundle, const schema::SchemaRegistry& registry,
             bool allow_dangling) {
              validation::ValidatorConfig config;
              config.allow_dangling = allow_dangling;
              return json_to_py(
                  validation::validate_bundle(bundle, registry, config).to_json());
          },
          py::arg("bundle"), py::arg("registry"), py::arg("allow_dangling") = false);
    m.def("merge_bundles",
          [](const std::vector<core::Bundle>& bundles) {
              return validation::merge_bundles(bundles);
          },
          py::arg("bundles"));

    py::class_<analytics::ThreatGraph>(m, "ThreatGraph")
        .def_property_readonly("node_count",
                               [](const analytics::ThreatGraph& g) {
                                   return g.nodes().size();
                               })
        .def_property_readonly("edge_count",
                               [](const analytics::ThreatGraph& g) {
                                   return g.edges().size();
                               })
        .def("node_ids",
             [](const analytics::ThreatGraph& g) {
                 std::vector<std::string> ids;
                 for (const auto& [id, node] : g.nodes()) ids.push_back(id.str());
                 return ids;
             })
        .def("to_dict",
             [](const analytics::ThreatGraph& g) { return json_to_py(g.to_json()); });

    m.def("build_graph",
          [](const core::Bundle& bundle, const schema::SchemaRegistry& registry) {
              return analytics::ThreatGraph::build(bundle, registry);
          },
          py::arg("bundle"), py::arg("registry"));
    m.def("cascade_impact",
          [](const analytics::ThreatGraph& graph, const std::vector<std::string>& seeds,
             int hop_limit) {
              return json_to_py(
                  analytics::cascade_impact(graph, id_set(seeds, "seed"), hop_limit)
                      .to_json());
          },
          py::arg("graph"), py::arg("seeds"), py::arg("hop_limit") = 6);
    m.def("supply_chain_risk",
          [](const analytics::ThreatGraph& graph, const std::string& root,
             const py::dict& base_risk) {
              std::map<core::StixId, double> base;
              for (auto item : base_risk) {
                  base[id_arg(item.first.cast<std::string>(), "component")] =
                      item.second.cast<double>();
              }
              return json_to_py(
                  analytics::supply_chain_risk(graph, id_arg(root, "root"), base)
                      .to_json());
          },
          py::arg("graph"), py::arg("root"), py::arg("base_risk") = py::dict());
    m.def("attack_paths",
          [](const analytics::ThreatGraph& graph, const std::string& pattern,
             const py::object& traversal_types, int max_depth) {
              std::set<std::string> types = analytics::default_traversal_types();
              if (!traversal_types.is_none()) {
                  types = traversal_types.cast<std::set<std::string>>();
              }
              return json_to_py(analytics::attack_paths_to_json(analytics::attack_paths(
                  graph, id_arg(pattern, "pattern"), types, max_depth)));
          },
          py::arg("graph"), py::arg("pattern"), py::arg("traversal_types") = py::none(),
          py::arg("max_depth") = 5);
    m.def("protection_coverage",
          [](const analytics::ThreatGraph& graph) {
              std::vector<std::string> out;
              for (const auto& id : analytics::protection_coverage(graph)) {
                  out.push_back(id.str());
              }
              return out;
          },
          py::arg("graph"));

    m.def("evaluate_policy",
          [](const py::object& request, const core::Bundle& rules,
             const analytics::ThreatGraph& graph,
             const std::vector<std::string>& contexts) {
              const auto req = policy::AccessRequest::from_json(py_to_json(request));
              const auto parsed = policy::rules_from_bundle(rules, graph.registry());
              return json_to_py(
                  policy::evaluate(req, parsed, graph, id_set(contexts, "context"))
                      .to_json());
          },
          py::arg("request"), py::arg("rules"), py::arg("graph"), py::arg("contexts"));

    m.def("redact_bundle",
          [](const core::Bundle& bundle, const py::object& profile, const py::bytes& key,
             const schema::SchemaRegistry& registry) {
              redaction::SharingProfile prof;
              if (!profile.is_none()) {
                  prof = redaction::SharingProfile::from_json(py_to_json(profile));
              }
              const auto result = redaction::redact_bundle(
                  bundle, prof, std::string(key), registry);
              py::dict map;
              for (const auto& [from, to] : result.pseudonyms) {
                  map[py::str(from.str())] = to.str();
              }
              return py::make_tuple(result.bundle, map);
          },
          py::arg("bundle"), py::arg("profile"), py::arg("key"), py::arg("registry"));
    m.def("verify_topology",
          [](const core::Bundle& original, const core::Bundle& redacted,
             const py::dict& pseudonyms, const py::object& profile) {
              std::map<core::StixId, core::StixId> map;
              for (auto item : pseudonyms) {
                  map[id_arg(item.first.cast<std::string>(), "original id")] =
                      id_arg(item.second.cast<std::string>(), "pseudonym");
              }
              redaction::SharingProfile prof;
              if (!profile.is_none()) {
                  prof = redaction::SharingProfile::from_json(py_to_json(profile));
              }
              std::string diagnostic;
              const bool ok = redaction::verify_topology(original, redacted, map, prof,
                                                         &diagnostic);
              return py::make_tuple(ok, diagnostic);
          },
          py::arg("original"), py::arg("redacted"), py::arg("pseudonyms"),
          py::arg("profile") = py::none());

    m.def("schema_documents",
          [](const schema::SchemaRegistry& registry) {
              py::dict out;
              for (const auto& ir : exporter::build_ir(registry)) {
                  out[py::str(ir.type_name)] =
                      json_to_py(exporter::schema_document(ir, registry));
              }
              return out;
          },
          py::arg("registry"));
    m.def("export_schemas",
          [](const schema::SchemaRegistry& registry, const std::string& out_dir) {
              return exporter::export_schemas(exporter::build_ir(registry), registry,
                                              out_dir);
          },
          py::arg("registry"), py::arg("out_dir"));
    m.def("export_viz",
          [](const analytics::ThreatGraph& graph, const py::object& filter_modules,
             const py::object& filter_types) {
              exporter::VizOptions options;
              if (!filter_modules.is_none()) {
                  options.filter_modules = filter_modules.cast<std::set<std::string>>();
              }
              if (!filter_types.is_none()) {
                  options.filter_types = filter_types.cast<std::set<std::string>>();
              }
              return exporter::export_viz(graph, options);
          },
          py::arg("graph"), py::arg("filter_modules") = py::none(),
          py::arg("filter_types") = py::none());

    m.attr("__version__") = "0.1.0";
}
