#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "gridstix/analytics/analytics.hpp"
#include "gridstix/core/bundle.hpp"
#include "gridstix/errors.hpp"
#include "gridstix/exporter/exporter.hpp"
#include "gridstix/policy/policy.hpp"
#include "gridstix/redaction/redaction.hpp"
#include "gridstix/schema/registry.hpp"
#include "gridstix/validation/validator.hpp"

namespace {

using namespace gridstix;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct UsageFault : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageFault("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageFault("cannot open '" + path + "' for writing");
    out << content;
}

/// Bundles come from file arguments, or standard input when none are given.
std::vector<core::Bundle> read_bundles(const std::vector<std::string>& paths) {
    std::vector<core::Bundle> bundles;
    if (paths.empty()) {
        bundles.push_back(core::parse_bundle(read_input("-")));
        return bundles;
    }
    for (const auto& path : paths) {
        bundles.push_back(core::parse_bundle(read_input(path)));
    }
    return bundles;
}

schema::SchemaRegistry load_registry(const std::string& override_path) {
    std::vector<Json> docs;
    docs.push_back(Json::parse(schema::builtin_registry_document()));
    if (!override_path.empty()) {
        docs.push_back(Json::parse(read_input(override_path)));
    }
    return schema::SchemaRegistry::load(std::span<const Json>(docs));
}

core::StixId parse_id_arg(const std::string& text, const char* what) {
    auto id = core::StixId::split(text);
    if (!id) throw UsageFault(std::string(what) + " '" + text + "' is not a STIX id");
    return *id;
}

/// Merge inputs, then require an error-free validation before analytics.
core::Bundle validated_bundle(const std::vector<std::string>& paths,
                              const schema::SchemaRegistry& registry, int& exit_code) {
    auto bundles = read_bundles(paths);
    core::Bundle bundle =
        bundles.size() == 1 ? std::move(bundles.front()) : validation::merge_bundles(bundles);
    const auto report = validation::validate_bundle(bundle, registry);
    if (!report.passed()) {
        std::cerr << report.to_text();
        std::cerr << "bundle has validation errors; aborting\n";
        exit_code = kExitValidation;
    }
    return bundle;
}

std::string format_score(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

int run(int argc, char** argv) {
    CLI::App app{"Grid-STIX bundle toolkit: validation, threat-graph analytics, "
                 "Zero Trust policy evaluation, redaction, and schema/viz export"};
    app.require_subcommand(1);
    app.fallthrough();
    app.failure_message(CLI::FailureMessage::help);

    std::string registry_path;
    app.add_option("--registry", registry_path,
                   "Registry override file merged over the builtin registry");

    // validate
    auto* validate = app.add_subcommand("validate", "Run the V1-V7 validation stages");
    std::vector<std::string> validate_paths;
    bool allow_dangling = false;
    std::string validate_format = "text";
    validate->add_option("bundles", validate_paths, "Bundle files (stdin when omitted)");
    validate->add_flag("--allow-dangling", allow_dangling,
                       "Dangling references become warnings");
    validate->add_option("--format", validate_format, "text|structured")
        ->check(CLI::IsMember({"text", "structured"}));

    // merge
    auto* merge = app.add_subcommand("merge", "Merge bundles, latest modified wins");
    std::vector<std::string> merge_paths;
    std::string merge_out;
    merge->add_option("bundles", merge_paths, "Bundle files (stdin when omitted)");
    merge->add_option("--out", merge_out, "Output file")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Threat-graph analytics");
    analyze->require_subcommand(1);

    auto* cascade = analyze->add_subcommand("cascade", "Cascading impact scores");
    std::vector<std::string> cascade_paths;
    std::string cascade_seeds;
    int cascade_hops = 6;
    std::string cascade_format = "text";
    cascade->add_option("bundles", cascade_paths, "Bundle files (stdin when omitted)");
    cascade->add_option("--seeds", cascade_seeds, "Comma-separated seed ids")->required();
    cascade->add_option("--hops", cascade_hops, "Hop limit (default 6)");
    cascade->add_option("--format", cascade_format, "text|structured")
        ->check(CLI::IsMember({"text", "structured"}));

    auto* supply = analyze->add_subcommand("supply-chain", "Supply-chain risk aggregation");
    std::vector<std::string> supply_paths;
    std::string supply_root;
    std::string supply_format = "text";
    supply->add_option("bundles", supply_paths, "Bundle files (stdin when omitted)");
    supply->add_option("--root", supply_root, "Root component id")->required();
    supply->add_option("--format", supply_format, "text|structured")
        ->check(CLI::IsMember({"text", "structured"}));

    auto* paths_cmd = analyze->add_subcommand("attack-paths", "Attack path enumeration");
    std::vector<std::string> paths_paths;
    std::string paths_pattern;
    int paths_depth = 5;
    std::string paths_format = "text";
    paths_cmd->add_option("bundles", paths_paths, "Bundle files (stdin when omitted)");
    paths_cmd->add_option("--pattern", paths_pattern, "Attack pattern id")->required();
    paths_cmd->add_option("--max-depth", paths_depth, "Path length bound (default 5)");
    paths_cmd->add_option("--format", paths_format, "text|structured")
        ->check(CLI::IsMember({"text", "structured"}));

    auto* protection = analyze->add_subcommand("protection", "Unprotected grid assets");
    std::vector<std::string> protection_paths;
    std::string protection_format = "text";
    protection->add_option("bundles", protection_paths,
                           "Bundle files (stdin when omitted)");
    protection->add_option("--format", protection_format, "text|structured")
        ->check(CLI::IsMember({"text", "structured"}));

    // policy eval
    auto* policy_cmd = app.add_subcommand("policy", "Zero Trust policy decision point");
    policy_cmd->require_subcommand(1);
    auto* eval = policy_cmd->add_subcommand("eval", "Evaluate an access request");
    std::string rules_path, request_path, contexts_path;
    eval->add_option("--rules", rules_path, "Bundle of access/security policies")
        ->required();
    eval->add_option("--request", request_path, "Access request document")->required();
    eval->add_option("--contexts", contexts_path,
                     "Bundle holding the target and active context objects")
        ->required();

    // redact
    auto* redact = app.add_subcommand("redact", "Privacy-preserving bundle transform");
    std::vector<std::string> redact_paths;
    std::string profile_path, key_env, redact_out, map_out;
    redact->add_option("bundles", redact_paths, "Bundle files (stdin when omitted)");
    redact->add_option("--profile", profile_path, "Sharing profile file");
    redact->add_option("--key-env", key_env,
                       "Environment variable holding the pseudonym key")
        ->required();
    redact->add_option("--out", redact_out, "Output file (stdout when omitted)");
    redact->add_option("--map-out", map_out, "Write the pseudonym map to a file");

    // export
    auto* export_cmd = app.add_subcommand("export", "Generation pipeline");
    export_cmd->require_subcommand(1);
    auto* export_schema = export_cmd->add_subcommand("schema", "Per-type schema documents");
    std::string schema_out;
    export_schema->add_option("--out", schema_out, "Output directory")->required();
    auto* export_viz = export_cmd->add_subcommand("viz", "Self-contained HTML graph");
    std::vector<std::string> viz_paths;
    std::string viz_out;
    std::vector<std::string> viz_modules, viz_types;
    export_viz->add_option("bundles", viz_paths, "Bundle files (stdin when omitted)");
    export_viz->add_option("--out", viz_out, "Output file")->required();
    export_viz->add_option("--filter-module", viz_modules, "Keep only these modules");
    export_viz->add_option("--filter-type", viz_types, "Keep only these types");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const auto registry = load_registry(registry_path);

    if (*validate) {
        auto bundles = read_bundles(validate_paths);
        core::Bundle bundle = bundles.size() == 1 ? std::move(bundles.front())
                                                  : validation::merge_bundles(bundles);
        validation::ValidatorConfig config;
        config.allow_dangling = allow_dangling;
        const auto report = validation::validate_bundle(bundle, registry, config);
        if (validate_format == "structured") {
            std::cout << report.to_json().dump(2) << '\n';
        } else {
            std::cout << report.to_text();
            std::cout << (report.passed() ? "passed" : "failed") << " ("
                      << report.count(validation::Severity::error) << " errors, "
                      << report.count(validation::Severity::warning) << " warnings, "
                      << report.count(validation::Severity::info) << " infos)\n";
        }
        return report.passed() ? kExitOk : kExitValidation;
    }

    if (*merge) {
        auto bundles = read_bundles(merge_paths);
        const auto merged = validation::merge_bundles(bundles);
        write_output(merge_out, merged.serialize());
        return kExitOk;
    }

    if (*cascade) {
        int code = kExitOk;
        const auto bundle = validated_bundle(cascade_paths, registry, code);
        if (code != kExitOk) return code;
        const auto graph = analytics::ThreatGraph::build(bundle, registry);
        std::set<core::StixId> seeds;
        std::stringstream ss(cascade_seeds);
        std::string token;
        while (std::getline(ss, token, ',')) {
            if (!token.empty()) seeds.insert(parse_id_arg(token, "seed"));
        }
        if (seeds.empty()) throw UsageFault("--seeds lists no ids");
        const auto report = analytics::cascade_impact(graph, seeds, cascade_hops);
        if (cascade_format == "structured") {
            std::cout << report.to_json().dump(2) << '\n';
        } else {
            std::cout << "score     node\n";
            std::vector<std::pair<double, core::StixId>> rows;
            for (const auto& [id, score] : report.scores) rows.push_back({score, id});
            std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
                return a.first != b.first ? a.first > b.first : a.second < b.second;
            });
            for (const auto& [score, id] : rows) {
                std::printf("%-9s %s (%s)\n", format_score(score).c_str(),
                            id.str().c_str(), graph.node(id)->type_name.c_str());
            }
        }
        return kExitOk;
    }

    if (*supply) {
        int code = kExitOk;
        const auto bundle = validated_bundle(supply_paths, registry, code);
        if (code != kExitOk) return code;
        const auto graph = analytics::ThreatGraph::build(bundle, registry);
        const auto report = analytics::supply_chain_risk(
            graph, parse_id_arg(supply_root, "root"));
        if (supply_format == "structured") {
            std::cout << report.to_json().dump(2) << '\n';
        } else {
            std::cout << "aggregate risk\n";
            for (const auto& [id, risk] : report.aggregate_risk) {
                std::printf("  %-9s %s\n", format_score(risk).c_str(), id.str().c_str());
            }
            std::cout << "supplier shares (hhi " << format_score(report.hhi) << ")\n";
            for (const auto& [id, share] : report.supplier_shares) {
                std::printf("  %-9s %s\n", format_score(share).c_str(), id.str().c_str());
            }
            std::cout << "shared dependencies\n";
            for (const auto& id : report.shared_dependencies) {
                std::cout << "  " << id.str() << '\n';
            }
        }
        return kExitOk;
    }

    if (*paths_cmd) {
        int code = kExitOk;
        const auto bundle = validated_bundle(paths_paths, registry, code);
        if (code != kExitOk) return code;
        const auto graph = analytics::ThreatGraph::build(bundle, registry);
        const auto found = analytics::attack_paths(
            graph, parse_id_arg(paths_pattern, "pattern"),
            analytics::default_traversal_types(), paths_depth);
        if (paths_format == "structured") {
            std::cout << analytics::attack_paths_to_json(found).dump(2) << '\n';
        } else {
            for (const auto& path : found) {
                std::string line;
                for (const auto& [node, arrival] : path.steps) {
                    if (arrival != "entry") line += " -(" + arrival + ")-> ";
                    line += node.str();
                }
                std::cout << line << '\n';
            }
            std::cerr << found.size() << " path(s)\n";
        }
        return kExitOk;
    }

    if (*protection) {
        int code = kExitOk;
        const auto bundle = validated_bundle(protection_paths, registry, code);
        if (code != kExitOk) return code;
        const auto graph = analytics::ThreatGraph::build(bundle, registry);
        const auto unprotected = analytics::protection_coverage(graph);
        if (protection_format == "structured") {
            Json list = Json::array();
            for (const auto& id : unprotected) list.push_back(id.str());
            std::cout << list.dump(2) << '\n';
        } else {
            for (const auto& id : unprotected) {
                std::cout << id.str() << " (" << graph.node(id)->type_name << ")\n";
            }
            std::cerr << unprotected.size() << " unprotected asset(s)\n";
        }
        return kExitOk;
    }

    if (*eval) {
        const auto rules_bundle = core::parse_bundle(read_input(rules_path));
        const auto request = policy::AccessRequest::from_json(
            Json::parse(read_input(request_path)));
        int code = kExitOk;
        const auto env_bundle = validated_bundle({contexts_path}, registry, code);
        if (code != kExitOk) return code;
        const auto graph = analytics::ThreatGraph::build(env_bundle, registry);
        std::set<core::StixId> contexts;
        for (const auto& [id, node] : graph.nodes()) {
            const auto* d = registry.find(node.type_name);
            if (d != nullptr && schema::is_context_module(d->module)) contexts.insert(id);
        }
        const auto rules = policy::rules_from_bundle(rules_bundle, registry);
        const auto decision = policy::evaluate(request, rules, graph, contexts);
        std::cout << decision.to_json().dump(2) << '\n';
        return kExitOk;
    }

    if (*redact) {
        const char* key = std::getenv(key_env.c_str());
        if (key == nullptr || *key == '\0') {
            throw UsageFault("environment variable '" + key_env + "' is empty or unset");
        }
        redaction::SharingProfile profile;
        if (!profile_path.empty()) {
            profile = redaction::SharingProfile::from_json(Json::parse(
                read_input(profile_path)));
        }
        int code = kExitOk;
        const auto bundle = validated_bundle(redact_paths, registry, code);
        if (code != kExitOk) return code;
        const auto result = redaction::redact_bundle(bundle, profile, key, registry);
        write_output(redact_out, result.bundle.serialize());
        if (!map_out.empty()) {
            Json map_doc = Json::object();
            for (const auto& [from, to] : result.pseudonyms) {
                map_doc[from.str()] = to.str();
            }
            write_output(map_out, map_doc.dump(2) + "\n");
        }
        std::cerr << result.pseudonyms.size() << " object(s) pseudonymized\n";
        return kExitOk;
    }

    if (*export_schema) {
        const auto ir = exporter::build_ir(registry);
        const auto written = exporter::export_schemas(ir, registry, schema_out);
        std::cerr << written.size() << " schema document(s) written to " << schema_out
                  << '\n';
        return kExitOk;
    }

    if (*export_viz) {
        int code = kExitOk;
        const auto bundle = validated_bundle(viz_paths, registry, code);
        if (code != kExitOk) return code;
        const auto graph = analytics::ThreatGraph::build(bundle, registry);
        if (graph.nodes().empty()) {
            std::cerr << "warning: graph is empty; rendering a blank canvas\n";
        }
        exporter::VizOptions options;
        if (!viz_modules.empty()) {
            options.filter_modules =
                std::set<std::string>(viz_modules.begin(), viz_modules.end());
        }
        if (!viz_types.empty()) {
            options.filter_types = std::set<std::string>(viz_types.begin(), viz_types.end());
        }
        write_output(viz_out, exporter::export_viz(graph, options));
        return kExitOk;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageFault& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const EnvelopeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
