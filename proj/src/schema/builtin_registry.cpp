#include "gridstix/schema/registry.hpp"

namespace gridstix::schema {

// Shipped registry data table. Override files use the same layout and are
// merged on top (same-name entries replace, new entries add).
//
// Impact direction and default amplification per relationship type:
//   feeds-power-to        forward 0.9    generates-power-for  forward 0.9
//   controls-relationship forward 0.8    monitors-relationship forward 0.3
//   protects-asset        forward 0.7    affects-operation-of forward 1.0
//   depends-on            reverse 0.85   contains             reverse 0.85
//   grid-synchronization  forward 0.5    protects-relationship none   0.0
// Values are tunable configuration; override files may replace them.
static const char kBuiltinRegistry[] = R"GRIDSTIX({
  "types": [
    {"name": "physical-asset", "module": "assets", "stix-base": "infrastructure",
     "required": [{"name": "name", "type": "string"}],
     "optional": [{"name": "description", "type": "string"},
                  {"name": "latitude", "type": "number"},
                  {"name": "longitude", "type": "number"},
                  {"name": "street-address", "type": "string"},
                  {"name": "serial-number", "type": "string"},
                  {"name": "operator", "type": "string"}]},
    {"name": "grid-component", "module": "assets", "stix-base": "infrastructure",
     "parent": "physical-asset",
     "optional": [{"name": "voltage-level", "type": "string"},
                  {"name": "firmware-version", "type": "string"},
                  {"name": "grid-domain", "type": "vocab:grid-domain"}]},
    {"name": "ot-device", "module": "assets", "stix-base": "software",
     "required": [{"name": "protocols", "type": "list:vocab:grid-protocol"}],
     "optional": [{"name": "name", "type": "string"},
                  {"name": "description", "type": "string"},
                  {"name": "firmware-version", "type": "string"},
                  {"name": "serial-number", "type": "string"},
                  {"name": "vendor", "type": "string"}]},

    {"name": "distributed-energy-resource", "module": "components",
     "stix-base": "infrastructure", "parent": "grid-component",
     "optional": [{"name": "capacity-mw", "type": "number"},
                  {"name": "der-kind", "type": "string"}]},
    {"name": "centralized-generation-facility", "module": "components",
     "stix-base": "infrastructure", "parent": "grid-component",
     "optional": [{"name": "capacity-mw", "type": "number"}]},
    {"name": "substation", "module": "components", "stix-base": "infrastructure",
     "parent": "grid-component",
     "optional": [{"name": "bay-count", "type": "integer"}]},
    {"name": "transformer", "module": "components", "stix-base": "infrastructure",
     "parent": "grid-component",
     "optional": [{"name": "rating-mva", "type": "number"}]},
    {"name": "transmission-line", "module": "components", "stix-base": "infrastructure",
     "parent": "grid-component",
     "optional": [{"name": "length-km", "type": "number"}]},
    {"name": "advanced-metering-infrastructure", "module": "components",
     "stix-base": "infrastructure", "parent": "grid-component"},
    {"name": "smart-meter", "module": "components", "stix-base": "infrastructure",
     "parent": "advanced-metering-infrastructure",
     "optional": [{"name": "protocols", "type": "list:vocab:grid-protocol"}]},
    {"name": "head-end-system", "module": "components", "stix-base": "infrastructure",
     "parent": "advanced-metering-infrastructure",
     "optional": [{"name": "protocols", "type": "list:vocab:grid-protocol"}]},
    {"name": "control-center", "module": "components", "stix-base": "infrastructure",
     "parent": "grid-component"},
    {"name": "protection-relay", "module": "components", "stix-base": "software",
     "parent": "ot-device",
     "optional": [{"name": "relay-function", "type": "string"}]},

    {"name": "relationship", "module": "relationships", "stix-base": "relationship",
     "required": [{"name": "relationship_type", "type": "string"}],
     "optional": [{"name": "amplification", "type": "fraction"},
                  {"name": "description", "type": "string"}]},

    {"name": "grid-attack-pattern", "module": "attack-patterns",
     "stix-base": "attack-pattern",
     "required": [{"name": "name", "type": "string"}],
     "optional": [{"name": "description", "type": "string"},
                  {"name": "technique", "type": "vocab:grid-attack-technique"},
                  {"name": "grid-domain", "type": "vocab:grid-domain"},
                  {"name": "entry-asset-types", "type": "list:string"},
                  {"name": "target-asset-types", "type": "list:string"},
                  {"name": "prerequisite-conditions", "type": "list:string"}]},
    {"name": "firmware-attack-pattern", "module": "attack-patterns",
     "stix-base": "attack-pattern", "parent": "grid-attack-pattern",
     "optional": [{"name": "target-firmware", "type": "string"}]},

    {"name": "supply-chain-risk", "module": "assets", "stix-base": "none",
     "required": [{"name": "risk-score", "type": "fraction"}],
     "optional": [{"name": "description", "type": "string"},
                  {"name": "country-of-origin", "type": "string"}]},
    {"name": "supplier", "module": "assets", "stix-base": "identity",
     "required": [{"name": "name", "type": "string"}],
     "optional": [{"name": "country", "type": "string"},
                  {"name": "tier", "type": "integer"}]},

    {"name": "security-policy", "module": "policies", "stix-base": "none",
     "required": [{"name": "effect", "type": "vocab:policy-effect"}],
     "optional": [{"name": "description", "type": "string"},
                  {"name": "applies-to-types", "type": "list:string"},
                  {"name": "applies-to-ids", "type": "list:identifier"},
                  {"name": "privileges", "type": "list:vocab:privilege"},
                  {"name": "conditions", "type": "map"}]},
    {"name": "access-policy", "module": "policies", "stix-base": "none",
     "parent": "security-policy",
     "required": [{"name": "privileges", "type": "list:vocab:privilege"}]},
    {"name": "policy-decision-point", "module": "policies", "stix-base": "software",
     "optional": [{"name": "name", "type": "string"}]},
    {"name": "policy-enforcement-point", "module": "policies", "stix-base": "software",
     "optional": [{"name": "name", "type": "string"}]},
    {"name": "trust-broker", "module": "policies", "stix-base": "software",
     "optional": [{"name": "name", "type": "string"}]},

    {"name": "telemetry-data", "module": "events-observables", "stix-base": "observed-data",
     "optional": [{"name": "protocol", "type": "vocab:grid-protocol"},
                  {"name": "measurement", "type": "string"},
                  {"name": "value", "type": "number"}]},
    {"name": "alarm-event", "module": "events-observables", "stix-base": "observed-data",
     "optional": [{"name": "alarm-kind", "type": "string"},
                  {"name": "severity", "type": "string"}]},
    {"name": "protocol-traffic", "module": "events-observables", "stix-base": "observed-data",
     "optional": [{"name": "protocol", "type": "vocab:grid-protocol"},
                  {"name": "packet-count", "type": "integer"}]},

    {"name": "nuclear-power-plant", "module": "nuclear-safeguards",
     "stix-base": "infrastructure", "parent": "centralized-generation-facility",
     "optional": [{"name": "reactor-kind", "type": "string"},
                  {"name": "safeguards-agreement", "type": "string"}]},
    {"name": "research-reactor", "module": "nuclear-safeguards",
     "stix-base": "infrastructure", "parent": "physical-asset",
     "optional": [{"name": "reactor-kind", "type": "string"}]},
    {"name": "fuel-cycle-facility", "module": "nuclear-safeguards",
     "stix-base": "infrastructure", "parent": "physical-asset",
     "optional": [{"name": "facility-role", "type": "string"}]},
    {"name": "safeguards-system", "module": "nuclear-safeguards", "stix-base": "software",
     "parent": "ot-device",
     "optional": [{"name": "accounting-scope", "type": "string"}]},

    {"name": "operational-context", "module": "operational-contexts", "stix-base": "none",
     "required": [{"name": "operational-state", "type": "vocab:operational-state"}],
     "optional": [{"name": "description", "type": "string"},
                  {"name": "window-start", "type": "timestamp"},
                  {"name": "window-end", "type": "timestamp"}]},
    {"name": "environmental-context", "module": "environmental-contexts", "stix-base": "none",
     "optional": [{"name": "weather-event", "type": "string"},
                  {"name": "severity", "type": "string"}]},
    {"name": "cyber-context", "module": "cyber-contexts", "stix-base": "none",
     "optional": [{"name": "network-segment", "type": "string"},
                  {"name": "trust-boundary", "type": "string"}]},
    {"name": "physical-context", "module": "physical-contexts", "stix-base": "none",
     "optional": [{"name": "perimeter", "type": "string"},
                  {"name": "access-zone", "type": "string"}]}
  ],

  "relationships": [
    {"name": "feeds-power-to",
     "sources": ["distributed-energy-resource", "centralized-generation-facility",
                 "substation", "transformer", "transmission-line"],
     "targets": ["substation", "transformer", "transmission-line",
                 "advanced-metering-infrastructure"],
     "impact-direction": "forward", "default-amplification": 0.9},
    {"name": "generates-power-for",
     "sources": ["distributed-energy-resource", "centralized-generation-facility"],
     "targets": ["substation", "transformer", "transmission-line",
                 "advanced-metering-infrastructure", "control-center"],
     "impact-direction": "forward", "default-amplification": 0.9},
    {"name": "protects-asset",
     "sources": ["protection-relay", "ot-device"],
     "targets": ["physical-asset"],
     "impact-direction": "forward", "default-amplification": 0.7},
    {"name": "protects-relationship",
     "sources": ["protection-relay", "ot-device"],
     "targets": ["relationship"],
     "impact-direction": "none", "default-amplification": 0.0},
    {"name": "controls-relationship",
     "sources": ["ot-device", "control-center", "head-end-system"],
     "targets": ["physical-asset", "ot-device"],
     "impact-direction": "forward", "default-amplification": 0.8},
    {"name": "monitors-relationship",
     "sources": ["ot-device", "control-center", "head-end-system"],
     "targets": ["physical-asset", "ot-device"],
     "impact-direction": "forward", "default-amplification": 0.3},
    {"name": "affects-operation-of",
     "sources": ["physical-asset", "ot-device"],
     "targets": ["physical-asset", "ot-device"],
     "impact-direction": "forward", "default-amplification": 1.0},
    {"name": "contains",
     "sources": ["physical-asset", "ot-device"],
     "targets": ["physical-asset", "ot-device"],
     "impact-direction": "reverse", "default-amplification": 0.85},
    {"name": "depends-on",
     "sources": ["physical-asset", "ot-device"],
     "targets": ["physical-asset", "ot-device"],
     "impact-direction": "reverse", "default-amplification": 0.85},
    {"name": "grid-synchronization",
     "sources": ["physical-asset"],
     "targets": ["physical-asset"],
     "impact-direction": "forward", "default-amplification": 0.5},
    {"name": "supplied-by",
     "sources": ["physical-asset", "ot-device"],
     "targets": ["supplier"],
     "impact-direction": "reverse", "default-amplification": 0.6},
    {"name": "introduces",
     "sources": ["supplier", "supply-chain-risk"],
     "targets": ["grid-attack-pattern"],
     "impact-direction": "forward", "default-amplification": 0.8},
    {"name": "targets",
     "sources": ["grid-attack-pattern"],
     "targets": ["physical-asset", "ot-device"],
     "impact-direction": "forward", "default-amplification": 0.9},
    {"name": "applies-to",
     "sources": ["supply-chain-risk"],
     "targets": ["physical-asset", "ot-device", "supplier"],
     "impact-direction": "none", "default-amplification": 0.0},
    {"name": "governs",
     "sources": ["security-policy"],
     "targets": ["physical-asset", "ot-device"],
     "impact-direction": "none", "default-amplification": 0.0},
    {"name": "enforced-by",
     "sources": ["security-policy"],
     "targets": ["policy-enforcement-point", "policy-decision-point", "trust-broker"],
     "impact-direction": "none", "default-amplification": 0.0}
  ],

  "vocabularies": [
    {"name": "grid-protocol", "open": true,
     "terms": ["DNP3", "Modbus-TCP", "Modbus-RTU", "IEC-61850-GOOSE", "IEC-61850-MMS",
               "IEC-60870-5-104", "OPC-UA", "IEEE-2030.5"]},
    {"name": "operational-state", "open": true,
     "terms": ["normal", "peak-demand", "maintenance", "emergency"]},
    {"name": "grid-attack-technique", "open": true,
     "terms": ["protocol-manipulation", "protection-system-attack",
               "cascading-failure-exploitation", "firmware-implant"]},
    {"name": "grid-domain", "open": true,
     "terms": ["generation", "transmission", "distribution"]},
    {"name": "privilege", "open": true,
     "terms": ["read", "operate", "configure", "firmware-update"]},
    {"name": "policy-effect", "open": true,
     "terms": ["permit", "deny", "quarantine", "step-up-auth"]},
    {"name": "firmware-integrity", "open": true,
     "terms": ["verified", "unverified", "failed"]}
  ]
})GRIDSTIX";

std::string_view builtin_registry_document() { return kBuiltinRegistry; }

}  // namespace gridstix::schema
