#include <algorithm>

#include "gridstix/exporter/exporter.hpp"

namespace gridstix::exporter {

namespace {

// Fixed 12-entry palette keyed by module tag.
constexpr std::pair<schema::Module, std::string_view> kPalette[] = {
    {schema::Module::assets, "#1f77b4"},
    {schema::Module::components, "#2ca02c"},
    {schema::Module::relationships, "#7f7f7f"},
    {schema::Module::attack_patterns, "#d62728"},
    {schema::Module::policies, "#9467bd"},
    {schema::Module::events_observables, "#ff7f0e"},
    {schema::Module::nuclear_safeguards, "#8c564b"},
    {schema::Module::operational_contexts, "#17becf"},
    {schema::Module::environmental_contexts, "#bcbd22"},
    {schema::Module::cyber_contexts, "#e377c2"},
    {schema::Module::physical_contexts, "#aec7e8"},
    {schema::Module::vocabularies, "#98df8a"},
};

constexpr std::string_view kUnregisteredColor = "#c7c7c7";

constexpr std::string_view kPageTemplate = R"HTML(<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>Grid-STIX threat graph</title>
<style>
  body { font-family: sans-serif; margin: 0; display: flex; height: 100vh; }
  #panel { width: 240px; padding: 12px; overflow-y: auto; border-right: 1px solid #ddd; }
  #panel h1 { font-size: 15px; margin: 0 0 8px; }
  #panel label { display: block; font-size: 12px; margin: 3px 0; cursor: pointer; }
  #panel .swatch { display: inline-block; width: 10px; height: 10px; margin-right: 5px; }
  #canvas { flex: 1; }
  #stats { font-size: 11px; color: #666; margin-top: 10px; }
  line { stroke: #999; stroke-width: 1.2; }
  circle { stroke: #fff; stroke-width: 1; cursor: pointer; }
  text.nodelabel { font-size: 9px; fill: #333; pointer-events: none; }
</style>
</head>
<body>
<div id="panel">
  <h1>Grid-STIX threat graph</h1>
  <div id="filters"></div>
  <div id="stats"></div>
</div>
<svg id="canvas"></svg>
<script id="graph-data" type="application/json">__GRAPH_DATA__</script>
<script>
"use strict";
const data = JSON.parse(document.getElementById("graph-data").textContent);
const svg = document.getElementById("canvas");
const NS = "http://www.w3.org/2000/svg";
const modules = [...new Set(data.nodes.map(n => n.module))].sort();
const enabled = new Set(modules);

function layout(nodes) {
  const w = svg.clientWidth || 800, h = svg.clientHeight || 600;
  const r = Math.max(60, Math.min(w, h) / 2 - 60);
  nodes.forEach((n, i) => {
    const a = (2 * Math.PI * i) / Math.max(1, nodes.length);
    n.x = w / 2 + r * Math.cos(a);
    n.y = h / 2 + r * Math.sin(a);
  });
}

function render() {
  while (svg.firstChild) svg.removeChild(svg.firstChild);
  const nodes = data.nodes.filter(n => enabled.has(n.module));
  const keep = new Set(nodes.map(n => n.id));
  const edges = data.edges.filter(e => keep.has(e.source) && keep.has(e.target));
  layout(nodes);
  const at = Object.fromEntries(nodes.map(n => [n.id, n]));
  for (const e of edges) {
    const line = document.createElementNS(NS, "line");
    line.setAttribute("x1", at[e.source].x); line.setAttribute("y1", at[e.source].y);
    line.setAttribute("x2", at[e.target].x); line.setAttribute("y2", at[e.target].y);
    const t = document.createElementNS(NS, "title");
    t.textContent = e["relationship-type"];
    line.appendChild(t);
    svg.appendChild(line);
  }
  for (const n of nodes) {
    const c = document.createElementNS(NS, "circle");
    c.setAttribute("cx", n.x); c.setAttribute("cy", n.y); c.setAttribute("r", 9);
    c.setAttribute("fill", n.color);
    const t = document.createElementNS(NS, "title");
    t.textContent = n.id + " (" + n.type + ")";
    c.appendChild(t);
    svg.appendChild(c);
    const label = document.createElementNS(NS, "text");
    label.setAttribute("x", n.x + 11); label.setAttribute("y", n.y + 3);
    label.setAttribute("class", "nodelabel");
    label.textContent = n.type;
    svg.appendChild(label);
  }
  document.getElementById("stats").textContent =
    nodes.length + " nodes, " + edges.length + " edges shown of " +
    data.nodes.length + "/" + data.edges.length;
}

const filters = document.getElementById("filters");
for (const m of modules) {
  const label = document.createElement("label");
  const box = document.createElement("input");
  box.type = "checkbox"; box.checked = true;
  box.addEventListener("change", () => {
    box.checked ? enabled.add(m) : enabled.delete(m);
    render();
  });
  const swatch = document.createElement("span");
  swatch.className = "swatch";
  const sample = data.nodes.find(n => n.module === m);
  swatch.style.background = sample ? sample.color : "#999";
  label.appendChild(box); label.appendChild(swatch);
  label.appendChild(document.createTextNode(m));
  filters.appendChild(label);
}
window.addEventListener("resize", render);
render();
</script>
</body>
</html>
)HTML";

}  // namespace

std::string_view module_color(schema::Module m) {
    for (auto [mod, color] : kPalette) {
        if (mod == m) return color;
    }
    return kUnregisteredColor;
}

std::string export_viz(const analytics::ThreatGraph& graph, const VizOptions& options) {
    auto node_kept = [&](const analytics::GraphNode& node, std::string& module_out,
                         std::string& color_out) {
        const auto* descriptor = graph.registry().find(node.type_name);
        if (descriptor != nullptr) {
            module_out = std::string(schema::module_name(descriptor->module));
            color_out = std::string(module_color(descriptor->module));
        } else {
            module_out = "unregistered";
            color_out = std::string(kUnregisteredColor);
        }
        if (options.filter_modules && !options.filter_modules->count(module_out)) {
            return false;
        }
        if (options.filter_types && !options.filter_types->count(node.type_name)) {
            return false;
        }
        return true;
    };

    Json nodes = Json::array();
    std::set<std::string> kept_ids;
    for (const auto& [id, node] : graph.nodes()) {
        std::string module_tag, color;
        if (!node_kept(node, module_tag, color)) continue;
        Json n = Json::object();
        n["id"] = id.str();
        n["type"] = node.type_name;
        n["module"] = module_tag;
        n["color"] = color;
        nodes.push_back(std::move(n));
        kept_ids.insert(id.str());
    }
    Json edges = Json::array();
    for (const auto& e : graph.edges()) {
        if (!kept_ids.count(e.source.str()) || !kept_ids.count(e.target.str())) continue;
        Json ed = Json::object();
        ed["id"] = e.edge_id.str();
        ed["relationship-type"] = e.relationship_type;
        ed["source"] = e.source.str();
        ed["target"] = e.target.str();
        ed["amplification"] = e.amplification;
        edges.push_back(std::move(ed));
    }
    Json data = Json::object();
    data["nodes"] = std::move(nodes);
    data["edges"] = std::move(edges);

    std::string embedded = data.dump(2);
    // Keep the inline <script> block intact regardless of embedded content.
    std::size_t pos = 0;
    while ((pos = embedded.find("</", pos)) != std::string::npos) {
        embedded.replace(pos, 2, "<\\/");
        pos += 3;
    }

    std::string page(kPageTemplate);
    const std::string marker = "__GRAPH_DATA__";
    page.replace(page.find(marker), marker.size(), embedded);
    return page;
}

}  // namespace gridstix::exporter
