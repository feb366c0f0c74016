#include "petri/dot.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

namespace petri {

namespace {

std::string q(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

struct NodeSpec {
  std::string id;
  std::string attrs;
};

struct EdgeSpec {
  std::string from;
  std::string to;
  std::string attrs;

  friend bool operator<(const EdgeSpec& a, const EdgeSpec& b) {
    return std::tie(a.from, a.to, a.attrs) < std::tie(b.from, b.to, b.attrs);
  }
};

std::vector<EdgeSpec> net_arcs(const Net& net) {
  std::vector<EdgeSpec> edges;
  for (const auto& t : net.transitions()) {
    for (const auto& [p, n] : t.pre)
      edges.push_back({p, t.id, n > 1 ? "label=" + q(std::to_string(n)) : ""});
    for (const auto& [p, n] : t.post)
      edges.push_back({t.id, p, n > 1 ? "label=" + q(std::to_string(n)) : ""});
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<NodeSpec> net_nodes(const Net& net,
                                const std::map<std::string, std::string>& extra = {}) {
  std::vector<NodeSpec> nodes;
  auto label_for = [&](const std::string& id, std::string label) {
    if (auto it = extra.find(id); it != extra.end()) label += "\\n" + it->second;
    return label;
  };
  for (const auto& p : net.places()) {
    std::string label = p;
    if (auto n = net.initial_marking()[p]; n > 0) label += " (" + std::to_string(n) + ")";
    nodes.push_back({p, "shape=circle, label=" + q(label_for(p, label))});
  }
  for (const auto& t : net.transitions())
    nodes.push_back({t.id, "shape=box, label=" + q(label_for(t.id, t.id))});
  std::sort(nodes.begin(), nodes.end(),
            [](const NodeSpec& a, const NodeSpec& b) { return a.id < b.id; });
  return nodes;
}

std::string render(const std::string& name, const std::vector<NodeSpec>& nodes,
                   const std::vector<EdgeSpec>& edges) {
  std::string out = "digraph " + q(name) + " {\n";
  for (const auto& n : nodes) out += "  " + q(n.id) + " [" + n.attrs + "];\n";
  for (const auto& e : edges) {
    out += "  " + q(e.from) + " -> " + q(e.to);
    if (!e.attrs.empty()) out += " [" + e.attrs + "]";
    out += ";\n";
  }
  return out + "}\n";
}

}  // namespace

std::string to_dot(const Net& net) {
  return render(net.name(), net_nodes(net), net_arcs(net));
}

std::string to_dot(const Module& module) {
  std::map<std::string, std::string> faces;
  auto note = [&](const std::string& element, const std::string& text) {
    auto& s = faces[element];
    if (!s.empty()) s += ' ';
    s += text;
  };
  for (const auto& e : module.left.entries()) note(e.element, "<" + e.label);
  for (const auto& e : module.right.entries()) note(e.element, e.label + ">");
  for (const auto& [element, label] : module.labels) note(element, "[" + label + "]");
  return render(module.net.name(), net_nodes(module.net, faces), net_arcs(module.net));
}

std::string to_dot(const Run& run) {
  std::string out = "digraph run {\n";
  for (std::size_t c = 0; c < run.conditions().size(); ++c)
    out += "  c" + std::to_string(c) + " [shape=circle, label=" +
           q(run.conditions()[c]) + "];\n";
  for (std::size_t e = 0; e < run.events().size(); ++e)
    out += "  e" + std::to_string(e) + " [shape=square, label=" + q(run.events()[e]) +
           "];\n";
  for (const auto& [c, e] : run.inputs())
    out += "  c" + std::to_string(c) + " -> e" + std::to_string(e) + ";\n";
  for (const auto& [e, c] : run.outputs())
    out += "  e" + std::to_string(e) + " -> c" + std::to_string(c) + ";\n";
  return out + "}\n";
}

std::string to_dot(const MarkingGraph& graph) {
  std::string out = "digraph markings {\n";
  for (std::size_t i = 0; i < graph.nodes.size(); ++i)
    out += "  m" + std::to_string(i) + " [shape=ellipse, label=" +
           q(to_string(graph.nodes[i])) + (i == 0 ? ", peripheries=2" : "") + "];\n";
  for (const auto& e : graph.edges)
    out += "  m" + std::to_string(e.source) + " -> m" + std::to_string(e.target) +
           " [label=" + q(e.transition) + "];\n";
  return out + "}\n";
}

std::string to_dot(const Net& net, const ConcurrencyStructure& structure) {
  auto edges = net_arcs(net);
  for (const auto& [a, b] : structure.links)
    edges.push_back({std::min(a, b), std::max(a, b), "dir=none, style=dotted"});
  std::sort(edges.begin(), edges.end());
  return render(net.name(), net_nodes(net), edges);
}

}  // namespace petri
