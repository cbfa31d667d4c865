#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "schober/local_system.hpp"
#include "schober/surface.hpp"

namespace schober {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

/// Graphviz digraph of a presentation: nodes sorted by label, edges in generator
/// order, each edge labelled by its generator and, when given, its matrix.
inline std::string export_dot(const GroupoidPresentation& p, const LatticeLocalSystem* L = nullptr) {
  std::vector<std::string> nodes = p.basepoints;
  std::sort(nodes.begin(), nodes.end());
  std::string out = "digraph G {\n";
  for (const auto& n : nodes) out += "  \"" + dot_escape(n) + "\";\n";
  for (const auto& g : p.generators) {
    std::string label = g.label;
    if (L) {
      auto it = L->matrices.find(g.label);
      if (it != L->matrices.end()) label += " " + to_string(it->second);
    }
    out += "  \"" + dot_escape(g.source) + "\" -> \"" + dot_escape(g.target) + "\" [label=\"" + dot_escape(label) +
           "\"];\n";
  }
  out += "}\n";
  return out;
}

inline std::string export_dot(const LatticeLocalSystem& L) { return export_dot(L.presentation, &L); }

/// A surface schober is drawn through its restriction: outside generators plus
/// one loop per singular point at the disk basepoint.
inline std::string export_dot(const SurfaceSchober& s) { return export_dot(restrict_full(s)); }

}  // namespace schober
