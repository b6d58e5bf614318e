#include "odometer/dot.hpp"

#include <algorithm>
#include <sstream>

namespace odometer {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render_dot(const AtomicRep& rep, const std::vector<VertexKey>& seeds, int radius) {
  auto ex = explore(rep, seeds, radius);
  std::vector<VertexKey> vertices = ex.order;
  std::sort(vertices.begin(), vertices.end());
  std::ostringstream out;
  out << "digraph odometer {\n  node [shape=circle];\n";
  for (const auto& v : vertices) out << "  " << quote(v) << ";\n";
  for (const auto& v : vertices) {
    for (int g = 0; g <= rep.rank(); ++g) {
      Step s = g == 0 ? rep.w_of(v) : rep.v_of(g, v);
      if (!s.is_arrow() || !ex.distance.count(s.target)) continue;
      out << "  " << quote(v) << " -> " << quote(s.target) << " [";
      if (g == 0) {
        out << "style=dashed";
      } else {
        out << "label=\"" << g << "\"";
      }
      if (!s.phase.is_one()) out << ", phase=\"" << s.phase.str() << "\"";
      out << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace odometer
