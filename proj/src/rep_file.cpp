#include "odometer/rep_file.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "odometer/builtins.hpp"
#include "odometer/error.hpp"

namespace odometer {

namespace {

class FileRep : public AtomicRep {
 public:
  explicit FileRep(int n) : AtomicRep(n) {}

  Step w_of(const VertexKey& v) const override { return lookup(forward_, 0, v, false); }
  Step v_of(int k, const VertexKey& v) const override { return lookup(forward_, k, v, false); }
  Step w_back(const VertexKey& v) const override { return lookup(backward_, 0, v, true); }
  Step v_back(int k, const VertexKey& v) const override { return lookup(backward_, k, v, true); }
  bool contains(const VertexKey& v) const override { return index_.count(v) > 0; }
  std::vector<VertexKey> seeds() const override { return vertices_; }
  std::optional<std::vector<VertexKey>> finite_vertices() const override { return vertices_; }
  std::string describe() const override {
    return "file representation n=" + std::to_string(rank()) + " with " + std::to_string(vertices_.size()) +
           " vertices";
  }

  std::vector<VertexKey> vertices_;
  std::unordered_set<VertexKey> index_;
  std::unordered_set<VertexKey> boundary_;
  std::map<std::pair<int, VertexKey>, Step> forward_;
  std::map<std::pair<int, VertexKey>, Step> backward_;

 private:
  Step lookup(const std::map<std::pair<int, VertexKey>, Step>& table, int g, const VertexKey& v, bool back) const {
    if (g < 0 || g > rank()) throw Error(ErrorKind::InvalidDigit, "digit " + std::to_string(g) + " out of range");
    if (!contains(v)) throw Error(ErrorKind::InvalidVertex, "'" + v + "' is not a vertex");
    auto it = table.find({g, v});
    if (it != table.end()) return it->second;
    if (back && !boundary_.count(v)) return Step::zero();
    return Step::unexplored();
  }
};

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

[[noreturn]] void fail(ErrorKind kind, int line, const std::string& what) {
  throw Error(kind, "line " + std::to_string(line) + ": " + what);
}

int parse_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::SyntaxError, line, "expected an integer, got '" + s + "'");
  }
}

}  // namespace

RepPtr parse_rep_file(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  std::shared_ptr<FileRep> rep;
  RepPtr builtin;
  std::map<std::pair<int, VertexKey>, int> range_line;  // (generator, target) -> line
  std::map<VertexKey, std::pair<int, int>> v_range;     // target -> (digit, line)
  struct PendingArrow {
    int line, g;
    VertexKey src, dst;
  };
  std::vector<PendingArrow> arrows;
  std::vector<std::pair<int, VertexKey>> boundaries;

  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto t = tokens(raw);
    if (t.empty()) continue;
    const std::string& cmd = t[0];
    if (cmd == "odometer") {
      if (rep || builtin) fail(ErrorKind::SyntaxError, line, "repeated header");
      if (t.size() != 2) fail(ErrorKind::SyntaxError, line, "expected 'odometer <n>'");
      int n = parse_int(t[1], line);
      if (n < 1) fail(ErrorKind::PresentationError, line, "rank must be at least 1");
      rep = std::make_shared<FileRep>(n);
      continue;
    }
    if (cmd == "builtin") {
      if (builtin || (rep && !rep->vertices_.empty())) {
        fail(ErrorKind::SyntaxError, line, "builtin cannot be combined with explicit vertices");
      }
      if (t.size() < 3) fail(ErrorKind::SyntaxError, line, "expected 'builtin <name> <n> [key=value ...]'");
      int n = parse_int(t[2], line);
      if (rep && rep->rank() != n) fail(ErrorKind::PresentationError, line, "rank differs from the header");
      BuiltinParams params;
      for (std::size_t i = 3; i < t.size(); ++i) {
        auto eq = t[i].find('=');
        if (eq == std::string::npos) fail(ErrorKind::SyntaxError, line, "expected key=value, got '" + t[i] + "'");
        params[t[i].substr(0, eq)] = t[i].substr(eq + 1);
      }
      try {
        builtin = make_builtin(t[1], n, params);
      } catch (const Error& e) {
        fail(e.kind(), line, e.what());
      }
      continue;
    }
    if (builtin) fail(ErrorKind::SyntaxError, line, "'" + cmd + "' after a builtin line");
    if (!rep) fail(ErrorKind::SyntaxError, line, "missing 'odometer <n>' header");

    if (cmd == "vertex") {
      if (t.size() != 2) fail(ErrorKind::SyntaxError, line, "expected 'vertex <key>'");
      if (!rep->index_.insert(t[1]).second) fail(ErrorKind::PresentationError, line, "duplicate vertex '" + t[1] + "'");
      rep->vertices_.push_back(t[1]);
    } else if (cmd == "boundary") {
      if (t.size() != 2) fail(ErrorKind::SyntaxError, line, "expected 'boundary <key>'");
      boundaries.emplace_back(line, t[1]);
    } else if (cmd == "arrow") {
      if (t.size() != 4 && t.size() != 5) fail(ErrorKind::SyntaxError, line, "expected 'arrow <w|vK> <src> <dst> [p/q]'");
      int g = 0;
      if (t[1] == "w") {
        g = 0;
      } else if (t[1].size() >= 2 && t[1][0] == 'v') {
        g = parse_int(t[1].substr(1), line);
        if (g < 1 || g > rep->rank()) {
          fail(ErrorKind::PresentationError, line, "digit " + std::to_string(g) + " out of range [1," +
                                                       std::to_string(rep->rank()) + "]");
        }
      } else {
        fail(ErrorKind::SyntaxError, line, "unknown generator '" + t[1] + "'");
      }
      Phase phase;
      if (t.size() == 5) {
        try {
          phase = Phase::parse(t[4]);
        } catch (const Error& e) {
          fail(ErrorKind::SyntaxError, line, e.what());
        }
      }
      const VertexKey& src = t[2];
      const VertexKey& dst = t[3];
      if (rep->forward_.count({g, src})) fail(ErrorKind::PresentationError, line, "duplicate arrow " + t[1] + " from '" + src + "'");
      if (auto it = range_line.find({g, dst}); it != range_line.end()) {
        fail(ErrorKind::PresentationError, line, "two " + t[1] + " arrows into '" + dst + "' (also line " +
                                                     std::to_string(it->second) + ")");
      }
      if (g > 0) {
        if (auto it = v_range.find(dst); it != v_range.end() && it->second.first != g) {
          fail(ErrorKind::PresentationError, line, "overlapping ranges at '" + dst + "': v" +
                                                       std::to_string(it->second.first) + " (line " +
                                                       std::to_string(it->second.second) + ") and " + t[1]);
        }
        v_range[dst] = {g, line};
      }
      range_line[{g, dst}] = line;
      rep->forward_[{g, src}] = Step::arrow(dst, phase);
      rep->backward_[{g, dst}] = Step::arrow(src, phase.conj());
      arrows.push_back({line, g, src, dst});
    } else if (cmd == "hint") {
      if (t.size() < 3) fail(ErrorKind::SyntaxError, line, "expected 'hint <kind> <region>'");
      auto start = raw.find(t[1]) + t[1].size();
      try {
        rep->add_hint({parse_hint_kind(t[1]), Region::parse(raw.substr(start), rep->rank()), {}});
      } catch (const Error& e) {
        fail(ErrorKind::SyntaxError, line, e.what());
      }
    } else {
      fail(ErrorKind::SyntaxError, line, "unknown directive '" + cmd + "'");
    }
  }
  if (builtin) return builtin;
  if (!rep) throw Error(ErrorKind::SyntaxError, "empty representation file");
  for (const auto& a : arrows) {
    for (const auto* key : {&a.src, &a.dst}) {
      if (!rep->index_.count(*key)) fail(ErrorKind::PresentationError, a.line, "undeclared vertex '" + *key + "'");
    }
  }
  for (const auto& [l, key] : boundaries) {
    if (!rep->index_.count(key)) fail(ErrorKind::PresentationError, l, "undeclared vertex '" + key + "'");
    rep->boundary_.insert(key);
  }
  return rep;
}

RepPtr load_rep_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::SyntaxError, "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_rep_file(buf.str());
}

std::string emit_patch(const AtomicRep& rep, const std::vector<VertexKey>& seeds, int radius) {
  auto ex = explore(rep, seeds, radius);
  std::vector<VertexKey> vertices = ex.order;
  std::sort(vertices.begin(), vertices.end());
  std::ostringstream out;
  out << "# " << rep.describe() << ", radius " << radius << " around";
  for (const auto& s : seeds) out << ' ' << s;
  out << "\nodometer " << rep.rank() << '\n';
  for (const auto& v : vertices) out << "vertex " << v << '\n';
  auto inside = [&](const Step& s) { return s.is_arrow() && ex.distance.count(s.target); };
  for (const auto& v : vertices) {
    bool edge = false;
    for (int g = 0; g <= rep.rank(); ++g) {
      Step f = g == 0 ? rep.w_of(v) : rep.v_of(g, v);
      if (inside(f)) {
        out << "arrow " << (g == 0 ? std::string("w") : "v" + std::to_string(g)) << ' ' << v << ' ' << f.target;
        if (!f.phase.is_one()) out << ' ' << f.phase.str();
        out << '\n';
      } else {
        edge = true;
      }
      Step b = g == 0 ? rep.w_back(v) : rep.v_back(g, v);
      if (b.is_unexplored() || (b.is_arrow() && !inside(b))) edge = true;
    }
    if (edge) out << "boundary " << v << '\n';
  }
  for (const auto& h : rep.hints()) out << "hint " << to_string(h.kind) << ' ' << h.region.str() << '\n';
  return out.str();
}

}  // namespace odometer
