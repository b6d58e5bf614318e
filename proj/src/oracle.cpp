#include "odometer/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "odometer/error.hpp"

namespace odometer {

namespace {

SparseMatrix identity(std::size_t n) {
  SparseMatrix id(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  id.setIdentity();
  return id;
}

SparseMatrix clean(SparseMatrix m) {
  m.prune(Complex(1.0, 0.0), 1e-14);
  return m;
}

SparseMatrix adj(const SparseMatrix& m) { return SparseMatrix(m.adjoint()); }

SparseMatrix mul(const SparseMatrix& a, const SparseMatrix& b) { return clean(SparseMatrix(a * b)); }

std::vector<double> column_norms2(const SparseMatrix& m) {
  std::vector<double> out(static_cast<std::size_t>(m.cols()), 0.0);
  for (Eigen::Index j = 0; j < m.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) out[static_cast<std::size_t>(j)] += std::norm(it.value());
  }
  return out;
}

double max_column_norm(const SparseMatrix& m, const std::vector<bool>& interior, std::optional<std::size_t>* argmax = nullptr) {
  auto norms = column_norms2(m);
  double best = 0.0;
  for (std::size_t j = 0; j < norms.size(); ++j) {
    if (!interior[j]) continue;
    double v = std::sqrt(norms[j]);
    if (v > best) {
      best = v;
      if (argmax) *argmax = j;
    }
  }
  return best;
}

std::vector<SparseMatrix> powers(const SparseMatrix& s, int d) {
  std::vector<SparseMatrix> p{identity(static_cast<std::size_t>(s.rows()))};
  for (int i = 1; i <= d; ++i) p.push_back(mul(s, p.back()));
  return p;
}

// Projection onto sum_{|mu| <= d} X_mu L X_mu^*, with L a projection onto a
// wandering subspace of the row {X_i}.
SparseMatrix spread(const SparseMatrix& l, const std::vector<const SparseMatrix*>& xs, int d) {
  SparseMatrix s = l;
  for (int t = 0; t < d; ++t) {
    SparseMatrix next = l;
    for (const auto* x : xs) next += mul(mul(*x, s), adj(*x));
    s = clean(next);
  }
  return s;
}

// Projection onto intersection_m X^m K X^{m*} with
// K = product over (Y, j) of (I - X^{j*} Y Y^* X^j).
SparseMatrix kernel_core(const SparseMatrix& x, const std::vector<const SparseMatrix*>& ys, int d) {
  const auto id = identity(static_cast<std::size_t>(x.rows()));
  auto xp = powers(x, d);
  SparseMatrix k = id;
  for (const auto* y : ys) {
    const SparseMatrix range = mul(*y, adj(*y));
    for (int j = 0; j <= d; ++j) k = mul(k, clean(id - mul(mul(adj(xp[j]), range), xp[j])));
  }
  SparseMatrix l = id;
  for (int m = 0; m <= d; ++m) l = mul(l, mul(mul(xp[m], k), adj(xp[m])));
  return l;
}

SparseMatrix projection(const Window& win, ComponentId c, int d) {
  const auto n = static_cast<std::size_t>(win.n);
  switch (c) {
    case ComponentId::UU: {
      std::vector<SparseMatrix> a;
      for (int i = 1; i <= win.n; ++i) a.push_back(mul(win.w(), win.v(i)));
      SparseMatrix r = identity(win.size());
      for (int m = 0; m < d; ++m) {
        SparseMatrix next(r.rows(), r.cols());
        for (const auto& ai : a) next += mul(mul(ai, r), adj(ai));
        r = clean(next);
      }
      return r;
    }
    case ComponentId::US: {
      std::vector<const SparseMatrix*> vs;
      for (std::size_t i = 1; i <= n; ++i) vs.push_back(&win.ops[i]);
      return spread(kernel_core(win.w(), vs, d), vs, d);
    }
    case ComponentId::SU: {
      const SparseMatrix* w = &win.ops[0];
      return spread(kernel_core(win.v(1), {w}, d), {w}, d);
    }
    case ComponentId::WS:
    case ComponentId::SS: break;
  }
  throw Error(ErrorKind::BadParam, "no direct projection formula for the weak bi-shift part");
}

Step forward(const AtomicRep& rep, int g, const VertexKey& v) { return g == 0 ? rep.w_of(v) : rep.v_of(g, v); }

// Every vertex strictly inside the window has all of its arrows known.
bool complete(const AtomicRep& rep, const Window& win) {
  for (std::size_t i = 0; i < win.size(); ++i) {
    if (win.distance[i] >= win.radius) continue;
    for (int g = 0; g <= win.n; ++g) {
      if (win.exits[static_cast<std::size_t>(g)][i]) return false;
      const auto& v = win.vertices[i];
      if ((g == 0 ? rep.w_back(v) : rep.v_back(g, v)).is_unexplored()) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<bool> Window::interior(int margin) const {
  std::vector<bool> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = distance[i] <= radius - margin;
  return out;
}

Eigen::MatrixXcd Window::dense(int generator) const {
  return Eigen::MatrixXcd(ops.at(static_cast<std::size_t>(generator)));
}

Window build_window(const AtomicRep& rep, const std::vector<VertexKey>& seeds, int radius, std::size_t cap) {
  if (radius < 0) throw Error(ErrorKind::BadParam, "window radius must be nonnegative");
  auto ex = explore(rep, seeds, radius, cap);
  Window win;
  win.n = rep.rank();
  win.radius = radius;
  win.vertices = ex.order;
  std::sort(win.vertices.begin(), win.vertices.end());
  for (std::size_t i = 0; i < win.vertices.size(); ++i) {
    win.index.emplace(win.vertices[i], static_cast<int>(i));
    win.distance.push_back(ex.distance.at(win.vertices[i]));
  }
  const auto dim = static_cast<Eigen::Index>(win.size());
  for (int g = 0; g <= win.n; ++g) {
    std::vector<Eigen::Triplet<Complex>> entries;
    std::vector<bool> exits(win.size(), false);
    for (std::size_t j = 0; j < win.size(); ++j) {
      Step s = forward(rep, g, win.vertices[j]);
      auto it = s.is_arrow() ? win.index.find(s.target) : win.index.end();
      if (it == win.index.end()) {
        exits[j] = true;
        continue;
      }
      entries.emplace_back(it->second, static_cast<int>(j), s.phase.value());
    }
    SparseMatrix m(dim, dim);
    m.setFromTriplets(entries.begin(), entries.end());
    win.ops.push_back(std::move(m));
    win.exits.push_back(std::move(exits));
  }
  return win;
}

NumericReport check_relations_numeric(const Window& win, double tol, int margin) {
  if (tol <= 0) throw Error(ErrorKind::BadParam, "tolerance must be positive");
  NumericReport report;
  const auto interior = win.interior(margin);
  report.interior = static_cast<std::size_t>(std::count(interior.begin(), interior.end(), true));
  const auto id = identity(win.size());
  const int n = win.n;
  auto record = [&](const std::string& name, const SparseMatrix& m) {
    double r = max_column_norm(m, interior);
    report.residuals[name] = r;
    if (r > tol) report.pass = false;
  };

  for (int k = 1; k <= n; ++k) {
    if (k < n) {
      record("WV_" + std::to_string(k) + "=V_" + std::to_string(k + 1), SparseMatrix(mul(win.w(), win.v(k)) - win.v(k + 1)));
    } else {
      record("WV_n=V_1W", SparseMatrix(mul(win.w(), win.v(n)) - mul(win.v(1), win.w())));
    }
  }
  record("isometry(W)", SparseMatrix(mul(adj(win.w()), win.w()) - id));
  for (int k = 1; k <= n; ++k) record("isometry(V" + std::to_string(k) + ")", SparseMatrix(mul(adj(win.v(k)), win.v(k)) - id));
  for (int j = 1; j <= n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      record("orthogonal(V" + std::to_string(j) + ",V" + std::to_string(k) + ")", mul(adj(win.v(j)), win.v(k)));
    }
  }
  std::optional<std::size_t> witness;
  SparseMatrix nc = mul(adj(win.w()), win.v(1)) - mul(win.v(n), adj(win.w()));
  report.nica_residual = max_column_norm(nc, interior, &witness);
  if (witness && report.nica_residual > tol) report.nica_witness = win.vertices[*witness];
  return report;
}

int projection_margin(int depth) { return 2 * depth + 1; }

std::map<VertexKey, double> project_component(const Window& win, ComponentId c, int depth) {
  if (depth < 1) throw Error(ErrorKind::BadParam, "projection depth must be at least 1");
  const auto interior = win.interior(projection_margin(depth));
  if (std::find(interior.begin(), interior.end(), true) == interior.end()) {
    throw Error(ErrorKind::DepthExceedsMargin, "depth " + std::to_string(depth) + " needs a window radius of at least " +
                                                   std::to_string(projection_margin(depth)));
  }
  std::vector<double> values(win.size(), 0.0);
  if (c == ComponentId::WS || c == ComponentId::SS) {
    std::fill(values.begin(), values.end(), 1.0);
    for (auto part : {ComponentId::UU, ComponentId::US, ComponentId::SU}) {
      auto norms = column_norms2(projection(win, part, depth));
      for (std::size_t i = 0; i < values.size(); ++i) values[i] -= norms[i];
    }
  } else {
    values = column_norms2(projection(win, c, depth));
  }
  std::map<VertexKey, double> out;
  for (std::size_t i = 0; i < win.size(); ++i) {
    if (interior[i]) out.emplace(win.vertices[i], values[i]);
  }
  return out;
}

ShiftParts wold_single(const SparseMatrix& s, int depth, const std::vector<bool>& interior) {
  auto p = powers(s, depth).back();
  auto norms = column_norms2(mul(p, adj(p)));
  auto back = column_norms2(adj(s));
  ShiftParts out;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    out.unitary.push_back(interior[i] ? norms[i] : std::numeric_limits<double>::quiet_NaN());
    if (interior[i] && back[i] == 0.0) out.wandering.push_back(static_cast<int>(i));
  }
  return out;
}

ShiftParts popescu_row(const std::vector<SparseMatrix>& v, int depth, const std::vector<bool>& interior) {
  if (v.empty()) throw Error(ErrorKind::BadParam, "empty row");
  const auto dim = static_cast<std::size_t>(v.front().rows());
  SparseMatrix r = identity(dim);
  for (int m = 0; m < depth; ++m) {
    SparseMatrix next(r.rows(), r.cols());
    for (const auto& vi : v) next += mul(mul(vi, r), adj(vi));
    r = clean(next);
  }
  auto norms = column_norms2(r);
  std::vector<double> back(dim, 0.0);
  for (const auto& vi : v) {
    auto b = column_norms2(adj(vi));
    for (std::size_t i = 0; i < dim; ++i) back[i] += b[i];
  }
  ShiftParts out;
  for (std::size_t i = 0; i < dim; ++i) {
    out.unitary.push_back(interior[i] ? norms[i] : std::numeric_limits<double>::quiet_NaN());
    if (interior[i] && back[i] == 0.0) out.wandering.push_back(static_cast<int>(i));
  }
  return out;
}

AgreementReport compare_with_classifier(RepPtr rep, const std::vector<VertexKey>& seeds, int radius, int depth,
                                        double tol) {
  auto check = verify_relations(*rep, seeds, radius + 2);
  if (!check.pass) {
    const auto& v = *check.violation;
    throw Error(ErrorKind::PreconditionFailed,
                "relations fail at '" + v.vertex + "' (" + v.relation + "); refusing to compare");
  }
  auto region = explore(*rep, seeds, radius);
  std::vector<VertexKey> vertices = region.order;
  std::sort(vertices.begin(), vertices.end());

  Session session(rep, {static_cast<std::size_t>(depth), std::nullopt});
  AgreementReport report;
  report.vertices = vertices.size();
  const ComponentId parts[] = {ComponentId::UU, ComponentId::US, ComponentId::SU};
  for (const auto& v : vertices) {
    auto cls = session.classify(v);
    if (cls.has_unknown()) ++report.unknown;
    bool any = false;
    for (const auto& [id, verdict] : cls.verdicts) any = any || verdict.status != Status::Unknown;
    if (!any) continue;

    auto win = build_window(*rep, {v}, projection_margin(depth));
    if (!complete(*rep, win)) {
      ++report.truncated;
      continue;
    }
    std::map<ComponentId, double> value;
    double rest = 1.0;
    for (auto c : parts) {
      value[c] = project_component(win, c, depth).at(v);
      rest -= value[c];
    }
    value[ComponentId::WS] = rest;
    for (const auto& [id, verdict] : cls.verdicts) {
      if (verdict.status == Status::Unknown || !value.count(id)) continue;
      ++report.compared;
      double x = value[id];
      bool ok = verdict.status == Status::In ? x >= 1.0 - tol : x <= tol;
      if (!ok) report.disagreements.push_back({v, id, verdict.status, x});
    }
  }
  return report;
}

std::string export_dense(const Eigen::MatrixXcd& m) {
  std::ostringstream out;
  out.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m(i, j).real() << ',' << m(i, j).imag();
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace odometer
