#pragma once

// Finite windows of a representation as sparse complex matrices, and
// component memberships recomputed from truncated projection formulas.
//
// A formula of depth d reads arrows at most 2d+1 steps away from the
// vertex it is evaluated at, so values are only reported at vertices at
// least that far inside the window.

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "odometer/atomic_rep.hpp"
#include "odometer/classifier.hpp"

namespace odometer {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

struct Window {
  int n = 1;
  int radius = 0;
  std::vector<VertexKey> vertices;  // sorted
  std::unordered_map<VertexKey, int> index;
  std::vector<int> distance;        // from the seeds
  std::vector<SparseMatrix> ops;    // ops[0] = W, ops[k] = V_k
  std::vector<std::vector<bool>> exits;  // exits[g][j]: arrow g of column j leaves the window

  std::size_t size() const { return vertices.size(); }
  const SparseMatrix& w() const { return ops[0]; }
  const SparseMatrix& v(int k) const { return ops[static_cast<std::size_t>(k)]; }
  // Vertices at distance <= radius - margin.
  std::vector<bool> interior(int margin) const;
  Eigen::MatrixXcd dense(int generator) const;
};

constexpr std::size_t kWindowCap = 200000;

Window build_window(const AtomicRep& rep, const std::vector<VertexKey>& seeds, int radius,
                    std::size_t cap = kWindowCap);

struct NumericReport {
  std::map<std::string, double> residuals;  // relation name -> max column norm over the interior
  double nica_residual = 0.0;
  std::optional<VertexKey> nica_witness;
  std::size_t interior = 0;
  bool pass = true;  // every relation residual <= tol (Nica-covariance excluded)
};

NumericReport check_relations_numeric(const Window& win, double tol, int margin = 2);

int projection_margin(int depth);

// ||P e_v||^2 for c in {UU, US, SU, WS} at every vertex at least
// projection_margin(depth) inside the window.  SS is reported as WS.
std::map<VertexKey, double> project_component(const Window& win, ComponentId c, int depth);

struct ShiftParts {
  std::vector<double> unitary;  // per vertex; NaN outside the interior
  std::vector<int> wandering;   // interior vertices in the joint kernel of the adjoints
};

// Classical Wold decomposition of one isometry truncated at depth.
ShiftParts wold_single(const SparseMatrix& s, int depth, const std::vector<bool>& interior);
// Row-unitary part and wandering vertices of a row isometry, truncated at depth.
ShiftParts popescu_row(const std::vector<SparseMatrix>& v, int depth, const std::vector<bool>& interior);

struct Disagreement {
  VertexKey vertex;
  ComponentId component;
  Status status;
  double value;
};

struct AgreementReport {
  std::size_t vertices = 0;    // vertices in the compared region
  std::size_t compared = 0;    // conclusive (vertex, component) pairs checked
  std::size_t unknown = 0;     // vertices with some inconclusive verdict
  std::size_t truncated = 0;   // vertices whose window reaches unexplored arrows
  std::vector<Disagreement> disagreements;
};

// Compares every vertex within `radius` of the seeds.  Each vertex is
// classified with budget = depth and projected in its own window of radius
// projection_margin(depth).  Throws PreconditionFailed when the relations
// fail on the region.
AgreementReport compare_with_classifier(RepPtr rep, const std::vector<VertexKey>& seeds, int radius, int depth,
                                        double tol);

// Row-major dense text: one line per row, entries "re,im" separated by spaces.
std::string export_dense(const Eigen::MatrixXcd& m);

}  // namespace odometer
