#pragma once

// Atomic isometric representations of O_n.
//
// A representation acts on an orthonormal basis {e_v} indexed by string
// keys.  W e_v = lambda_v e_tau(v) and V_k e_v = omega_{k,v} e_pi_k(v) with
// injective tau, pi_k and pairwise disjoint ranges of the pi_k.  Backward
// maps return the adjoint action: if V_k e_u = omega e_v then
// V_k^* e_v = conj(omega) e_u, and V_k^* e_v = 0 when v is outside ran pi_k.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "odometer/phase.hpp"
#include "odometer/region.hpp"

namespace odometer {

using VertexKey = std::string;

struct Step {
  // Unexplored: the arrow leaves the known part of a finite representation.
  enum class Kind { Arrow, Zero, Unexplored };

  Kind kind = Kind::Zero;
  VertexKey target;
  Phase phase;

  static Step arrow(VertexKey target, Phase phase = {}) { return {Kind::Arrow, std::move(target), phase}; }
  static Step zero() { return {}; }
  static Step unexplored() { return {Kind::Unexplored, {}, {}}; }

  bool is_arrow() const { return kind == Kind::Arrow; }
  bool is_zero() const { return kind == Kind::Zero; }
  bool is_unexplored() const { return kind == Kind::Unexplored; }
  bool operator==(const Step&) const = default;
  std::string str() const;
};

enum class HintKind {
  WvBackwardTotal,         // every u in R has a backward {W V_i}-step landing in R
  WBackwardTotal,          // every u in R has W^* e_u landing in R
  WBackwardTotalInKernel,  // as WBackwardTotal, and R avoids every ran V_i
  VBackwardTotal,          // every u in R lies in some ran V_k with V_k^* e_u in R
  V1BackwardTotalInKernel, // every u in R has V_1^* e_u in R, and R avoids ran W
  ForwardWAvoidsRanV,      // W maps R into R, and R avoids every ran V_i
  ForwardV1AvoidsRanW,     // V_1 maps R into R, and R avoids ran W
};

const char* to_string(HintKind kind);
HintKind parse_hint_kind(const std::string& text);

struct Hint {
  HintKind kind;
  Region region;
  std::string id;
};

class AtomicRep {
 public:
  explicit AtomicRep(int n) : n_(n) {}
  virtual ~AtomicRep() = default;

  int rank() const { return n_; }

  virtual Step w_of(const VertexKey& v) const = 0;
  virtual Step v_of(int k, const VertexKey& v) const = 0;
  virtual Step w_back(const VertexKey& v) const = 0;
  virtual Step v_back(int k, const VertexKey& v) const = 0;
  virtual bool contains(const VertexKey& v) const = 0;

  // Canonical starting vertices for exploration.
  virtual std::vector<VertexKey> seeds() const = 0;
  // Set for finite (file-backed) representations.
  virtual std::optional<std::vector<VertexKey>> finite_vertices() const { return std::nullopt; }
  // Human-readable identity, e.g. "weak_shift n=2".
  virtual std::string describe() const = 0;

  const std::vector<Hint>& hints() const { return hints_; }
  void add_hint(Hint hint);

 private:
  int n_;
  std::vector<Hint> hints_;
};

using RepPtr = std::shared_ptr<const AtomicRep>;

// The unique k with V_k^* e_v != 0, if any.
struct JointBack {
  enum class Kind { Found, None, Unexplored };
  Kind kind = Kind::None;
  int k = 0;
  Step step;
};
JointBack v_back_any(const AtomicRep& rep, const VertexKey& v);

// One backward step of the row isometry {W V_1, ..., W V_n}.  The member
// W V_i with i < n equals V_{i+1}; W V_n equals V_1 W.
Step wv_back(const AtomicRep& rep, const VertexKey& v);

bool in_ran_v(const AtomicRep& rep, const VertexKey& v);

// Breadth-first closure under all forward and backward arrows.
struct Exploration {
  std::vector<VertexKey> order;
  std::unordered_map<VertexKey, int> distance;
};
Exploration explore(const AtomicRep& rep, const std::vector<VertexKey>& seeds, int depth,
                    std::size_t cap = 200000);

struct Violation {
  VertexKey vertex;
  std::string relation;
  std::string expected;
  std::string found;
};

struct CheckReport {
  bool pass = true;
  std::size_t explored = 0;
  std::optional<Violation> violation;
};

CheckReport verify_relations(const AtomicRep& rep, const std::vector<VertexKey>& seeds, int depth);

// W^* V_1 e_v == V_n W^* e_v on the explored set.
CheckReport is_nica_covariant(const AtomicRep& rep, const std::vector<VertexKey>& seeds, int depth);

// Spot-checks every hint on explored vertices lying in its region.
CheckReport validate_hints(const AtomicRep& rep, const std::vector<VertexKey>& seeds, int depth);

// Backward V-address of a vertex: the digits k_1, k_2, ... with
// e_{i_{m-1}} in ran V_{k_m} e_{i_m}.
struct Address {
  enum class End { Wandering, Cycle, Budget, Unexplored };
  std::vector<int> digits;
  std::vector<VertexKey> chain;  // i_0, i_1, ..., one longer than digits
  std::vector<Phase> phases;     // omega with V_{k_m} e_{i_m} = omega e_{i_{m-1}}
  End end = End::Budget;
  std::size_t period = 0;
};
Address backward_address(const AtomicRep& rep, const VertexKey& v, std::size_t budget);

using WanderingUnitary = std::map<VertexKey, Step>;

// W forced by the relations from the V-structure: strip the address up to
// the first digit k_m != n and rebuild V_1^{m-1} V_{k_m + 1} e_{i_m}; an
// all-n address ending at a wandering vertex goes through the wandering
// unitary and rebuilds with ones.
Step induce_w(const AtomicRep& rep, const VertexKey& v, const WanderingUnitary* wandering,
              std::size_t budget = 4096);
// The adjoint of the induced W; Zero when the address is 1^infinity.
Step induce_w_back(const AtomicRep& rep, const VertexKey& v, const WanderingUnitary* wandering,
                   std::size_t budget = 4096);

struct OrbitType {
  enum class Kind { LeftRegular, Cycle, Inductive, Unknown };
  Kind kind = Kind::Unknown;
  VertexKey terminal;
  std::size_t period = 0;
};
OrbitType v_orbit_type(const AtomicRep& rep, const VertexKey& v, std::size_t budget);

// Wraps a representation and replaces selected arrows.  Used for fault
// injection and for rephasing experiments.
class OverlayRep : public AtomicRep {
 public:
  explicit OverlayRep(RepPtr base);

  // generator 0 is W, k >= 1 is V_k.
  void set_forward(int generator, const VertexKey& v, Step step);
  void set_backward(int generator, const VertexKey& v, Step step);
  // Multiplies every W phase by alpha and every V_k phase by beta_k.
  void set_scaling(Phase alpha, std::vector<Phase> beta);
  // Replaces every phase of the base by 0 before scaling.
  void drop_phases() { drop_ = true; }

  Step w_of(const VertexKey& v) const override;
  Step v_of(int k, const VertexKey& v) const override;
  Step w_back(const VertexKey& v) const override;
  Step v_back(int k, const VertexKey& v) const override;
  bool contains(const VertexKey& v) const override { return base_->contains(v); }
  std::vector<VertexKey> seeds() const override { return base_->seeds(); }
  std::optional<std::vector<VertexKey>> finite_vertices() const override { return base_->finite_vertices(); }
  std::string describe() const override { return "overlay of " + base_->describe(); }

 private:
  Step scaled(int generator, Step s, bool backward) const;

  RepPtr base_;
  std::map<std::pair<int, VertexKey>, Step> forward_;
  std::map<std::pair<int, VertexKey>, Step> backward_;
  Phase alpha_;
  std::vector<Phase> beta_;
  bool drop_ = false;
};

}  // namespace odometer
