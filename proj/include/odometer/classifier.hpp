#pragma once

// Per-vertex membership in the components of the Wold-type decomposition
//   H = H_uu + H_us + H_su + H_ws      (H_ws = H_ss when Nica-covariant)
// decided by deterministic orbit walks.  Every In/Out verdict carries
// certificates that replay against the representation's arrows.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "odometer/atomic_rep.hpp"
#include "odometer/semigroup.hpp"

namespace odometer {

enum class ComponentId { UU, US, SU, WS, SS };
const char* to_string(ComponentId c);  // "uu", "us", ...

enum class Status { In, Out, Unknown };
const char* to_string(Status s);  // "in", "out", "unknown"

// The walks the classifier performs.  Backward orbits follow adjoints,
// which are deterministic because ranges are disjoint.
enum class Orbit {
  BackwardA,   // the row isometry {V_2, ..., V_n, V_1 W}
  BackwardV,   // joint V_k^*
  BackwardW,
  BackwardV1,
  ForwardW,
  ForwardV1,
};
const char* to_string(Orbit o);

// A set the walk must stay out of.
enum class Avoid { None, RanV, RanW };
const char* to_string(Avoid a);

struct Certificate {
  enum class Kind {
    DeadBackwardOrbit,  // the step after chain.back() is zero
    OrbitCycle,         // the step after chain.back() is chain[size - period]
    HintRegion,         // chain.back() lies in the region of hint `hint`
    OrbitHit,           // chain.back() lies in the avoided set
    StripPath,          // start = V_mu W^m core, core wandering for W and every V_k
  };
  Kind kind = Kind::DeadBackwardOrbit;
  Orbit orbit = Orbit::BackwardA;
  Avoid avoid = Avoid::None;
  std::vector<VertexKey> chain;  // chain[0] is the start vertex
  std::size_t period = 0;
  std::string hint;

  DigitWord mu;
  std::uint64_t m = 0;
  VertexKey core;

  std::string kind_name() const;
};

struct Verdict {
  Status status = Status::Unknown;
  std::vector<Certificate> certificates;
  std::size_t budget = 0;  // spent budget, for Unknown
};

struct Classification {
  VertexKey vertex;
  std::map<ComponentId, Verdict> verdicts;
  std::optional<ComponentId> resolved;
  std::size_t budget = 0;

  bool has_unknown() const;
};

struct ClassifyOptions {
  std::size_t budget = 64;
  // Set when the caller has established Nica-covariance on the relevant
  // region; the weak bi-shift part is then reported as H_ss.
  std::optional<bool> nica_covariant;
};

struct WalkResult {
  enum class End { Dead, Cycle, Hint, Hit, Budget, Unexplored };
  End end = End::Budget;
  std::vector<VertexKey> chain;
  std::size_t period = 0;
  std::string hint;

  Certificate certificate(Orbit orbit, Avoid avoid) const;
};

// A classification session owns its memo table.  Results depend only on
// (rep, vertex, options).
class Session {
 public:
  Session(RepPtr rep, ClassifyOptions options = {});

  const AtomicRep& rep() const { return *rep_; }
  const ClassifyOptions& options() const { return options_; }

  WalkResult walk(Orbit orbit, const VertexKey& start, Avoid avoid = Avoid::None);

  Verdict in_uu(const VertexKey& v);
  Verdict in_us(const VertexKey& v);
  Verdict in_su(const VertexKey& v);
  std::optional<Certificate> strip_path(const VertexKey& v);
  Classification classify(const VertexKey& v);

 private:
  // Shared shape of in_us / in_su: strip one orbit to a terminal vertex,
  // then require a forward orbit and a backward orbit of the other
  // generator to avoid a range.
  Verdict strip_then_test(const VertexKey& v, Orbit strip, Orbit forward, Orbit backward, Avoid avoid);

  RepPtr rep_;
  ClassifyOptions options_;
  std::map<std::tuple<Orbit, VertexKey, Avoid>, WalkResult> memo_;
};

Verdict in_uu(RepPtr rep, const VertexKey& v, std::size_t budget);
Verdict in_us(RepPtr rep, const VertexKey& v, std::size_t budget);
Verdict in_su(RepPtr rep, const VertexKey& v, std::size_t budget);
Classification classify(RepPtr rep, const VertexKey& v, std::size_t budget);

// Re-walks a certificate against the representation's arrows.
bool replay_certificate(const AtomicRep& rep, const Certificate& cert);

struct BiShiftReport {
  Status status = Status::In;  // In = pass, Out = fail
  std::optional<VertexKey> witness;
  std::string reason;
  std::size_t checked = 0;
};

// Checks over the region explored from seeds that no vertex witnesses a
// unitary part of W on its kernel set, of V_1 on its kernel set, or of the
// row isometry {V_2, ..., V_n, V_1 W}.
BiShiftReport weak_bi_shift_check(RepPtr rep, const std::vector<VertexKey>& seeds, std::size_t budget,
                                  int depth = 3);

// Independent n = 1 implementation from the commuting-pair formulas.
// Throws RankNotOne for n != 1.
Classification popovici_n1(RepPtr rep, const VertexKey& v, std::size_t budget);

}  // namespace odometer
