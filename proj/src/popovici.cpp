// Commuting pair (S_1, S_2) = (V_1, W) of an n = 1 representation:
//   H_uu = intersection of (S_1 S_2)^m H
//   H(X, Y) = sum_k X^k ( intersection_m Y^m ( intersection_i ker X^* Y^i ) )
// with H(W, V_1) the part where W is a shift and V_1 unitary, and H(V_1, W)
// the opposite one.

#include <functional>
#include <set>

#include "odometer/classifier.hpp"
#include "odometer/error.hpp"

namespace odometer {

namespace {

using Map = std::function<Step(const VertexKey&)>;

struct Generator {
  Map forward;
  Map adjoint;
  Orbit forward_orbit;
  Orbit backward_orbit;
  Avoid range;  // the range of this generator, as an avoided set
  std::vector<HintKind> adjoint_total;      // adjoint defined everywhere in the region
  HintKind forward_avoids_other;             // forward orbit avoids the other range
  HintKind adjoint_total_in_other_kernel;   // adjoint total and region avoids the other range
};

bool in_hint(const AtomicRep& rep, const VertexKey& v, const std::vector<HintKind>& kinds, std::string& id) {
  for (const auto& h : rep.hints()) {
    for (auto k : kinds) {
      if (h.kind == k && h.region.contains(v)) {
        id = h.id;
        return true;
      }
    }
  }
  return false;
}

enum class Outcome { Holds, Fails, Undecided };

struct Run {
  Outcome outcome = Outcome::Undecided;
  Certificate cert;
};

// Follows `next` from v.  `stop` returns true when the current vertex
// violates the condition being tested.
Run follow(const AtomicRep& rep, const VertexKey& v, const Map& next, const std::function<std::optional<bool>(const VertexKey&)>& stop,
           const std::vector<HintKind>& forever, std::size_t budget, Orbit orbit, Avoid avoid, bool dead_is_failure) {
  Run run;
  run.cert.orbit = orbit;
  run.cert.avoid = avoid;
  std::set<VertexKey> seen;
  VertexKey cur = v;
  for (std::size_t steps = 0;; ++steps) {
    run.cert.chain.push_back(cur);
    seen.insert(cur);
    auto bad = stop(cur);
    if (!bad) return run;
    if (*bad) {
      run.outcome = Outcome::Fails;
      run.cert.kind = Certificate::Kind::OrbitHit;
      return run;
    }
    std::string id;
    if (in_hint(rep, cur, forever, id)) {
      run.outcome = Outcome::Holds;
      run.cert.kind = Certificate::Kind::HintRegion;
      run.cert.hint = id;
      return run;
    }
    if (steps >= budget) return run;
    Step s = next(cur);
    if (s.is_unexplored()) return run;
    if (s.is_zero()) {
      run.outcome = dead_is_failure ? Outcome::Fails : Outcome::Holds;
      run.cert.kind = Certificate::Kind::DeadBackwardOrbit;
      return run;
    }
    if (seen.count(s.target)) {
      run.outcome = Outcome::Holds;
      run.cert.kind = Certificate::Kind::OrbitCycle;
      for (std::size_t i = 0; i < run.cert.chain.size(); ++i) {
        if (run.cert.chain[i] == s.target) run.cert.period = run.cert.chain.size() - i;
      }
      return run;
    }
    cur = s.target;
  }
}

Verdict member(const AtomicRep& rep, const VertexKey& v, const Generator& x, const Generator& y, std::size_t budget) {
  Verdict out;
  out.budget = budget;
  auto never = [](const VertexKey&) -> std::optional<bool> { return false; };
  auto in_ran_x = [&](const VertexKey& u) -> std::optional<bool> {
    Step s = x.adjoint(u);
    if (s.is_unexplored()) return std::nullopt;
    return s.is_arrow();
  };

  // e_v = X^k e_g with g in ker X^*.
  auto strip = follow(rep, v, x.adjoint, never, x.adjoint_total, budget, x.backward_orbit, Avoid::None, false);
  if (strip.outcome == Outcome::Undecided) return out;
  out.certificates.push_back(strip.cert);
  if (strip.cert.kind != Certificate::Kind::DeadBackwardOrbit) {
    out.status = Status::Out;
    return out;
  }
  const VertexKey g = strip.cert.chain.back();

  // g in ker X^* Y^i for every i.
  auto fwd = follow(rep, g, y.forward, in_ran_x, {y.forward_avoids_other}, budget, y.forward_orbit, x.range, false);
  // g = Y^m h_m with every h_m in the same kernel set.
  auto bwd = follow(rep, g, y.adjoint, in_ran_x, {y.adjoint_total_in_other_kernel}, budget, y.backward_orbit, x.range,
                    true);
  for (const auto* r : {&fwd, &bwd}) {
    if (r->outcome == Outcome::Fails) {
      out.status = Status::Out;
      out.certificates.push_back(r->cert);
      return out;
    }
  }
  if (fwd.outcome == Outcome::Undecided || bwd.outcome == Outcome::Undecided) {
    out.certificates.clear();
    return out;
  }
  out.status = Status::In;
  out.certificates.push_back(fwd.cert);
  out.certificates.push_back(bwd.cert);
  return out;
}

}  // namespace

Classification popovici_n1(RepPtr rep, const VertexKey& v, std::size_t budget) {
  if (rep->rank() != 1) {
    throw Error(ErrorKind::RankNotOne, "the commuting-pair formulas need n = 1, got n = " + std::to_string(rep->rank()));
  }
  if (!rep->contains(v)) throw Error(ErrorKind::InvalidVertex, "'" + v + "' is not a vertex of " + rep->describe());
  const AtomicRep& r = *rep;

  Generator s1{[&](const VertexKey& u) { return r.v_of(1, u); },
               [&](const VertexKey& u) { return r.v_back(1, u); },
               Orbit::ForwardV1,
               Orbit::BackwardV,
               Avoid::RanV,
               {HintKind::VBackwardTotal},
               HintKind::ForwardV1AvoidsRanW,
               HintKind::V1BackwardTotalInKernel};
  Generator s2{[&](const VertexKey& u) { return r.w_of(u); },
               [&](const VertexKey& u) { return r.w_back(u); },
               Orbit::ForwardW,
               Orbit::BackwardW,
               Avoid::RanW,
               {HintKind::WBackwardTotal, HintKind::WBackwardTotalInKernel},
               HintKind::ForwardWAvoidsRanV,
               HintKind::WBackwardTotalInKernel};

  Classification c;
  c.vertex = v;
  c.budget = budget;

  // (S_1 S_2)^* = S_2^* S_1^*, which equals S_1^* S_2^* for a commuting pair.
  Map product_adjoint = [&](const VertexKey& u) {
    Step a = r.w_back(u);
    if (!a.is_arrow()) return a;
    return r.v_back(1, a.target);
  };
  auto never = [](const VertexKey&) -> std::optional<bool> { return false; };
  auto uu = follow(r, v, product_adjoint, never, {HintKind::WvBackwardTotal}, budget, Orbit::BackwardA, Avoid::None,
                   true);
  Verdict vu;
  vu.budget = budget;
  if (uu.outcome != Outcome::Undecided) {
    vu.status = uu.outcome == Outcome::Holds ? Status::In : Status::Out;
    vu.certificates.push_back(uu.cert);
  }
  c.verdicts[ComponentId::UU] = vu;
  // W shift, V_1 unitary on the wandering part of V_1: the V-strip first.
  c.verdicts[ComponentId::US] = member(r, v, s1, s2, budget);
  c.verdicts[ComponentId::SU] = member(r, v, s2, s1, budget);

  int in = 0, out = 0;
  ComponentId found = ComponentId::UU;
  for (const auto& [id, verdict] : c.verdicts) {
    if (verdict.status == Status::In) {
      ++in;
      found = id;
    }
    if (verdict.status == Status::Out) ++out;
  }
  Verdict ws;
  ws.budget = budget;
  if (out == 3) {
    ws.status = Status::In;
    c.resolved = ComponentId::WS;
  } else if (in > 0) {
    ws.status = Status::Out;
    if (in == 1 && out == 2) c.resolved = found;
  }
  c.verdicts[ComponentId::WS] = ws;
  return c;
}

}  // namespace odometer
