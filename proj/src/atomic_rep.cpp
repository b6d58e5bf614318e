#include "odometer/atomic_rep.hpp"

#include <deque>
#include <unordered_set>

#include "odometer/error.hpp"

namespace odometer {

std::string Step::str() const {
  switch (kind) {
    case Kind::Zero: return "0";
    case Kind::Unexplored: return "unexplored";
    case Kind::Arrow: break;
  }
  return phase.is_one() ? target : target + " @" + phase.str();
}

const char* to_string(HintKind kind) {
  switch (kind) {
    case HintKind::WvBackwardTotal: return "WvBackwardTotal";
    case HintKind::WBackwardTotal: return "WBackwardTotal";
    case HintKind::WBackwardTotalInKernel: return "WBackwardTotalInKernel";
    case HintKind::VBackwardTotal: return "VBackwardTotal";
    case HintKind::V1BackwardTotalInKernel: return "V1BackwardTotalInKernel";
    case HintKind::ForwardWAvoidsRanV: return "ForwardWAvoidsRanV";
    case HintKind::ForwardV1AvoidsRanW: return "ForwardV1AvoidsRanW";
  }
  return "?";
}

HintKind parse_hint_kind(const std::string& text) {
  for (auto k : {HintKind::WvBackwardTotal, HintKind::WBackwardTotal, HintKind::WBackwardTotalInKernel,
                 HintKind::VBackwardTotal, HintKind::V1BackwardTotalInKernel, HintKind::ForwardWAvoidsRanV,
                 HintKind::ForwardV1AvoidsRanW}) {
    if (text == to_string(k)) return k;
  }
  throw Error(ErrorKind::SyntaxError, "unknown hint kind '" + text + "'");
}

void AtomicRep::add_hint(Hint hint) {
  if (hint.id.empty()) hint.id = "h" + std::to_string(hints_.size());
  hints_.push_back(std::move(hint));
}

JointBack v_back_any(const AtomicRep& rep, const VertexKey& v) {
  JointBack out;
  bool unexplored = false;
  for (int k = 1; k <= rep.rank(); ++k) {
    Step s = rep.v_back(k, v);
    if (s.is_arrow()) return {JointBack::Kind::Found, k, std::move(s)};
    if (s.is_unexplored()) unexplored = true;
  }
  out.kind = unexplored ? JointBack::Kind::Unexplored : JointBack::Kind::None;
  return out;
}

Step wv_back(const AtomicRep& rep, const VertexKey& v) {
  auto jb = v_back_any(rep, v);
  if (jb.kind == JointBack::Kind::None) return Step::zero();
  if (jb.kind == JointBack::Kind::Unexplored) return Step::unexplored();
  // ran W V_{k-1} = ran V_k for k >= 2.
  if (jb.k >= 2) return jb.step;
  // ran W V_n = ran V_1 W: strip V_1, then W.
  Step w = rep.w_back(jb.step.target);
  if (!w.is_arrow()) return w;
  return Step::arrow(w.target, jb.step.phase * w.phase);
}

bool in_ran_v(const AtomicRep& rep, const VertexKey& v) {
  return v_back_any(rep, v).kind == JointBack::Kind::Found;
}

Exploration explore(const AtomicRep& rep, const std::vector<VertexKey>& seeds, int depth, std::size_t cap) {
  Exploration ex;
  std::deque<VertexKey> queue;
  for (const auto& s : seeds) {
    if (!rep.contains(s)) throw Error(ErrorKind::InvalidVertex, "'" + s + "' is not a vertex of " + rep.describe());
    if (ex.distance.emplace(s, 0).second) {
      ex.order.push_back(s);
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    VertexKey v = std::move(queue.front());
    queue.pop_front();
    const int d = ex.distance.at(v);
    if (d >= depth) continue;
    auto visit = [&](const Step& s) {
      if (!s.is_arrow()) return;
      if (ex.distance.emplace(s.target, d + 1).second) {
        ex.order.push_back(s.target);
        queue.push_back(s.target);
        if (ex.order.size() > cap) {
          throw Error(ErrorKind::WindowTooLarge, "exploration exceeds " + std::to_string(cap) + " vertices");
        }
      }
    };
    visit(rep.w_of(v));
    for (int k = 1; k <= rep.rank(); ++k) visit(rep.v_of(k, v));
    visit(rep.w_back(v));
    for (int k = 1; k <= rep.rank(); ++k) visit(rep.v_back(k, v));
  }
  return ex;
}

namespace {

std::string gen_name(int g) { return g == 0 ? "W" : "V" + std::to_string(g); }

Step forward(const AtomicRep& rep, int g, const VertexKey& v) {
  return g == 0 ? rep.w_of(v) : rep.v_of(g, v);
}

Step backward(const AtomicRep& rep, int g, const VertexKey& v) {
  return g == 0 ? rep.w_back(v) : rep.v_back(g, v);
}

// Applies generator g after the step s, multiplying phases.
Step then(const AtomicRep& rep, const Step& s, int g) {
  if (!s.is_arrow()) return s;
  Step t = forward(rep, g, s.target);
  if (!t.is_arrow()) return t;
  return Step::arrow(t.target, s.phase * t.phase);
}

Step then_back(const AtomicRep& rep, const Step& s, int g) {
  if (!s.is_arrow()) return s;
  Step t = backward(rep, g, s.target);
  if (!t.is_arrow()) return t;
  return Step::arrow(t.target, s.phase * t.phase);
}

CheckReport fail(std::size_t explored, const VertexKey& v, std::string relation, const Step& expected,
                 const Step& found) {
  return {false, explored, Violation{v, std::move(relation), expected.str(), found.str()}};
}

}  // namespace

CheckReport verify_relations(const AtomicRep& rep, const std::vector<VertexKey>& seeds, int depth) {
  const auto ex = explore(rep, seeds, depth);
  const int n = rep.rank();
  const std::size_t count = ex.order.size();

  // Relations first, so that a redirected arrow is reported by the
  // relation it breaks rather than by the inverse map it no longer matches.
  for (const auto& v : ex.order) {
    for (int k = 1; k <= n; ++k) {
      Step lhs = then(rep, rep.v_of(k, v), 0);
      Step rhs = k < n ? rep.v_of(k + 1, v) : then(rep, rep.w_of(v), 1);
      if (lhs.is_unexplored() || rhs.is_unexplored()) continue;
      if (lhs != rhs) {
        std::string name = k < n ? "WV_" + std::to_string(k) + "=V_" + std::to_string(k + 1) : "WV_n=V_1W";
        return fail(count, v, name, rhs, lhs);
      }
    }
  }

  for (const auto& v : ex.order) {
    for (int g = 0; g <= n; ++g) {
      Step f = forward(rep, g, v);
      if (f.is_unexplored()) continue;
      if (f.is_zero()) return fail(count, v, "isometry(" + gen_name(g) + ")", Step::arrow("<any>"), f);
      Step b = backward(rep, g, f.target);
      if (b.is_unexplored()) continue;
      Step expected = Step::arrow(v, f.phase.conj());
      if (b != expected) return fail(count, v, "injective(" + gen_name(g) + ")", expected, b);
    }
    int ranges = 0;
    for (int g = 0; g <= n; ++g) {
      Step b = backward(rep, g, v);
      if (!b.is_arrow()) continue;
      if (g > 0) ++ranges;
      Step f = forward(rep, g, b.target);
      if (f.is_unexplored()) continue;
      Step expected = Step::arrow(v, b.phase.conj());
      if (f != expected) return fail(count, v, "backward-consistency(" + gen_name(g) + ")", expected, f);
    }
    if (ranges > 1) {
      return fail(count, v, "disjoint-ranges", Step::arrow("<one range>"),
                  Step::arrow(std::to_string(ranges) + " ranges"));
    }
  }
  return {true, count, std::nullopt};
}

CheckReport is_nica_covariant(const AtomicRep& rep, const std::vector<VertexKey>& seeds, int depth) {
  const auto ex = explore(rep, seeds, depth);
  const int n = rep.rank();
  for (const auto& v : ex.order) {
    Step lhs = then_back(rep, rep.v_of(1, v), 0);
    Step rhs = then(rep, rep.w_back(v), n);
    if (lhs.is_unexplored() || rhs.is_unexplored()) continue;
    if (lhs != rhs) return {false, ex.order.size(), Violation{v, "W*V_1=V_nW*", lhs.str(), rhs.str()}};
  }
  return {true, ex.order.size(), std::nullopt};
}

CheckReport validate_hints(const AtomicRep& rep, const std::vector<VertexKey>& seeds, int depth) {
  const auto ex = explore(rep, seeds, depth);
  for (const auto& hint : rep.hints()) {
    for (const auto& v : ex.order) {
      if (!hint.region.contains(v)) continue;
      auto lands = [&](const Step& s) { return s.is_unexplored() || (s.is_arrow() && hint.region.contains(s.target)); };
      auto avoids_v = [&] { return v_back_any(rep, v).kind != JointBack::Kind::Found; };
      auto avoids_w = [&] { return !rep.w_back(v).is_arrow(); };
      bool ok = true;
      switch (hint.kind) {
        case HintKind::WvBackwardTotal: ok = lands(wv_back(rep, v)); break;
        case HintKind::WBackwardTotal: ok = lands(rep.w_back(v)); break;
        case HintKind::WBackwardTotalInKernel: ok = lands(rep.w_back(v)) && avoids_v(); break;
        case HintKind::VBackwardTotal: {
          auto jb = v_back_any(rep, v);
          ok = jb.kind == JointBack::Kind::Unexplored || (jb.kind == JointBack::Kind::Found && lands(jb.step));
          break;
        }
        case HintKind::V1BackwardTotalInKernel: ok = lands(rep.v_back(1, v)) && avoids_w(); break;
        case HintKind::ForwardWAvoidsRanV: ok = lands(rep.w_of(v)) && avoids_v(); break;
        case HintKind::ForwardV1AvoidsRanW: ok = lands(rep.v_of(1, v)) && avoids_w(); break;
      }
      if (!ok) {
        return {false, ex.order.size(),
                Violation{v, std::string("hint ") + hint.id + " " + to_string(hint.kind), hint.region.str(),
                          "claim fails"}};
      }
    }
  }
  return {true, ex.order.size(), std::nullopt};
}

Address backward_address(const AtomicRep& rep, const VertexKey& v, std::size_t budget) {
  Address a;
  std::unordered_map<VertexKey, std::size_t> seen;
  a.chain.push_back(v);
  seen.emplace(v, 0);
  while (a.digits.size() < budget) {
    auto jb = v_back_any(rep, a.chain.back());
    if (jb.kind == JointBack::Kind::None) {
      a.end = Address::End::Wandering;
      return a;
    }
    if (jb.kind == JointBack::Kind::Unexplored) {
      a.end = Address::End::Unexplored;
      return a;
    }
    a.digits.push_back(jb.k);
    a.phases.push_back(jb.step.phase.conj());
    auto [it, fresh] = seen.emplace(jb.step.target, a.chain.size());
    a.chain.push_back(jb.step.target);
    if (!fresh) {
      a.end = Address::End::Cycle;
      a.period = a.chain.size() - 1 - it->second;
      return a;
    }
  }
  a.end = Address::End::Budget;
  return a;
}

namespace {

// Rebuilds V_{top} V_fill^{count} ... : applies `first` to base, then
// `fill` count times, accumulating phases onto coef.
Step rebuild(const AtomicRep& rep, Phase coef, const Step& base, int first, int fill, std::size_t count) {
  Step s = first > 0 ? then(rep, base, first) : base;
  for (std::size_t i = 0; i < count && s.is_arrow(); ++i) s = then(rep, s, fill);
  if (!s.is_arrow()) return s;
  return Step::arrow(s.target, coef * s.phase);
}

}  // namespace

Step induce_w(const AtomicRep& rep, const VertexKey& v, const WanderingUnitary* wandering, std::size_t budget) {
  const int n = rep.rank();
  // e_v = coef * V_n^m e_cur
  Phase coef;
  VertexKey cur = v;
  std::size_t m = 0;
  std::unordered_set<VertexKey> seen{v};
  while (m <= budget) {
    auto jb = v_back_any(rep, cur);
    if (jb.kind == JointBack::Kind::Unexplored) return Step::unexplored();
    if (jb.kind == JointBack::Kind::None) {
      if (wandering) {
        auto it = wandering->find(cur);
        if (it != wandering->end()) {
          // W V_n^m e_f = V_1^m W_0 e_f
          return rebuild(rep, coef, it->second, 0, 1, m);
        }
      }
      throw Error(ErrorKind::NoCarryTarget, "all-n address of '" + v + "' ends at wandering '" + cur +
                                                "' with no wandering unitary entry");
    }
    coef *= jb.step.phase;
    if (jb.k != n) {
      // W V_n^m V_k e_p = V_1^m V_{k+1} e_p
      return rebuild(rep, coef, Step::arrow(jb.step.target), jb.k + 1, 1, m);
    }
    cur = jb.step.target;
    ++m;
    if (!seen.insert(cur).second) {
      throw Error(ErrorKind::AddressCycleAllN, "backward address of '" + v + "' cycles through digit n only");
    }
  }
  throw Error(ErrorKind::NoCarryTarget, "address of '" + v + "' is n^" + std::to_string(budget) + "...");
}

Step induce_w_back(const AtomicRep& rep, const VertexKey& v, const WanderingUnitary* wandering,
                   std::size_t budget) {
  const int n = rep.rank();
  Phase coef;
  VertexKey cur = v;
  std::size_t m = 0;
  std::unordered_set<VertexKey> seen{v};
  while (m <= budget) {
    auto jb = v_back_any(rep, cur);
    if (jb.kind == JointBack::Kind::Unexplored) return Step::unexplored();
    if (jb.kind == JointBack::Kind::None) {
      if (!wandering) {
        throw Error(ErrorKind::NoCarryTarget, "all-1 address of '" + v + "' ends at wandering '" + cur + "'");
      }
      for (const auto& [src, img] : *wandering) {
        if (img.is_arrow() && img.target == cur) {
          // W^* V_1^m e_f = V_n^m W_0^* e_f
          return rebuild(rep, coef * img.phase.conj(), Step::arrow(src), 0, n, m);
        }
      }
      return Step::zero();
    }
    coef *= jb.step.phase;
    if (jb.k != 1) {
      // W^* V_1^m V_k e_p = V_n^m V_{k-1} e_p
      return rebuild(rep, coef, Step::arrow(jb.step.target), jb.k - 1, n, m);
    }
    cur = jb.step.target;
    ++m;
    // An address 1^infinity that cycles: e_v is not in ran W.
    if (!seen.insert(cur).second) return Step::zero();
  }
  throw Error(ErrorKind::NoCarryTarget, "address of '" + v + "' is 1^" + std::to_string(budget) + "...");
}

OrbitType v_orbit_type(const AtomicRep& rep, const VertexKey& v, std::size_t budget) {
  auto a = backward_address(rep, v, budget);
  if (a.end == Address::End::Wandering) return {OrbitType::Kind::LeftRegular, a.chain.back(), 0};
  if (a.end == Address::End::Cycle) return {OrbitType::Kind::Cycle, {}, a.period};
  for (const auto& hint : rep.hints()) {
    if (hint.kind != HintKind::VBackwardTotal) continue;
    for (const auto& u : a.chain) {
      if (!hint.region.contains(u)) continue;
      if (!hint.region.is_finite()) return {OrbitType::Kind::Inductive, {}, 0};
      auto inside = backward_address(rep, u, hint.region.keys().size() + 1);
      if (inside.end == Address::End::Cycle) return {OrbitType::Kind::Cycle, {}, inside.period};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// OverlayRep

OverlayRep::OverlayRep(RepPtr base)
    : AtomicRep(base->rank()), base_(std::move(base)), beta_(static_cast<std::size_t>(rank()), Phase()) {
  for (const auto& h : base_->hints()) add_hint(h);
}

void OverlayRep::set_forward(int generator, const VertexKey& v, Step step) {
  forward_[{generator, v}] = std::move(step);
}

void OverlayRep::set_backward(int generator, const VertexKey& v, Step step) {
  backward_[{generator, v}] = std::move(step);
}

void OverlayRep::set_scaling(Phase alpha, std::vector<Phase> beta) {
  if (beta.size() != static_cast<std::size_t>(rank())) {
    throw Error(ErrorKind::BadParam, "need one V scaling per generator");
  }
  alpha_ = alpha;
  beta_ = std::move(beta);
}

Step OverlayRep::scaled(int generator, Step s, bool backward) const {
  if (!s.is_arrow()) return s;
  if (drop_) s.phase = Phase();
  Phase f = generator == 0 ? alpha_ : beta_[static_cast<std::size_t>(generator - 1)];
  s.phase *= backward ? f.conj() : f;
  return s;
}

Step OverlayRep::w_of(const VertexKey& v) const {
  if (auto it = forward_.find({0, v}); it != forward_.end()) return it->second;
  return scaled(0, base_->w_of(v), false);
}

Step OverlayRep::v_of(int k, const VertexKey& v) const {
  if (auto it = forward_.find({k, v}); it != forward_.end()) return it->second;
  return scaled(k, base_->v_of(k, v), false);
}

Step OverlayRep::w_back(const VertexKey& v) const {
  if (auto it = backward_.find({0, v}); it != backward_.end()) return it->second;
  return scaled(0, base_->w_back(v), true);
}

Step OverlayRep::v_back(int k, const VertexKey& v) const {
  if (auto it = backward_.find({k, v}); it != backward_.end()) return it->second;
  return scaled(k, base_->v_back(k, v), true);
}

}  // namespace odometer
