#include "odometer/classifier.hpp"

#include <algorithm>
#include <unordered_map>

#include "odometer/error.hpp"

namespace odometer {

const char* to_string(ComponentId c) {
  switch (c) {
    case ComponentId::UU: return "uu";
    case ComponentId::US: return "us";
    case ComponentId::SU: return "su";
    case ComponentId::WS: return "ws";
    case ComponentId::SS: return "ss";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::In: return "in";
    case Status::Out: return "out";
    case Status::Unknown: return "unknown";
  }
  return "?";
}

const char* to_string(Orbit o) {
  switch (o) {
    case Orbit::BackwardA: return "backward-A";
    case Orbit::BackwardV: return "backward-V";
    case Orbit::BackwardW: return "backward-W";
    case Orbit::BackwardV1: return "backward-V1";
    case Orbit::ForwardW: return "forward-W";
    case Orbit::ForwardV1: return "forward-V1";
  }
  return "?";
}

const char* to_string(Avoid a) {
  switch (a) {
    case Avoid::None: return "none";
    case Avoid::RanV: return "ran-V";
    case Avoid::RanW: return "ran-W";
  }
  return "?";
}

std::string Certificate::kind_name() const {
  switch (kind) {
    case Kind::DeadBackwardOrbit: return "DeadBackwardOrbit";
    case Kind::OrbitCycle: return "OrbitCycle";
    case Kind::HintRegion: return "HintRegion";
    case Kind::OrbitHit: return "OrbitHit";
    case Kind::StripPath: return "StripPath";
  }
  return "?";
}

bool Classification::has_unknown() const {
  return std::any_of(verdicts.begin(), verdicts.end(),
                     [](const auto& kv) { return kv.second.status == Status::Unknown; });
}

Certificate WalkResult::certificate(Orbit orbit, Avoid avoid) const {
  Certificate c;
  c.orbit = orbit;
  c.avoid = avoid;
  c.chain = chain;
  switch (end) {
    case End::Dead: c.kind = Certificate::Kind::DeadBackwardOrbit; break;
    case End::Cycle:
      c.kind = Certificate::Kind::OrbitCycle;
      c.period = period;
      break;
    case End::Hint:
      c.kind = Certificate::Kind::HintRegion;
      c.hint = hint;
      break;
    case End::Hit: c.kind = Certificate::Kind::OrbitHit; break;
    case End::Budget:
    case End::Unexplored: throw Error(ErrorKind::PreconditionFailed, "inconclusive walk has no certificate");
  }
  return c;
}

namespace {

Step step(const AtomicRep& rep, Orbit orbit, const VertexKey& v) {
  switch (orbit) {
    case Orbit::BackwardA: return wv_back(rep, v);
    case Orbit::BackwardV: {
      auto jb = v_back_any(rep, v);
      if (jb.kind == JointBack::Kind::Found) return jb.step;
      return jb.kind == JointBack::Kind::None ? Step::zero() : Step::unexplored();
    }
    case Orbit::BackwardW: return rep.w_back(v);
    case Orbit::BackwardV1: return rep.v_back(1, v);
    case Orbit::ForwardW: return rep.w_of(v);
    case Orbit::ForwardV1: return rep.v_of(1, v);
  }
  return Step::unexplored();
}

// nullopt when the answer leaves the known part of the representation.
std::optional<bool> hits(const AtomicRep& rep, Avoid avoid, const VertexKey& v) {
  switch (avoid) {
    case Avoid::None: return false;
    case Avoid::RanV: {
      auto jb = v_back_any(rep, v);
      if (jb.kind == JointBack::Kind::Unexplored) return std::nullopt;
      return jb.kind == JointBack::Kind::Found;
    }
    case Avoid::RanW: {
      Step s = rep.w_back(v);
      if (s.is_unexplored()) return std::nullopt;
      return s.is_arrow();
    }
  }
  return std::nullopt;
}

// Hint kinds that promise the walk continues forever (inside the avoided
// set's complement) once it enters the region.
bool hint_applies(HintKind kind, Orbit orbit, Avoid avoid, int n) {
  switch (orbit) {
    case Orbit::BackwardA: return avoid == Avoid::None && kind == HintKind::WvBackwardTotal;
    case Orbit::BackwardV: return avoid == Avoid::None && kind == HintKind::VBackwardTotal;
    case Orbit::BackwardW:
      if (kind == HintKind::WBackwardTotalInKernel) return avoid != Avoid::RanW;
      return avoid == Avoid::None && kind == HintKind::WBackwardTotal;
    case Orbit::BackwardV1:
      if (kind == HintKind::V1BackwardTotalInKernel) return avoid != Avoid::RanV;
      return avoid == Avoid::None && n == 1 && kind == HintKind::VBackwardTotal;
    case Orbit::ForwardW: return avoid == Avoid::RanV && kind == HintKind::ForwardWAvoidsRanV;
    case Orbit::ForwardV1: return avoid == Avoid::RanW && kind == HintKind::ForwardV1AvoidsRanW;
  }
  return false;
}

const Hint* entered_hint(const AtomicRep& rep, Orbit orbit, Avoid avoid, const VertexKey& v) {
  for (const auto& h : rep.hints()) {
    if (hint_applies(h.kind, orbit, avoid, rep.rank()) && h.region.contains(v)) return &h;
  }
  return nullptr;
}

bool inconclusive(const WalkResult& w) {
  return w.end == WalkResult::End::Budget || w.end == WalkResult::End::Unexplored;
}

}  // namespace

Session::Session(RepPtr rep, ClassifyOptions options) : rep_(std::move(rep)), options_(options) {
  if (options_.budget < 1) throw Error(ErrorKind::BadParam, "budget must be at least 1");
}

WalkResult Session::walk(Orbit orbit, const VertexKey& start, Avoid avoid) {
  auto key = std::make_tuple(orbit, start, avoid);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  WalkResult r;
  std::unordered_map<VertexKey, std::size_t> seen;
  r.chain.push_back(start);
  seen.emplace(start, 0);
  for (;;) {
    const VertexKey u = r.chain.back();
    auto hit = hits(*rep_, avoid, u);
    if (!hit) {
      r.end = WalkResult::End::Unexplored;
      break;
    }
    if (*hit) {
      r.end = WalkResult::End::Hit;
      break;
    }
    if (const Hint* h = entered_hint(*rep_, orbit, avoid, u)) {
      r.end = WalkResult::End::Hint;
      r.hint = h->id;
      break;
    }
    if (r.chain.size() > options_.budget) {
      r.end = WalkResult::End::Budget;
      break;
    }
    Step s = step(*rep_, orbit, u);
    if (s.is_zero()) {
      r.end = WalkResult::End::Dead;
      break;
    }
    if (s.is_unexplored()) {
      r.end = WalkResult::End::Unexplored;
      break;
    }
    auto [it, fresh] = seen.emplace(s.target, r.chain.size());
    if (!fresh) {
      r.end = WalkResult::End::Cycle;
      r.period = r.chain.size() - it->second;
      break;
    }
    r.chain.push_back(s.target);
  }
  memo_.emplace(key, r);
  return r;
}

Verdict Session::in_uu(const VertexKey& v) {
  auto w = walk(Orbit::BackwardA, v);
  Verdict out;
  if (inconclusive(w)) {
    out.budget = w.chain.size();
    return out;
  }
  out.status = w.end == WalkResult::End::Dead ? Status::Out : Status::In;
  out.certificates.push_back(w.certificate(Orbit::BackwardA, Avoid::None));
  return out;
}

Verdict Session::strip_then_test(const VertexKey& v, Orbit strip, Orbit forward, Orbit backward, Avoid avoid) {
  Verdict out;
  auto s = walk(strip, v);
  if (inconclusive(s)) {
    out.budget = s.chain.size();
    return out;
  }
  out.certificates.push_back(s.certificate(strip, Avoid::None));
  if (s.end != WalkResult::End::Dead) {
    // The strip never reaches a wandering vertex.
    out.status = Status::Out;
    return out;
  }
  const VertexKey terminal = s.chain.back();
  auto fwd = walk(forward, terminal, avoid);
  auto bwd = walk(backward, terminal, avoid);
  auto failed = [](const WalkResult& w) {
    return w.end == WalkResult::End::Hit || w.end == WalkResult::End::Dead;
  };
  if (failed(fwd) || failed(bwd)) {
    out.status = Status::Out;
    out.certificates.push_back(failed(fwd) ? fwd.certificate(forward, avoid) : bwd.certificate(backward, avoid));
    return out;
  }
  if (inconclusive(fwd) || inconclusive(bwd)) {
    out.certificates.clear();
    out.budget = std::max(fwd.chain.size(), bwd.chain.size());
    return out;
  }
  out.status = Status::In;
  out.certificates.push_back(fwd.certificate(forward, avoid));
  out.certificates.push_back(bwd.certificate(backward, avoid));
  return out;
}

Verdict Session::in_us(const VertexKey& v) {
  return strip_then_test(v, Orbit::BackwardV, Orbit::ForwardW, Orbit::BackwardW, Avoid::RanV);
}

Verdict Session::in_su(const VertexKey& v) {
  return strip_then_test(v, Orbit::BackwardW, Orbit::ForwardV1, Orbit::BackwardV1, Avoid::RanW);
}

std::optional<Certificate> Session::strip_path(const VertexKey& v) {
  auto s = walk(Orbit::BackwardV, v);
  if (s.end != WalkResult::End::Dead) return std::nullopt;
  auto w = walk(Orbit::BackwardW, s.chain.back(), Avoid::RanV);
  if (w.end != WalkResult::End::Dead) return std::nullopt;
  Certificate c;
  c.kind = Certificate::Kind::StripPath;
  c.orbit = Orbit::BackwardV;
  c.chain = {v};
  for (std::size_t i = 0; i + 1 < s.chain.size(); ++i) c.mu.push_back(v_back_any(*rep_, s.chain[i]).k);
  c.m = w.chain.size() - 1;
  c.core = w.chain.back();
  return c;
}

Classification Session::classify(const VertexKey& v) {
  if (!rep_->contains(v)) throw Error(ErrorKind::InvalidVertex, "'" + v + "' is not a vertex of " + rep_->describe());
  Classification c;
  c.vertex = v;
  c.budget = options_.budget;
  c.verdicts[ComponentId::UU] = in_uu(v);
  c.verdicts[ComponentId::US] = in_us(v);
  c.verdicts[ComponentId::SU] = in_su(v);

  int in = 0, out = 0;
  ComponentId found = ComponentId::UU;
  Verdict ws;
  for (const auto& [id, verdict] : c.verdicts) {
    if (verdict.status == Status::In) {
      ++in;
      found = id;
    }
    if (verdict.status == Status::Out) ++out;
  }
  if (out == 3) {
    ws.status = Status::In;
    for (const auto& [id, verdict] : c.verdicts) {
      ws.certificates.insert(ws.certificates.end(), verdict.certificates.begin(), verdict.certificates.end());
    }
    c.resolved = ComponentId::WS;
  } else if (in > 0) {
    ws.status = Status::Out;
    ws.certificates = c.verdicts[found].certificates;
    if (in == 1 && out == 2) c.resolved = found;
  }
  c.verdicts[ComponentId::WS] = ws;

  if (options_.nica_covariant.value_or(false)) {
    Verdict ss = ws;
    if (ws.status == Status::In) {
      ss.certificates.clear();
      if (auto path = strip_path(v)) {
        ss.certificates.push_back(*path);
        c.resolved = ComponentId::SS;
      } else {
        ss.status = Status::Unknown;
        ss.budget = options_.budget;
      }
    }
    c.verdicts[ComponentId::SS] = ss;
  }
  return c;
}

Verdict in_uu(RepPtr rep, const VertexKey& v, std::size_t budget) {
  return Session(std::move(rep), {budget, std::nullopt}).in_uu(v);
}

Verdict in_us(RepPtr rep, const VertexKey& v, std::size_t budget) {
  return Session(std::move(rep), {budget, std::nullopt}).in_us(v);
}

Verdict in_su(RepPtr rep, const VertexKey& v, std::size_t budget) {
  return Session(std::move(rep), {budget, std::nullopt}).in_su(v);
}

Classification classify(RepPtr rep, const VertexKey& v, std::size_t budget) {
  return Session(std::move(rep), {budget, std::nullopt}).classify(v);
}

bool replay_certificate(const AtomicRep& rep, const Certificate& cert) {
  if (cert.chain.empty()) return false;
  if (cert.kind == Certificate::Kind::StripPath) {
    if (!rep.w_back(cert.core).is_zero() || v_back_any(rep, cert.core).kind != JointBack::Kind::None) return false;
    Step s = Step::arrow(cert.core);
    for (std::uint64_t i = 0; i < cert.m && s.is_arrow(); ++i) s = rep.w_of(s.target);
    for (auto it = cert.mu.rbegin(); it != cert.mu.rend() && s.is_arrow(); ++it) s = rep.v_of(*it, s.target);
    return s.is_arrow() && s.target == cert.chain.front();
  }

  auto clear = [&](const VertexKey& u) {
    auto h = hits(rep, cert.avoid, u);
    return h && !*h;
  };
  for (std::size_t i = 0; i + 1 < cert.chain.size(); ++i) {
    if (!clear(cert.chain[i])) return false;
    Step s = step(rep, cert.orbit, cert.chain[i]);
    if (!s.is_arrow() || s.target != cert.chain[i + 1]) return false;
  }
  const VertexKey& last = cert.chain.back();
  switch (cert.kind) {
    case Certificate::Kind::DeadBackwardOrbit:
      return clear(last) && step(rep, cert.orbit, last).is_zero();
    case Certificate::Kind::OrbitCycle: {
      if (cert.period < 1 || cert.period > cert.chain.size() || !clear(last)) return false;
      Step s = step(rep, cert.orbit, last);
      return s.is_arrow() && s.target == cert.chain[cert.chain.size() - cert.period];
    }
    case Certificate::Kind::HintRegion:
      if (!clear(last)) return false;
      for (const auto& h : rep.hints()) {
        if (h.id == cert.hint) return hint_applies(h.kind, cert.orbit, cert.avoid, rep.rank()) && h.region.contains(last);
      }
      return false;
    case Certificate::Kind::OrbitHit: {
      auto h = hits(rep, cert.avoid, last);
      return cert.avoid != Avoid::None && h && *h;
    }
    case Certificate::Kind::StripPath: break;
  }
  return false;
}

BiShiftReport weak_bi_shift_check(RepPtr rep, const std::vector<VertexKey>& seeds, std::size_t budget, int depth) {
  Session session(rep, {budget, std::nullopt});
  auto ex = explore(*rep, seeds, depth);
  BiShiftReport report;
  std::optional<VertexKey> undecided;
  auto conclusive_in = [](const WalkResult& w) {
    return w.end == WalkResult::End::Cycle || w.end == WalkResult::End::Hint;
  };
  auto excluded = [](const WalkResult& w) {
    return w.end == WalkResult::End::Hit || w.end == WalkResult::End::Dead;
  };
  struct Test {
    Orbit forward, backward;
    Avoid avoid;
    const char* reason;
  };
  const Test tests[] = {
      {Orbit::ForwardW, Orbit::BackwardW, Avoid::RanV, "W has a unitary part on the kernel set of the V_i^* W^j"},
      {Orbit::ForwardV1, Orbit::BackwardV1, Avoid::RanW, "V_1 has a unitary part on the kernel set of the W^* V_1^j"},
  };
  for (const auto& u : ex.order) {
    ++report.checked;
    auto uu = session.in_uu(u);
    if (uu.status == Status::In) {
      report.status = Status::Out;
      report.witness = u;
      report.reason = "the row isometry {V_2, ..., V_n, V_1 W} has a unitary part";
      return report;
    }
    if (uu.status == Status::Unknown && !undecided) undecided = u;
    for (const auto& t : tests) {
      auto f = session.walk(t.forward, u, t.avoid);
      auto b = session.walk(t.backward, u, t.avoid);
      if (conclusive_in(f) && conclusive_in(b)) {
        report.status = Status::Out;
        report.witness = u;
        report.reason = t.reason;
        return report;
      }
      if (!excluded(f) && !excluded(b) && !undecided) undecided = u;
    }
  }
  if (undecided) {
    report.status = Status::Unknown;
    report.witness = undecided;
    report.reason = "budget exhausted";
  }
  return report;
}

}  // namespace odometer
