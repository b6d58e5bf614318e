#include <doctest.h>

#include "families.hpp"
#include "odometer/classifier.hpp"
#include "odometer/error.hpp"
#include "odometer/semigroup.hpp"

using namespace odometer;

namespace {

std::optional<ComponentId> resolved(RepPtr rep, const VertexKey& v, std::size_t budget = 32) {
  return classify(rep, v, budget).resolved;
}

VertexKey rs(int r, int t) { return "(" + std::to_string(r) + "," + std::to_string(t) + ")"; }

}  // namespace

TEST_CASE("in_uu") {
  auto ws = make_builtin("weak_shift", 2);
  auto v = in_uu(ws, "(0,0)", 32);
  CHECK(v.status == Status::Out);
  REQUIRE(v.certificates.size() == 1);
  CHECK(v.certificates[0].kind == Certificate::Kind::DeadBackwardOrbit);
  CHECK(v.certificates[0].chain.size() == 1);

  CHECK(in_uu(make_builtin("left_regular_on", 2), "v[]w^0", 32).status == Status::Out);

  auto in = in_uu(make_builtin("inductive", 2, {{"stream", "thue_morse"}}), "g0:e", 32);
  CHECK(in.status == Status::In);
  REQUIRE_FALSE(in.certificates.empty());
  CHECK(in.certificates[0].kind == Certificate::Kind::HintRegion);
}

TEST_CASE("in_us") {
  auto fu = make_builtin("left_regular_fn_unitary", 2, {{"lambda", "1/3"}});
  auto v = in_us(fu, "21", 32);
  CHECK(v.status == Status::In);
  bool cycle = false;
  for (const auto& c : v.certificates) {
    if (c.kind == Certificate::Kind::OrbitCycle && c.period == 1 && c.chain.back() == "e") cycle = true;
  }
  CHECK(cycle);
  CHECK(in_us(make_builtin("weak_shift", 2), "(0,0)", 32).status == Status::Out);
  CHECK(in_us(make_builtin("left_regular_on", 2), "v[]w^0", 32).status == Status::Out);
}

TEST_CASE("in_su") {
  auto su = make_builtin("su_tree", 2);
  CHECK(in_su(su, "e", 32).status == Status::In);
  CHECK(in_su(make_builtin("weak_shift", 2), "(0,0)", 32).status == Status::Out);
  CHECK(in_su(make_builtin("left_regular_on", 2), "v[]w^0", 32).status == Status::Out);
}

TEST_CASE("classify reproduces the family components") {
  auto lr = make_builtin("left_regular_on", 2);
  Session nc(lr, {32, true});
  for (const auto& x : {OdometerElement(2, {}, 0), OdometerElement(2, {2, 1}, 3), OdometerElement(2, {1, 1, 2}, 0),
                        OdometerElement(2, {2}, 5)}) {
    auto c = nc.classify(x.key());
    REQUIRE(c.resolved == ComponentId::SS);
    const auto& cert = c.verdicts.at(ComponentId::SS).certificates.at(0);
    CHECK(cert.kind == Certificate::Kind::StripPath);
    CHECK(cert.mu == x.mu());
    CHECK(cert.m == x.power());
    CHECK(cert.core == "v[]w^0");
  }
  // Without Nica-covariance the same vertex is only known to be in H_ws.
  CHECK(resolved(lr, "v[]w^0") == ComponentId::WS);

  auto ws = classify(make_builtin("weak_shift", 2), "(0,0)", 32);
  CHECK(ws.resolved == ComponentId::WS);
  CHECK(ws.verdicts.count(ComponentId::SS) == 0);
  for (auto c : {ComponentId::UU, ComponentId::US, ComponentId::SU}) CHECK(ws.verdicts.at(c).status == Status::Out);

  CHECK(resolved(make_builtin("su_tree", 2), "e") == ComponentId::SU);
  CHECK(resolved(make_builtin("left_regular_fn_unitary", 2, {{"lambda", "1/3"}}), "e") == ComponentId::US);
  CHECK(resolved(make_builtin("inductive", 2, {{"stream", "thue_morse"}}), "g0:e") == ComponentId::UU);
  CHECK(resolved(make_builtin("slocinski", 1), "(0,0)") == ComponentId::WS);
}

TEST_CASE("sampled vertices resolve to the family component") {
  const std::map<std::string, ComponentId> expect{{"left_regular_on", ComponentId::WS},
                                                  {"left_regular_fn_unitary", ComponentId::US},
                                                  {"su_tree", ComponentId::SU},
                                                  {"weak_shift", ComponentId::WS},
                                                  {"slocinski", ComponentId::WS},
                                                  {"inductive", ComponentId::UU}};
  for (const auto& f : families::all()) {
    auto rep = f.make();
    Session s(rep, {32, std::nullopt});
    for (const auto& v : families::sample(*rep, 4, 60, 17)) {
      auto c = s.classify(v);
      CHECK_MESSAGE(c.resolved == expect.at(f.name), f.name << " at " << v);
    }
  }
}

TEST_CASE("partition, replay and reducing closure") {
  for (const auto& f : families::all()) {
    auto rep = f.make();
    Session s(rep, {32, std::nullopt});
    for (const auto& v : families::sample(*rep, 5, 80, 3)) {
      auto c = s.classify(v);
      int in = 0;
      for (const auto& [id, verdict] : c.verdicts) {
        if (verdict.status == Status::In) ++in;
        for (const auto& cert : verdict.certificates) {
          REQUIRE_MESSAGE(replay_certificate(*rep, cert), f.name << " " << to_string(id) << " at " << v);
        }
      }
      CHECK(in <= 1);
      if (!c.has_unknown()) CHECK(in == 1);
      if (!c.resolved) continue;
      for (int g = 0; g <= f.n; ++g) {
        for (auto step : {families::forward(*rep, g, v), families::backward(*rep, g, v)}) {
          if (!step.is_arrow()) continue;
          auto other = s.classify(step.target);
          if (other.resolved) CHECK_MESSAGE(*other.resolved == *c.resolved, f.name << " " << v << " -> " << step.target);
        }
      }
    }
  }
}

TEST_CASE("a tampered certificate does not replay") {
  auto ws = make_builtin("weak_shift", 2);
  auto c = in_us(ws, "(0,0)", 32);
  REQUIRE(c.status == Status::Out);
  auto cert = c.certificates.at(0);
  REQUIRE(replay_certificate(*ws, cert));
  cert.chain.push_back("(5,5)");
  CHECK_FALSE(replay_certificate(*ws, cert));
  auto uu = in_uu(ws, "(0,0)", 32).certificates.at(0);
  uu.chain[0] = "(0,1)";
  CHECK_FALSE(replay_certificate(*ws, uu));
}

TEST_CASE("classification ignores phases") {
  for (const auto& f : families::all()) {
    auto rep = f.make();
    auto plain = std::make_shared<OverlayRep>(rep);
    plain->drop_phases();
    Session a(rep, {32, std::nullopt}), b(plain, {32, std::nullopt});
    for (const auto& v : families::sample(*rep, 4, 40, 9)) {
      auto x = a.classify(v), y = b.classify(v);
      CHECK(x.resolved == y.resolved);
      for (const auto& [id, verdict] : x.verdicts) CHECK(verdict.status == y.verdicts.at(id).status);
    }
  }
}

TEST_CASE("Nica-covariant weak bi-shift vertices have strip paths") {
  for (int n : {1, 2, 3}) {
    auto lr = make_builtin("left_regular_on", n);
    // Stripping W from v_mu takes as many steps as the base-n value of mu.
    Session s(lr, {128, true});
    for (const auto& v : families::sample(*lr, 4, 50, 21)) {
      auto c = s.classify(v);
      REQUIRE_MESSAGE(c.resolved == ComponentId::SS, "n=" << n << " at " << v);
      CHECK(replay_certificate(*lr, c.verdicts.at(ComponentId::SS).certificates.at(0)));
    }
  }
}

TEST_CASE("weak bi-shift check") {
  auto ws = make_builtin("weak_shift", 2);
  CHECK(weak_bi_shift_check(ws, {"(0,0)", "(-1,0)", "(0,-1)", "(3,5)"}, 12).status == Status::In);
  CHECK(weak_bi_shift_check(make_builtin("left_regular_on", 2), {"v[]w^0"}, 12).status == Status::In);
  auto su = weak_bi_shift_check(make_builtin("su_tree", 2), {"e"}, 12);
  CHECK(su.status == Status::Out);
  CHECK(su.witness == "e");
}

TEST_CASE("the n = 1 formulas agree with the classifier") {
  auto sl = make_builtin("slocinski", 1);
  auto ws1 = make_builtin("weak_shift", 1);
  for (int r = -10; r <= 10; ++r) {
    for (int t = -10; t <= 10; ++t) {
      if (r < 0 && t < 0) continue;
      auto p = popovici_n1(sl, rs(r, t), 32);
      auto c = classify(ws1, rs(r, t), 32);
      REQUIRE(p.resolved == ComponentId::WS);
      REQUIRE(c.resolved == ComponentId::WS);
      for (auto id : {ComponentId::UU, ComponentId::US, ComponentId::SU, ComponentId::WS}) {
        REQUIRE(p.verdicts.at(id).status == c.verdicts.at(id).status);
      }
    }
  }
  auto lr1 = make_builtin("left_regular_on", 1);
  for (const auto& v : families::sample(*lr1, 4, 30, 2)) {
    auto p = popovici_n1(lr1, v, 32);
    CHECK(p.resolved == ComponentId::WS);
    CHECK(classify(lr1, v, 32).resolved == ComponentId::WS);
  }
  try {
    popovici_n1(make_builtin("weak_shift", 2), "(0,0)", 8);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RankNotOne);
  }
}

TEST_CASE("W preserves the V-address length in the unitary-W family") {
  auto fu = make_builtin("left_regular_fn_unitary", 2, {{"lambda", "1/3"}});
  for (const auto& v : families::sample(*fu, 6, 200, 4)) {
    auto a = backward_address(*fu, v, 64);
    auto b = backward_address(*fu, fu->w_of(v).target, 64);
    REQUIRE(a.end == Address::End::Wandering);
    CHECK(a.digits.size() == b.digits.size());
  }
}

TEST_CASE("backward {W V_i} totality matches totality of W^* and the joint V^*") {
  for (const std::string stream : {"thue_morse", "periodic(12)", "periodic(1)", "periodic(112)"}) {
    auto in = make_builtin("inductive", 2, {{"stream", stream}});
    auto ex = explore(*in, in->seeds(), 4);
    bool wv = true, separate = true;
    for (const auto& v : ex.order) {
      wv = wv && wv_back(*in, v).is_arrow();
      separate = separate && in->w_back(v).is_arrow() && v_back_any(*in, v).kind == JointBack::Kind::Found;
    }
    CHECK_MESSAGE(wv == separate, stream);
    CHECK(wv == (stream != "periodic(1)"));
  }
}

TEST_CASE("too small a budget gives Unknown, never a wrong answer") {
  auto in = make_builtin("inductive", 2, {{"stream", "periodic(1)"}});
  auto c = classify(in, "g0:e", 2);
  for (const auto& [id, verdict] : c.verdicts) {
    for (const auto& cert : verdict.certificates) CHECK(replay_certificate(*in, cert));
  }
  auto ws = make_builtin("weak_shift", 2);
  auto u = in_us(ws, "(7,0)", 1);
  CHECK(u.status != Status::In);
}
