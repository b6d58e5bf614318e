#include <doctest.h>

#include <map>
#include <random>

#include "affine.hpp"
#include "odometer/error.hpp"
#include "odometer/semigroup.hpp"

using namespace odometer;

namespace {

OdometerElement el(int n, DigitWord mu, std::uint64_t power) { return OdometerElement(n, std::move(mu), power); }

// Base-n value of mu, first digit least significant.
std::uint64_t value(const DigitWord& mu, int n) {
  std::uint64_t v = 0;
  for (auto it = mu.rbegin(); it != mu.rend(); ++it) v = v * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(*it - 1);
  return v;
}

OdometerElement random_element(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> len(0, 6), digit(1, n), power(0, 6);
  DigitWord mu(static_cast<std::size_t>(len(rng)));
  for (auto& d : mu) d = digit(rng);
  return el(n, mu, static_cast<std::uint64_t>(power(rng)));
}

}  // namespace

TEST_CASE("reduce rewrites w past v") {
  CHECK(reduce(GeneratorWord::parse("w v1", 2)) == el(2, {2}, 0));
  CHECK(reduce(GeneratorWord(2)) == OdometerElement::identity(2));
  CHECK(reduce(GeneratorWord::parse("w w w v2", 2)) == el(2, {1}, 2));
  CHECK(reduce(GeneratorWord::parse("w v2", 2)) == el(2, {1}, 1));
  CHECK(reduce(GeneratorWord::parse("v2 w v1 w", 3)) == el(3, {2, 2}, 1));
}

TEST_CASE("reduce is idempotent on normal words") {
  for (int n : {1, 2, 3}) {
    for (const auto& word : affine::all_words(n, 5)) {
      auto x = reduce(word);
      CHECK(reduce(x.to_word()) == x);
    }
  }
}

TEST_CASE("multiply") {
  CHECK(multiply(el(2, {2}, 0), el(2, {}, 1)) == el(2, {2}, 1));
  CHECK(multiply(el(2, {}, 1), el(2, {1}, 0)) == el(2, {2}, 0));
  CHECK(multiply(el(2, {1}, 1), el(2, {1}, 0)) == el(2, {1, 2}, 0));
  CHECK_THROWS_AS(multiply(el(2, {}, 1), el(3, {}, 1)), Error);
  try {
    multiply(el(2, {}, 1), el(3, {}, 1));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RankMismatch);
  }
}

TEST_CASE("identity is two-sided neutral") {
  std::mt19937_64 rng(7);
  for (int n : {1, 2, 3, 5}) {
    for (int i = 0; i < 200; ++i) {
      auto x = random_element(rng, n);
      CHECK(multiply(x, OdometerElement::identity(n)) == x);
      CHECK(multiply(OdometerElement::identity(n), x) == x);
    }
  }
}

TEST_CASE("multiply is associative on random triples") {
  std::mt19937_64 rng(20261015);
  for (int n : {1, 2, 3, 5}) {
    for (int i = 0; i < 1000; ++i) {
      auto x = random_element(rng, n), y = random_element(rng, n), z = random_element(rng, n);
      REQUIRE(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
    }
  }
}

TEST_CASE("rank one is commutative") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    auto x = random_element(rng, 1), y = random_element(rng, 1);
    REQUIRE(multiply(x, y) == multiply(y, x));
  }
}

TEST_CASE("reduce of a concatenation is the product of reductions") {
  for (int n : {2, 3}) {
    auto words = affine::all_words(n, 3);
    for (const auto& u : words) {
      for (const auto& v : words) {
        REQUIRE(reduce(u.concat(v)) == multiply(reduce(u), reduce(v)));
      }
    }
  }
}

TEST_CASE("normal forms separate exactly the affine actions") {
  for (int n : {2, 3}) {
    std::map<affine::Map, OdometerElement> seen;
    for (const auto& word : affine::all_words(n, 5)) {
      auto x = reduce(word);
      auto m = affine::of_word(word);
      REQUIRE(affine::of_element(x) == m);
      auto [it, fresh] = seen.emplace(m, x);
      if (!fresh) REQUIRE(it->second == x);
    }
  }
}

TEST_CASE("left form") {
  for (int k = 1; k <= 3; ++k) {
    auto lf = to_left_form(OdometerElement::v(3, k));
    CHECK(lf.p == static_cast<std::uint64_t>(k - 1));
    CHECK(lf.q == 1);
  }
  auto id = to_left_form(OdometerElement::identity(2));
  CHECK(id.p == 0);
  CHECK(id.q == 0);
  auto lf = to_left_form(el(2, {1}, 1));
  CHECK(lf.p == 2);
  CHECK(lf.q == 1);
  CHECK(lf.str() == "w^2 v1^1");
}

TEST_CASE("left form round trip and affine agreement") {
  for (int n : {1, 2, 3}) {
    for (const auto& x : affine::basis(n, 5)) {
      auto lf = to_left_form(x);
      REQUIRE(from_left_form(lf, n) == x);
      // w^p v_1^q acts as x -> n^q x + p
      auto m = affine::of_element(x);
      std::int64_t a = 1;
      for (std::uint64_t i = 0; i < lf.q; ++i) a *= n;
      REQUIRE(m.a == a);
      REQUIRE(m.b == static_cast<std::int64_t>(lf.p));
    }
  }
}

TEST_CASE("add one") {
  auto r = add_one({1}, 2);
  CHECK(r.digits == DigitWord{2});
  CHECK(r.carry == 0);
  r = add_one({2, 1}, 2);
  CHECK(r.digits == DigitWord{1, 2});
  CHECK(r.carry == 0);
  r = add_one({}, 4);
  CHECK(r.digits.empty());
  CHECK(r.carry == 1);
  r = add_one({3, 3}, 3);
  CHECK(r.digits == DigitWord{1, 1});
  CHECK(r.carry == 1);
  CHECK_THROWS_AS(add_one({0}, 2), Error);
  CHECK_THROWS_AS(add_one({3}, 2), Error);
}

TEST_CASE("add one is the odometer") {
  for (int n : {1, 2, 3, 4}) {
    std::vector<DigitWord> words{{}};
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (words[i].size() >= 5) continue;
      for (int k = 1; k <= n; ++k) {
        auto w = words[i];
        w.push_back(k);
        words.push_back(w);
      }
    }
    for (const auto& mu : words) {
      auto r = add_one(mu, n);
      REQUIRE(r.digits.size() == mu.size());
      std::uint64_t top = 1;
      for (std::size_t i = 0; i < mu.size(); ++i) top *= static_cast<std::uint64_t>(n);
      if (r.carry == 0) {
        REQUIRE(value(r.digits, n) == value(mu, n) + 1);
      } else {
        REQUIRE(value(mu, n) == top - 1);
        REQUIRE(value(r.digits, n) == 0);
      }
      // w v_mu = v_mu' w^carry
      auto lhs = reduce(GeneratorWord(n, {Letter::w()}).concat(el(n, mu, 0).to_word()));
      REQUIRE(lhs == el(n, r.digits, r.carry));
      auto back = r.digits;
      if (r.carry == 0) {
        REQUIRE(subtract_one(back, n));
        REQUIRE(back == mu);
      } else {
        REQUIRE_FALSE(subtract_one(back, n));
      }
    }
  }
}

TEST_CASE("add count matches repeated add one") {
  DigitWord mu{2, 1, 3};
  DigitWord cur = mu;
  std::uint64_t carry = 0;
  for (std::uint64_t c = 0; c < 40; ++c) {
    auto r = add_count(mu, c, 3);
    REQUIRE(r.digits == cur);
    REQUIRE(r.carry == carry);
    auto step = add_one(cur, 3);
    cur = step.digits;
    carry += step.carry;
  }
}

TEST_CASE("word syntax") {
  auto w = GeneratorWord::parse("  w w  v2 w v1 ", 3);
  CHECK(w.size() == 5);
  CHECK(w.str() == "w w v2 w v1");
  CHECK_THROWS_AS(GeneratorWord::parse("w v4", 3), Error);
  CHECK_THROWS_AS(GeneratorWord::parse("w x", 3), Error);
  CHECK_THROWS_AS(GeneratorWord::parse("v0", 3), Error);
  auto x = el(2, {2, 1}, 3);
  CHECK(x.str() == "v[2,1] w^3");
  CHECK(x.key() == "v[2,1]w^3");
  CHECK(OdometerElement::parse_key("v[2,1]w^3", 2) == x);
  CHECK(OdometerElement::parse_key("v[]w^0", 5) == OdometerElement::identity(5));
  CHECK_THROWS_AS(OdometerElement::parse_key("v[3]w^0", 2), Error);
  CHECK_THROWS_AS(OdometerElement::parse_key("v[1]", 2), Error);
  CHECK_THROWS_AS(OdometerElement(2, {0}, 0), Error);
  CHECK_THROWS_AS(OdometerElement(0, {}, 0), Error);
}
