#pragma once

// Exact arithmetic in the odometer semigroup O_n (the Baumslag-Solitar
// monoid BS(1,n)^+), generated by w, v_1..v_n with
//   w v_k = v_{k+1}  (k < n),     w v_n = v_1 w.
//
// Every element has the normal form v_mu w^N.  mu is stored with the
// most recently applied generator first, so mu = [mu_1, ..., mu_m] means
// v_{mu_1} v_{mu_2} ... v_{mu_m}.  Read as a base-n numeral, mu_1 is the
// least significant digit and w acts as "add one".

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "odometer/error.hpp"

namespace odometer {

using Digit = int;
using DigitWord = std::vector<Digit>;

struct Letter {
  enum class Kind { W, V };
  Kind kind = Kind::W;
  Digit digit = 0;  // only meaningful for V

  static Letter w() { return {Kind::W, 0}; }
  static Letter v(Digit k) { return {Kind::V, k}; }
  bool is_w() const { return kind == Kind::W; }
  bool operator==(const Letter&) const = default;
};

class GeneratorWord {
 public:
  GeneratorWord(int n, std::vector<Letter> letters = {});

  int rank() const { return n_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }

  GeneratorWord concat(const GeneratorWord& other) const;

  // Whitespace separated tokens `w`, `v1`..`vN`.
  static GeneratorWord parse(std::string_view text, int n);
  std::string str() const;

 private:
  int n_;
  std::vector<Letter> letters_;
};

class OdometerElement {
 public:
  OdometerElement(int n, DigitWord mu = {}, std::uint64_t power = 0);

  static OdometerElement identity(int n) { return OdometerElement(n); }
  static OdometerElement w(int n) { return OdometerElement(n, {}, 1); }
  static OdometerElement v(int n, Digit k) { return OdometerElement(n, {k}, 0); }

  int rank() const { return n_; }
  const DigitWord& mu() const { return mu_; }
  std::uint64_t power() const { return power_; }

  bool operator==(const OdometerElement&) const = default;
  auto operator<=>(const OdometerElement&) const = default;

  // `v[2,1] w^3`
  std::string str() const;
  // `v[2,1]w^3`; the vertex-key form used by left_regular_on.
  std::string key() const;
  static OdometerElement parse_key(std::string_view text, int n);

  GeneratorWord to_word() const;

 private:
  int n_;
  DigitWord mu_;
  std::uint64_t power_;
};

struct LeftForm {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  bool operator==(const LeftForm&) const = default;
  // `w^p v1^q`
  std::string str() const;
};

struct AddOneResult {
  DigitWord digits;
  int carry = 0;
  bool operator==(const AddOneResult&) const = default;
};

// Rewrites w v_k -> v_{k+1} and w v_n -> v_1 w, always at the leftmost
// applicable position, until no w precedes a v.
OdometerElement reduce(const GeneratorWord& word);

// Throws Error(RankMismatch) when ranks differ.
OdometerElement multiply(const OdometerElement& x, const OdometerElement& y);

LeftForm to_left_form(const OdometerElement& x);
OdometerElement from_left_form(const LeftForm& form, int n);

// w v_mu = v_mu' w^carry.
AddOneResult add_one(const DigitWord& mu, int n);

// w^count v_mu = v_mu' w^carry; carry may exceed one.
struct AddResult {
  DigitWord digits;
  std::uint64_t carry = 0;
};
AddResult add_count(const DigitWord& mu, std::uint64_t count, int n);

// Inverse of add_one where it exists: v_mu = w v_mu' (no carry consumed).
// Returns false when mu = 1^m, i.e. v_mu is not of the form w v_mu'.
bool subtract_one(DigitWord& mu, int n);

std::string digits_str(const DigitWord& mu);

}  // namespace odometer
