#include "odometer/phase.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "odometer/error.hpp"

namespace odometer {

Phase::Phase(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw Error(ErrorKind::BadParam, "phase denominator must be positive");
  num %= den;
  if (num < 0) num += den;
  const auto g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Phase Phase::parse(std::string_view text) {
  auto to_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw Error(ErrorKind::BadParam, "bad phase '" + std::string(text) + "'");
    }
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Phase(to_int(text), 1);
  return Phase(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
}

Phase Phase::operator*(const Phase& other) const {
  // turns add; keep the common denominator small.
  const auto l = std::lcm(den_, other.den_);
  return Phase(num_ * (l / den_) + other.num_ * (l / other.den_), l);
}

Phase Phase::conj() const { return Phase(-num_, den_); }

std::complex<double> Phase::value() const {
  if (num_ == 0) return {1.0, 0.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
  return std::polar(1.0, angle);
}

std::string Phase::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

}  // namespace odometer
