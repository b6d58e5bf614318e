#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace odometer {

// A unit scalar e^{2 pi i turn} with turn an exact rational in [0, 1).
class Phase {
 public:
  Phase() = default;
  Phase(std::int64_t num, std::int64_t den);

  static Phase one() { return {}; }
  // "p/q" or "p"; any integer p, q > 0 (reduced modulo 1).
  static Phase parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_one() const { return num_ == 0; }

  Phase operator*(const Phase& other) const;
  Phase& operator*=(const Phase& other) { return *this = *this * other; }
  Phase conj() const;

  std::complex<double> value() const;
  std::string str() const;  // "p/q"

  bool operator==(const Phase&) const = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace odometer
