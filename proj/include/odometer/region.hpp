#pragma once

// Serializable vertex predicates used by hints.
//
//   all                 every vertex
//   {a,b,c}             a finite set of keys
//   r>=0&t==0           conjunction of integer comparisons on key fields
//
// Fields: r, t      coordinates of "(r,t)" keys
//         len, N    |mu| and w-power of a normal-form key "v[..]w^N"
//         p, q      left form w^p v1^q of a normal-form key
//         m         chain index of an inductive key "g<m>:<word>"
//         wlen      length of a word key ("e" has length 0)
// A key lacking the field fails the comparison.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace odometer {

class Region {
 public:
  static Region all();
  static Region finite(std::set<std::string> keys);
  static Region parse(std::string_view spec, int n);

  bool contains(const std::string& key) const;
  bool is_finite() const { return kind_ == Kind::Finite; }
  const std::set<std::string>& keys() const { return keys_; }
  std::string str() const;

 private:
  enum class Kind { All, Finite, Predicate };
  enum class Op { Eq, Ne, Lt, Le, Gt, Ge };
  struct Atom {
    std::string field;
    Op op;
    long long value;
  };

  std::optional<long long> field_value(const std::string& key, const std::string& field) const;

  Kind kind_ = Kind::All;
  int n_ = 1;
  std::set<std::string> keys_;
  std::vector<Atom> atoms_;
};

}  // namespace odometer
