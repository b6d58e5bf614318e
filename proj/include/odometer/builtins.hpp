#pragma once

// Builtin families of atomic representations.
//
//   left_regular_on            keys "v[2,1]w^3", left multiplication on O_n
//   left_regular_fn_unitary    keys "e", "21": words in F_n^+, W unitary on
//                              each level, W e_e = lambda e_e   (lambda=p/q)
//   su_tree                    keys "e" and words whose last letter is not 1
//   weak_shift                 keys "(r,t)" with r >= 0 or t >= 0
//   slocinski                  weak_shift with n = 1
//   inductive                  keys "g<m>:<word>"   (stream=thue_morse or
//                              stream=periodic(<digits>))

#include <map>
#include <string>
#include <vector>

#include "odometer/atomic_rep.hpp"

namespace odometer {

using BuiltinParams = std::map<std::string, std::string>;

const std::vector<std::string>& builtin_names();

RepPtr make_builtin(const std::string& name, int n, const BuiltinParams& params = {});

// The digit k_m of the chain of an inductive stream, m >= 1.
int stream_digit(const std::string& stream, int n, std::uint64_t m);

}  // namespace odometer
