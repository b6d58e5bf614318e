#pragma once

// Line-oriented representation files.
//
//   # comment
//   odometer 2
//   vertex a
//   arrow w a b            W e_a = e_b
//   arrow v1 a c 1/3       V_1 e_a = e^{2 pi i/3} e_c
//   boundary c             arrows may continue past c
//   hint VBackwardTotal {a,b}
//   builtin weak_shift 2 [key=value ...]    instead of explicit listing
//
// Missing forward arrows are unexplored.  A vertex without an incoming
// arrow of some generator is outside that range, unless it is a boundary
// vertex, in which case the preimage is unexplored.

#include <string>
#include <vector>

#include "odometer/atomic_rep.hpp"

namespace odometer {

// Throws SyntaxError / PresentationError with "line N" in the message.
RepPtr parse_rep_file(const std::string& text);
RepPtr load_rep_file(const std::string& path);

// Renders the part of rep within `radius` of the seeds in file format.
// Vertices with an arrow leaving the patch are marked boundary.
std::string emit_patch(const AtomicRep& rep, const std::vector<VertexKey>& seeds, int radius);

}  // namespace odometer
