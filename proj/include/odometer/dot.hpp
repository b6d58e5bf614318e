#pragma once

#include <string>
#include <vector>

#include "odometer/atomic_rep.hpp"

namespace odometer {

// Graphviz rendering of the patch within `radius` of the seeds: solid V
// edges labeled by digit, dashed W edges, phase="p/q" on nontrivial phases.
std::string render_dot(const AtomicRep& rep, const std::vector<VertexKey>& seeds, int radius);

}  // namespace odometer
