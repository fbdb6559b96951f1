#pragma once

#include <string>
#include <string_view>

#include "treepack/functree.hpp"
#include "treepack/packing.hpp"
#include "treepack/solver.hpp"

namespace treepack {

// {"n": 4, "trees": [[0], [0, 0], [0, 0, 1], [0, 0, 1, 1]]}
// Malformed text raises ParseError (with line and field); well-formed text
// that breaks a family invariant raises ValidationError.
AugTreeFamily parse_family(std::string_view text);
std::string emit_family(const AugTreeFamily& family);

// {"n": 2, "sigma": [[0, 1], [1, 0]]}
Labeling parse_labeling(std::string_view text);
std::string emit_labeling(const Labeling& labeling);

enum class OrientationFormat { Dot, Json };

// Throws NotComplete unless the orientation covers K_n exactly once.
std::string emit_orientation(const EdgeOrientation& orientation, OrientationFormat format);
// Accepts the json form only.
EdgeOrientation parse_orientation(std::string_view text);

// Header: family-index,status,nodes,millis
std::string sweep_csv(const SweepReport& report);

}  // namespace treepack
