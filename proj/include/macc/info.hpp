#pragma once

#include <initializer_list>
#include <span>

#include "macc/joint.hpp"

namespace macc {

/// Shannon entropy of the marginal on the given axes, in bits (0 log 0 = 0).
double entropy(const JointPmf& j, std::initializer_list<Axis> axes);
double entropy(const JointPmf& j, std::span<const Axis> axes);

/// I(A; B | C) in bits via entropy differences.  The raw variant returns the
/// unclamped value; the clamped variant maps small negative float noise to 0
/// and throws InternalError below -1e-10.
double mutual_information_raw(const JointPmf& j, std::initializer_list<Axis> a,
                              std::initializer_list<Axis> b,
                              std::initializer_list<Axis> given = {});
double mutual_information(const JointPmf& j, std::initializer_list<Axis> a,
                          std::initializer_list<Axis> b,
                          std::initializer_list<Axis> given = {});

/// Negative values beyond this magnitude are treated as bugs, not noise.
inline constexpr double kNegativeInfoTolerance = 1e-10;

}  // namespace macc
