#pragma once

#include <string>
#include <vector>

#include "pppf/homology.hpp"

namespace pppf {

struct MonodromyOperator {
  QMat matrix;                 // mu x mu, unimodular, integer entries
  Complex around_value;        // critical value the loop encircles
  std::vector<int> vanishing;  // basis labels vanishing at that value
};

/// h(gamma) = gamma - (gamma o delta) delta, composed over the given
/// vanishing labels. Requires the labels to pairwise not intersect, which
/// makes the composition order-free; otherwise NonCommutingVanishingSet.
MonodromyOperator picard_lefschetz(const IntersectionForm& form, const std::vector<int>& vanishing_labels);

/// Basis label carried by each critical point of a divide member: saddles
/// match double points by location, centers match their region. -1 when a
/// point cannot be matched (the divide does not show all homology).
std::vector<int> labels_from_divide(const CriticalStructure& crit, const Divide& dv, const CycleBasis& basis);

/// One operator per critical level, ordered counterclockwise by the argument
/// of (level value - t_ref). point_labels[i] is the basis label vanishing at
/// critical point i (from labels_from_divide or family continuation).
std::vector<MonodromyOperator> monodromy_group(const CriticalStructure& crit, const IntersectionForm& form,
                                               const std::vector<int>& point_labels, double t_ref);

/// The K operators around center-limit values plus one operator for a single
/// counterclockwise loop around all zero-limit values (their ordered product).
/// classes[i] must be 'c' or 'z' per operator; throws EmptyZClass.
std::vector<MonodromyOperator> sub_monodromy(const std::vector<MonodromyOperator>& ops,
                                             const std::vector<char>& classes);

struct OrbitReport {
  int seed_label = -1;
  int rank = 0;
  int codimension = 0;
  std::vector<QVec> orbit_basis;
  bool contains_compact_homology = false;
  int invariant_complement_dim = 0;
  std::string verdict;  // "abelian" | "iterated_length_2" | "undetermined"
};

/// Saturates the span of the seed cycle under all operators, over exact
/// rationals. seed_label must be a center cycle (an oval).
OrbitReport orbit_report(int seed_label, const std::vector<MonodromyOperator>& ops,
                         const IntersectionForm& form);

/// Span saturation for an arbitrary seed vector; used internally and by the
/// family module.
QSpan saturate_orbit(const QVec& seed, const std::vector<QMat>& ops);

}  // namespace pppf
