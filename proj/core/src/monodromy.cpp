#include "pppf/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "pppf/errors.hpp"

namespace pppf {

MonodromyOperator picard_lefschetz(const IntersectionForm& form, const std::vector<int>& vanishing_labels) {
  std::size_t mu = form.J.rows();
  for (std::size_t a = 0; a < vanishing_labels.size(); ++a)
    for (std::size_t b = a + 1; b < vanishing_labels.size(); ++b)
      if (form.J(vanishing_labels[a], vanishing_labels[b]) != 0)
        throw NonCommutingVanishingSet("vanishing cycles at one value intersect");

  MonodromyOperator op;
  op.matrix = QMat::identity(mu);
  op.vanishing = vanishing_labels;
  // h(e_j) = e_j - sum_i (e_j o d_i) d_i ; column j picks up -J(j, d_i) at row d_i.
  for (int d : vanishing_labels)
    for (std::size_t j = 0; j < mu; ++j)
      if (form.J(j, d) != 0) op.matrix(d, j) -= form.J(j, d);

  Rational det = op.matrix.det();
  if (det != 1 && det != -1) throw SolverFailure("Picard-Lefschetz operator is not unimodular");
  return op;
}

std::vector<int> labels_from_divide(const CriticalStructure& crit, const Divide& dv, const CycleBasis& basis) {
  std::vector<int> labels(crit.points.size(), -1);
  for (std::size_t i = 0; i < crit.points.size(); ++i) {
    const auto& p = crit.points[i];
    if (p.morse_type == MorseType::center) {
      for (std::size_t r = 0; r < dv.regions.size(); ++r)
        if (dv.regions[r].crit_index == static_cast<int>(i))
          labels[i] = basis.label_of_center(static_cast<int>(r));
    } else if (p.morse_type == MorseType::saddle) {
      double best = 1e300;
      int best_dp = -1;
      for (std::size_t v = 0; v < dv.double_points.size(); ++v) {
        double dist = std::hypot(p.x.real() - dv.double_points[v].x, p.y.real() - dv.double_points[v].y);
        if (dist < best) { best = dist; best_dp = static_cast<int>(v); }
      }
      double scale = 1.0 + std::abs(p.x) + std::abs(p.y);
      if (best_dp >= 0 && best < 1e-6 * scale) labels[i] = basis.label_of_double_point(best_dp);
    }
  }
  return labels;
}

std::vector<MonodromyOperator> monodromy_group(const CriticalStructure& crit, const IntersectionForm& form,
                                               const std::vector<int>& point_labels, double t_ref) {
  if (point_labels.size() != crit.points.size())
    throw ValidationError("monodromy_group: one label per critical point required");
  for (int l : point_labels)
    if (l < 0) throw ValidationError("monodromy_group: unlabeled critical point");

  std::vector<MonodromyOperator> ops;
  for (const auto& level : crit.levels) {
    std::vector<int> vanish;
    for (int m : level.members) vanish.push_back(point_labels[m]);
    std::sort(vanish.begin(), vanish.end());
    MonodromyOperator op = picard_lefschetz(form, vanish);
    op.around_value = level.value;
    ops.push_back(std::move(op));
  }
  std::sort(ops.begin(), ops.end(), [&](const MonodromyOperator& a, const MonodromyOperator& b) {
    double ta = std::atan2(a.around_value.imag(), a.around_value.real() - t_ref);
    double tb = std::atan2(b.around_value.imag(), b.around_value.real() - t_ref);
    if (ta != tb) return ta < tb;
    return std::abs(a.around_value - Complex(t_ref, 0)) < std::abs(b.around_value - Complex(t_ref, 0));
  });
  return ops;
}

std::vector<MonodromyOperator> sub_monodromy(const std::vector<MonodromyOperator>& ops,
                                             const std::vector<char>& classes) {
  if (classes.size() != ops.size()) throw ValidationError("sub_monodromy: one class per operator required");
  std::vector<MonodromyOperator> out;
  MonodromyOperator zprod;
  bool any_z = false;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (classes[i] == 'c') {
      out.push_back(ops[i]);
    } else if (classes[i] == 'z') {
      if (!any_z) {
        zprod = ops[i];
        any_z = true;
      } else {
        // ops come counterclockwise-ordered; later loops compose on the left
        zprod.matrix = ops[i].matrix * zprod.matrix;
        zprod.vanishing.insert(zprod.vanishing.end(), ops[i].vanishing.begin(), ops[i].vanishing.end());
      }
    } else {
      throw ValidationError("sub_monodromy: classes must be 'c' or 'z'");
    }
  }
  if (!any_z) throw EmptyZClass("no zero-limit critical value");
  out.push_back(std::move(zprod));
  return out;
}

QSpan saturate_orbit(const QVec& seed, const std::vector<QMat>& ops) {
  QSpan span;
  std::deque<QVec> queue{seed};
  while (!queue.empty()) {
    QVec v = std::move(queue.front());
    queue.pop_front();
    if (!span.insert(v)) continue;
    for (const auto& m : ops) queue.push_back(m * v);
  }
  return span;
}

OrbitReport orbit_report(int seed_label, const std::vector<MonodromyOperator>& ops,
                         const IntersectionForm& form) {
  std::size_t mu = form.J.rows();
  if (seed_label < 0 || static_cast<std::size_t>(seed_label) >= mu)
    throw ValidationError("orbit_report: seed label out of range");

  std::vector<QMat> mats;
  for (const auto& op : ops) mats.push_back(op.matrix);

  QVec seed(mu, 0);
  seed[seed_label] = 1;
  QSpan orbit = saturate_orbit(seed, mats);

  OrbitReport rep;
  rep.seed_label = seed_label;
  rep.rank = static_cast<int>(orbit.dim());
  rep.codimension = static_cast<int>(mu) - rep.rank;
  rep.orbit_basis = orbit.basis();

  // Orbit covers the compactified-fiber homology iff orbit + radical spans
  // everything; the radical of the form is exactly what dies at infinity.
  QSpan extended;
  for (const auto& b : orbit.basis()) extended.insert(b);
  for (const auto& v : form.J.kernel()) extended.insert(v);
  rep.contains_compact_homology = extended.dim() == mu;

  rep.invariant_complement_dim = residual_cycles(form, mats).dimension;

  if (rep.codimension == 1)
    rep.verdict = "abelian";
  else if (rep.contains_compact_homology)
    rep.verdict = "iterated_length_2";
  else
    rep.verdict = "undetermined";
  return rep;
}

}  // namespace pppf
