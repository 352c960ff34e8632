#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace pppf {

/// Central tolerance knobs. Defaults are chosen so that the bundled
/// reference cases reproduce bit-stable reports; every value can be
/// overridden from a scenario or `--tol-override k=v`.
struct Tolerances {
  double solver_residual = 1e-10;     // max gradient norm at a reported critical point
  double cluster_rel = 1e-9;          // critical-value clustering, relative to value spread
  double degeneracy = 1e-10;          // Morse threshold on |det Hess|, normalized
  double dedup = 1e-8;                // critical-point dedup distance
  double trace_tol = 1e-12;           // oval tracer step control
  double return_bisect = 1e-12;       // first-return refinement, relative in time
  double corrector = 1e-10;           // fiber-continuation corrector residual
  double transport_period_rel = 1e-6; // oracle period agreement
  double collision = 1e-6;            // family value-collision threshold (relative)
  double detour_radius = 0.0;         // 0 = auto (10x clustering tolerance in lambda)

  std::map<std::string, double*> fields() {
    return {{"solver_residual", &solver_residual}, {"cluster_rel", &cluster_rel},
            {"degeneracy", &degeneracy},           {"dedup", &dedup},
            {"trace_tol", &trace_tol},             {"return_bisect", &return_bisect},
            {"corrector", &corrector},             {"transport_period_rel", &transport_period_rel},
            {"collision", &collision},             {"detour_radius", &detour_radius}};
  }

  void set(const std::string& key, double value) {
    auto f = fields();
    auto it = f.find(key);
    if (it == f.end()) throw std::out_of_range("unknown tolerance '" + key + "'");
    *it->second = value;
  }

  std::map<std::string, double> as_map() {
    std::map<std::string, double> m;
    for (auto& [k, p] : fields()) m[k] = *p;
    return m;
  }
};

}  // namespace pppf
