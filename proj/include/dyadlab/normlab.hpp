#pragma once

#include <cstdint>

#include "dyadlab/conditions.hpp"
#include "dyadlab/instance.hpp"

namespace dyadlab {

/// Result of the ratio maximization. `value` is always a valid lower bound on
/// the best trace constant: it is the ratio of the returned maximizer,
/// recomputed from scratch before returning.
struct NormEstimate {
  double value = 0.0;
  LeafFunction maximizer;
  std::uint64_t seed = 0;
};

/// Maximizes ||T_K[f d sigma]||_{L^q(d omega)} / ||f||_{L^p(d sigma)} over
/// f >= 0 by a fixed-point iteration on the stationarity equation,
/// interleaved with projected-gradient ascent on the unit L^p(sigma) sphere,
/// restarted from single-spike and random log-uniform initial points.
/// Restricting to f >= 0 loses nothing: the kernel is positive, so
/// |T f| <= T|f| pointwise. Leaves of zero sigma-mass stay frozen at 0.
NormEstimate norm_lower_bound(const Instance& instance, int starts = 32, int iters = 2000,
                              std::uint64_t seed = 0x5eed);

/// Trusted oracle for at most 4 leaves: dense angular grid over the
/// nonnegative directions with local refinement around the best candidates.
/// Throws std::domain_error on larger trees.
double norm_bruteforce_small(const Instance& instance, int grid_points = 32);

/// Swaps the measures and replaces (p, q) by (q', p'). An involution up to
/// floating error; the best trace constants of an instance and its dual
/// coincide.
Instance dual_instance(const Instance& instance);

/// End-to-end record for one instance: both condition norms, the estimated
/// trace constant, the theorem-side constants, and the check outcomes.
struct EquivalenceRecord {
  bool degenerate = false;  // kernel or a measure vanishes identically
  double c1_est = 0.0;
  double c2 = 0.0;
  double ratio = 0.0;  // c2 / c1_est (0 when degenerate)
  double w_sigma_side = 0.0;
  double w_omega_side = 0.0;
  double dlbo = 1.0;
  double sawyer_forward = 0.0;
  double sawyer_backward = 0.0;
  double kappa_suf = 0.0;
  double kappa_nec_sigma = 0.0;
  double kappa_nec_omega = 0.0;
  bool sufficiency_ok = true;   // c1_est <= kappa_suf * c2
  bool necessity_checked = false;  // only on brute-force-trusted sizes
  bool necessity_ok = true;     // c2 sides <= kappa_nec * c1 (brute force)
  double seconds = 0.0;
  std::uint64_t seed = 0;
};

struct EquivalenceOptions {
  int starts = 32;
  int iters = 2000;
  std::uint64_t seed = 0x5eed;
  int bruteforce_grid = 32;
  std::size_t bruteforce_leaf_limit = 4;
  DlboMode dlbo_mode = DlboMode::pointwise;
};

EquivalenceRecord equivalence_report(const Instance& instance,
                                     const EquivalenceOptions& options = {});

}  // namespace dyadlab
