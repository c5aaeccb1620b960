#pragma once

#include "dyadlab/instance.hpp"

namespace dyadlab {

/// How the infimum in the bounded-oscillation ratio treats zero-mass leaves:
/// `pointwise` ranges over every leaf of Q, `almost_everywhere` only over
/// leaves carrying positive base mass.
enum class DlboMode { pointwise, almost_everywhere };

/// Least A with sup_Q kbar <= A inf_Q kbar over all cubes of positive base
/// mass whose averaged kernel is not identically zero; +infinity when some
/// infimum vanishes while the supremum does not; 1 when no cube qualifies.
double dlbo_constant(const DyadicTree& tree, const Kernel& kernel, const MeasureView& base,
                     DlboMode mode = DlboMode::pointwise);

inline double dlbo_constant(const Instance& instance, Base base,
                            DlboMode mode = DlboMode::pointwise) {
  return dlbo_constant(instance.tree, instance.kernel, instance.measure(base), mode);
}

/// The two localized testing constants, taken as maxima over all cubes of the
/// finite tree; cubes with vanishing normalizing measure are skipped.
struct SawyerConstants {
  double forward = 0.0;   // sigma-normalized test against d(omega)
  double backward = 0.0;  // omega-normalized dual test against d(sigma)
};
SawyerConstants sawyer_constants(const Instance& instance);

/// The two Wolff-condition norms of the upper-triangle characterization and
/// their maximum C2.
struct WolffNorms {
  double sigma_side = 0.0;  // || W^q_{K,omega}[sigma]^{1/q} ||_{L^r(d sigma)}
  double omega_side = 0.0;  // || W^{p'}_{K,sigma}[omega]^{1/p'} ||_{L^r(d omega)}
  double c2 = 0.0;
};
WolffNorms wolff_norms(const Instance& instance);

}  // namespace dyadlab
