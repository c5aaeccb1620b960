#pragma once

#include <string>
#include <string_view>

#include "dyadlab/instance.hpp"
#include "dyadlab/rng.hpp"

namespace dyadlab {

/// Instance families the harness can draw from.
///  - single_cube: depth-0 tree, one kernel value, closed-form norms.
///  - uniform_dlbo: level-constant geometric kernel on uniform masses, so the
///    bounded-oscillation constant is exactly 1.
///  - random_sparse: log-uniform leaf masses, kernel present per cube with a
///    given density.
///  - riesz: kernel |Q|^{alpha-1} by level, log-uniform masses.
enum class Family { single_cube, uniform_dlbo, random_sparse, riesz };

Family family_from_name(std::string_view name);
std::string family_name(Family family);

struct GenParams {
  int dimension = 1;
  int depth = 3;
  double p = 3.0;
  double q = 2.0;
  double alpha = 0.5;           // riesz kernel exponent
  double kernel_density = 0.5;  // random_sparse fill probability
  double mass_lo = 1e-3;
  double mass_hi = 1e3;
};

/// Deterministic in (family, params, seed).
Instance generate_instance(Family family, const GenParams& params, std::uint64_t seed);

/// log-uniform leaf masses in [lo, hi].
LeafFunction random_masses(Rng& rng, std::size_t count, double lo, double hi);

/// Nonnegative leaf values: log-uniform entries with a fraction zeroed.
LeafFunction random_nonnegative(Rng& rng, std::size_t count, double zero_fraction = 0.2);

}  // namespace dyadlab
