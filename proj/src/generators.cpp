#include "dyadlab/generators.hpp"

#include <cmath>
#include <stdexcept>

namespace dyadlab {

Family family_from_name(std::string_view name) {
  if (name == "single-cube") return Family::single_cube;
  if (name == "uniform-dlbo") return Family::uniform_dlbo;
  if (name == "random-sparse") return Family::random_sparse;
  if (name == "riesz") return Family::riesz;
  throw std::invalid_argument("unknown instance family: " + std::string(name));
}

std::string family_name(Family family) {
  switch (family) {
    case Family::single_cube: return "single-cube";
    case Family::uniform_dlbo: return "uniform-dlbo";
    case Family::random_sparse: return "random-sparse";
    case Family::riesz: return "riesz";
  }
  return "?";
}

LeafFunction random_masses(Rng& rng, std::size_t count, double lo, double hi) {
  LeafFunction masses(count);
  for (double& m : masses) m = rng.log_uniform(lo, hi);
  return masses;
}

LeafFunction random_nonnegative(Rng& rng, std::size_t count, double zero_fraction) {
  LeafFunction values(count, 0.0);
  bool any = false;
  for (double& v : values) {
    if (!rng.bernoulli(zero_fraction)) {
      v = rng.log_uniform(1e-2, 1e2);
      any = true;
    }
  }
  if (!any && count > 0) values[rng.below(count)] = rng.log_uniform(1e-2, 1e2);
  return values;
}

Instance generate_instance(Family family, const GenParams& params, std::uint64_t seed) {
  Rng rng = Rng::child(seed, 0x1157A9CE);
  const auto exponents = ExponentTriple::make(params.p, params.q);

  const int depth = family == Family::single_cube ? 0 : params.depth;
  DyadicTree tree(params.dimension, depth);
  const std::size_t leaves = tree.leaf_count();

  switch (family) {
    case Family::single_cube: {
      MeasureView sigma(tree, {rng.log_uniform(params.mass_lo, params.mass_hi)});
      MeasureView omega(tree, {rng.log_uniform(params.mass_lo, params.mass_hi)});
      Kernel kernel(tree);
      kernel.set(0, rng.log_uniform(1e-2, 1e2));
      return Instance{std::move(tree), std::move(sigma), std::move(omega), std::move(kernel),
                      exponents};
    }
    case Family::uniform_dlbo: {
      MeasureView sigma(tree, LeafFunction(leaves, 1.0));
      MeasureView omega(tree, LeafFunction(leaves, 1.0));
      // Level-constant geometric profile K(Q) = k0 * rho^level keeps the
      // kernel self-similar across depths; averaged kernels are constant on
      // every cube by symmetry.
      Kernel kernel(tree);
      const double k0 = rng.log_uniform(0.1, 10.0);
      const double rho = rng.log_uniform(0.25, 4.0);
      for (std::size_t cube = 0; cube < tree.cube_count(); ++cube) {
        kernel.set(cube, k0 * std::pow(rho, tree.level_of(cube)));
      }
      return Instance{std::move(tree), std::move(sigma), std::move(omega), std::move(kernel),
                      exponents};
    }
    case Family::random_sparse: {
      MeasureView sigma(tree, random_masses(rng, leaves, params.mass_lo, params.mass_hi));
      MeasureView omega(tree, random_masses(rng, leaves, params.mass_lo, params.mass_hi));
      Kernel kernel(tree);
      bool any = false;
      for (std::size_t cube = 0; cube < tree.cube_count(); ++cube) {
        if (rng.bernoulli(params.kernel_density)) {
          kernel.set(cube, rng.log_uniform(1e-3, 1e3));
          any = true;
        }
      }
      if (!any) kernel.set(0, rng.log_uniform(1e-3, 1e3));
      return Instance{std::move(tree), std::move(sigma), std::move(omega), std::move(kernel),
                      exponents};
    }
    case Family::riesz: {
      MeasureView sigma(tree, random_masses(rng, leaves, params.mass_lo, params.mass_hi));
      MeasureView omega(tree, random_masses(rng, leaves, params.mass_lo, params.mass_hi));
      // K(Q) = |Q|^{alpha-1} with |Q| = 2^{-n * level}.
      Kernel kernel(tree);
      for (std::size_t cube = 0; cube < tree.cube_count(); ++cube) {
        const double volume = std::pow(2.0, -params.dimension * tree.level_of(cube));
        kernel.set(cube, std::pow(volume, params.alpha - 1.0));
      }
      return Instance{std::move(tree), std::move(sigma), std::move(omega), std::move(kernel),
                      exponents};
    }
  }
  throw std::logic_error("generate_instance: unreachable");
}

}  // namespace dyadlab
