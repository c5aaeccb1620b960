#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dyadlab/generators.hpp"
#include "dyadlab/normlab.hpp"
#include "dyadlab/operators.hpp"
#include "dyadlab/proofcheck.hpp"
#include "dyadlab/rng.hpp"
#include "test_util.hpp"

using namespace dyadlab;
using testutil::close;

namespace {

Instance random_instance(std::uint64_t seed, int depth) {
  Rng rng = Rng::child(seed, 99);
  GenParams params;
  params.depth = depth;
  params.q = rng.uniform(1.3, 2.4);
  params.p = params.q + rng.uniform(0.5, 2.0);
  return generate_instance(Family::random_sparse, params, seed);
}

double recomputed_ratio(const Instance& inst, const LeafFunction& f) {
  const double denom = lp_norm(f, inst.exponents.p, inst.sigma);
  if (!(denom > 0.0)) return 0.0;
  return lp_norm(apply_T(inst, Base::sigma, f), inst.exponents.q, inst.omega) / denom;
}

}  // namespace

TEST_CASE("norm_lower_bound: single-cube closed form and degenerate cases") {
  Rng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    GenParams params;
    params.q = rng.uniform(1.3, 2.5);
    params.p = params.q + rng.uniform(0.4, 2.2);
    const Instance inst = generate_instance(Family::single_cube, params, 100 + trial);
    const double closed = inst.kernel[0] *
                          std::pow(inst.sigma.total(), 1.0 / inst.exponents.p_dual) *
                          std::pow(inst.omega.total(), 1.0 / inst.exponents.q);
    const NormEstimate estimate = norm_lower_bound(inst, 2, 50, trial);
    CHECK(close(estimate.value, closed, 1e-6));
  }

  const Instance fixture = testutil::fixture_a();
  Kernel zero(fixture.tree);
  Instance no_kernel{fixture.tree, fixture.sigma, fixture.omega, zero, fixture.exponents};
  CHECK(norm_lower_bound(no_kernel, 2, 10).value == 0.0);
  MeasureView null_sigma(fixture.tree, {0.0, 0.0});
  Instance no_sigma{fixture.tree, null_sigma, fixture.omega, fixture.kernel, fixture.exponents};
  CHECK(norm_lower_bound(no_sigma, 2, 10).value == 0.0);
}

TEST_CASE("norm_lower_bound: reported value is the recomputed ratio of the maximizer") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Instance inst = random_instance(seed, 1 + static_cast<int>(seed % 4));
    const NormEstimate estimate = norm_lower_bound(inst, 8, 300, seed);
    CHECK(close(recomputed_ratio(inst, estimate.maximizer), estimate.value, 1e-12));
  }
}

TEST_CASE("oracles agree on small instances") {
  const Instance fixture = testutil::fixture_a();
  const double iterated = norm_lower_bound(fixture, 16, 800, 1).value;
  const double gridded = norm_bruteforce_small(fixture);
  CHECK(std::abs(iterated - gridded) <= 1e-4 * gridded);

  for (std::uint64_t seed = 30; seed < 55; ++seed) {
    const Instance inst = random_instance(seed, 1 + static_cast<int>(seed % 2));
    REQUIRE(inst.tree.leaf_count() <= 4);
    const double a = norm_lower_bound(inst, 16, 800, seed).value;
    const double b = norm_bruteforce_small(inst);
    CHECK(std::abs(a - b) <= 1e-4 * b);
  }

  DyadicTree big(1, 3);
  Kernel k(big);
  k.set(0, 1.0);
  Instance too_big{big, MeasureView(big, LeafFunction(8, 1.0)),
                   MeasureView(big, LeafFunction(8, 1.0)), k, ExponentTriple::make(3.0, 2.0)};
  CHECK_THROWS_AS(norm_bruteforce_small(too_big), std::domain_error);
}

TEST_CASE("brute force scales by lambda^{1/p'} under sigma scaling") {
  for (std::uint64_t seed = 60; seed < 70; ++seed) {
    const Instance inst = random_instance(seed, 2);
    const double base = norm_bruteforce_small(inst);
    const double lambda = 3.0;
    LeafFunction scaled = inst.sigma.leaf_masses();
    for (double& m : scaled) m *= lambda;
    Instance scaled_inst{inst.tree, MeasureView(inst.tree, scaled), inst.omega, inst.kernel,
                         inst.exponents};
    const double gain = std::pow(lambda, 1.0 / inst.exponents.p_dual);
    CHECK(std::abs(norm_bruteforce_small(scaled_inst) - gain * base) <= 2e-4 * gain * base);
  }
}

TEST_CASE("dual instance: involution, exponents, and norm equality") {
  const Instance fixture = testutil::fixture_a();
  const Instance dual = dual_instance(fixture);
  CHECK(close(dual.exponents.p, 2.0));
  CHECK(close(dual.exponents.q, 1.5));
  CHECK(dual.sigma.leaf_masses() == fixture.omega.leaf_masses());
  const Instance twice = dual_instance(dual);
  CHECK(close(twice.exponents.p, 3.0));
  CHECK(close(twice.exponents.q, 2.0));

  for (std::uint64_t seed = 80; seed < 95; ++seed) {
    const Instance inst = random_instance(seed, 1 + static_cast<int>(seed % 3));
    const double primal = norm_lower_bound(inst, 24, 1500, seed).value;
    const double dual_value = norm_lower_bound(dual_instance(inst), 24, 1500, seed).value;
    CHECK(std::abs(primal - dual_value) <= 1e-4 * primal);
  }
}

TEST_CASE("norm estimate scales with both measures") {
  for (std::uint64_t seed = 200; seed < 210; ++seed) {
    const Instance inst = random_instance(seed, 2);
    const auto& e = inst.exponents;
    const double base = norm_lower_bound(inst, 16, 800, seed).value;

    const double lambda = 10.0;
    LeafFunction sigma_scaled = inst.sigma.leaf_masses();
    for (double& m : sigma_scaled) m *= lambda;
    Instance by_sigma{inst.tree, MeasureView(inst.tree, sigma_scaled), inst.omega, inst.kernel,
                      e};
    const double sigma_gain = std::pow(lambda, 1.0 / e.p_dual);
    CHECK(std::abs(norm_lower_bound(by_sigma, 16, 800, seed).value - sigma_gain * base) <=
          1e-4 * sigma_gain * base);

    LeafFunction omega_scaled = inst.omega.leaf_masses();
    for (double& m : omega_scaled) m *= lambda;
    Instance by_omega{inst.tree, inst.sigma, MeasureView(inst.tree, omega_scaled), inst.kernel,
                      e};
    const double omega_gain = std::pow(lambda, 1.0 / e.q);
    CHECK(std::abs(norm_lower_bound(by_omega, 16, 800, seed).value - omega_gain * base) <=
          1e-4 * omega_gain * base);
  }
}

TEST_CASE("equivalence report: single cube collapses, zero kernel flags degenerate") {
  GenParams params;
  params.p = 3.0;
  params.q = 2.0;
  const Instance single = generate_instance(Family::single_cube, params, 7);
  EquivalenceOptions options;
  options.starts = 4;
  options.iters = 100;
  const EquivalenceRecord record = equivalence_report(single, options);
  CHECK(close(record.ratio, 1.0, 1e-6));
  CHECK(record.sufficiency_ok);
  CHECK(record.necessity_checked);
  CHECK(record.necessity_ok);

  const Instance fixture = testutil::fixture_a();
  Kernel zero(fixture.tree);
  Instance no_kernel{fixture.tree, fixture.sigma, fixture.omega, zero, fixture.exponents};
  const EquivalenceRecord degenerate = equivalence_report(no_kernel, options);
  CHECK(degenerate.degenerate);
  CHECK(degenerate.c1_est == 0.0);
  CHECK(degenerate.c2 == 0.0);
}

TEST_CASE("equivalence report: random suite satisfies the sandwich") {
  EquivalenceOptions options;
  options.starts = 8;
  options.iters = 400;
  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    const Instance inst = random_instance(seed, 1 + static_cast<int>(seed % 5));
    options.seed = seed;
    const EquivalenceRecord record = equivalence_report(inst, options);
    CHECK(record.sufficiency_ok);
    if (record.necessity_checked) CHECK(record.necessity_ok);
    CHECK(record.c1_est > 0.0);
    CHECK(record.c1_est <= record.kappa_suf * record.c2 * (1.0 + 1e-9));
  }
}
