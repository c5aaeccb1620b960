#include "dyadlab/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>
#include <utility>

#include "dyadlab/conditions.hpp"
#include "dyadlab/corona.hpp"
#include "dyadlab/generators.hpp"
#include "dyadlab/normlab.hpp"
#include "dyadlab/operators.hpp"
#include "dyadlab/proofcheck.hpp"
#include "dyadlab/rng.hpp"

namespace dyadlab::suites {

namespace {

constexpr double kTight = 1e-12;
constexpr double kAlgebraic = 1e-9;

const std::pair<double, double> kExponentPool[] = {{3.0, 2.0}, {4.0, 1.5}, {2.5, 2.0}};

// Runs fn over [0, count) with `jobs` workers; results land in index order.
std::vector<InstanceChecks> for_each_instance(
    int count, int jobs, const std::function<InstanceChecks(std::uint64_t)>& fn) {
  std::vector<InstanceChecks> out(static_cast<std::size_t>(std::max(count, 0)));
  if (count <= 0) return out;
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(i);
    return out;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::uint64_t>(i));
    }
  };
  std::vector<std::thread> threads;
  for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& thread : threads) thread.join();
  return out;
}

Result finish(std::string suite, std::vector<InstanceChecks> instances) {
  Result result;
  result.suite = std::move(suite);
  result.instances = std::move(instances);
  for (const auto& inst : result.instances) {
    for (const auto& check : inst.checks) result.pass = result.pass && check.pass;
  }
  return result;
}

GenParams sparse_params(Rng& rng, int max_depth, std::uint64_t pick) {
  GenParams params;
  params.depth = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_depth)));
  const auto [p, q] = kExponentPool[pick % 3];
  params.p = p;
  params.q = q;
  params.kernel_density = 0.6;
  return params;
}

}  // namespace

std::size_t Result::check_count() const {
  std::size_t n = 0;
  for (const auto& inst : instances) n += inst.checks.size();
  return n;
}

double Result::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& inst : instances) {
    for (const auto& check : inst.checks) m = std::min(m, check.margin);
  }
  return m;
}

Check make_check(std::string id, double lhs, double rhs, double tol) {
  Check check;
  check.id = std::move(id);
  check.lhs = lhs;
  check.rhs = rhs;
  check.margin = rhs - lhs;
  check.pass = lhs <= rhs + tol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return check;
}

Result lemma21(int count, std::uint64_t seed, int jobs, bool sweep_all_s) {
  static const double kSValues[] = {1.2, 1.9, 2.0, 2.5, 3.0, 3.7};
  auto run = [&](std::uint64_t index) {
    Rng rng = Rng::child(seed, index);
    const int depth = 1 + static_cast<int>(rng.below(6));
    DyadicTree tree(1, depth);
    MeasureView mu(tree, random_masses(rng, tree.leaf_count(), 1e-3, 1e3));
    Kernel alpha(tree);
    for (std::size_t cube = 0; cube < tree.cube_count(); ++cube) {
      if (rng.bernoulli(0.7)) alpha.set(cube, rng.log_uniform(1e-2, 1e2));
    }

    InstanceChecks rows{index, {}};
    const auto check_s = [&](double s) {
      const auto q = dyadlab::lemma21(tree, alpha, mu, tree.root(), s);
      const double c = c_of_s(s);
      const double s_dual = dual_exponent(s);
      rows.checks.push_back(make_check("A1<=c(s)A2", q.a1, c * q.a2, kAlgebraic));
      rows.checks.push_back(
          make_check("A2<=c(s)^(1/(s-1))A3", q.a2, std::pow(c, 1.0 / (s - 1.0)) * q.a3,
                     kAlgebraic));
      rows.checks.push_back(
          make_check("A3<=(s')^sA1", q.a3, std::pow(s_dual, s) * q.a1, kAlgebraic));
    };
    if (sweep_all_s) {
      for (double s : kSValues) check_s(s);
    } else {
      check_s(kSValues[index % 6]);
    }
    return rows;
  };
  return finish("lemma21", for_each_instance(count, jobs, run));
}

Result elementary(int count, std::uint64_t seed, int jobs) {
  static const double kSValues[] = {1.2, 2.0, 3.7};
  auto run = [&](std::uint64_t index) {
    Rng rng = Rng::child(seed, index);
    std::vector<double> a(1 + rng.below(32));
    for (double& v : a) v = rng.bernoulli(0.15) ? 0.0 : rng.log_uniform(1e-3, 1e3);
    const double s = kSValues[index % 3];
    const auto both = elementary_inequality(a, s);
    InstanceChecks rows{index, {}};
    rows.checks.push_back(make_check("sum^s<=s*rearranged", both.lhs, both.rhs, kTight));
    return rows;
  };
  return finish("elementary", for_each_instance(count, jobs, run));
}

Result corona(int count, std::uint64_t seed, int jobs) {
  auto run = [&](std::uint64_t index) {
    Rng rng = Rng::child(seed, index);
    const int depth = 1 + static_cast<int>(rng.below(6));
    DyadicTree tree(1, depth);

    const bool integer_masses = index % 2 == 0;
    LeafFunction masses(tree.leaf_count());
    double total = 0.0;
    for (double& m : masses) {
      m = integer_masses ? static_cast<double>(rng.below(9)) : rng.log_uniform(1e-3, 1e3);
      total += m;
    }
    if (!(total > 0.0)) masses[0] = 1.0;
    MeasureView mu(tree, std::move(masses));
    const LeafFunction f = random_nonnegative(rng, tree.leaf_count());

    const PrincipalForest forest = principal_cubes(tree, f, mu, tree.root());

    // Eq. (2.3), reported as the member with the smallest margin. Integer
    // masses must satisfy it without any slack.
    double worst_margin = std::numeric_limits<double>::infinity();
    double worst_half = 0.0, worst_e = 0.0;
    for (std::size_t id = 0; id < forest.member_count(); ++id) {
      const double half = forest.member_mass[id] / 2.0;
      const double e_mass = forest.e_set_mass[id];
      if (e_mass - half < worst_margin) {
        worst_margin = e_mass - half;
        worst_half = half;
        worst_e = e_mass;
      }
    }
    InstanceChecks rows{index, {}};
    rows.checks.push_back(
        make_check("mass(F)/2<=mass(E(F))", worst_half, worst_e, integer_masses ? 0.0 : kTight));

    std::vector<int> covered(tree.leaf_count(), 0);
    for (const auto& leaves : forest.e_set) {
      for (std::size_t leaf : leaves) ++covered[leaf];
    }
    const double defects = static_cast<double>(
        std::count_if(covered.begin(), covered.end(), [](int c) { return c != 1; }));
    rows.checks.push_back(make_check("e_sets_partition_leaves", defects, 0.0, 0.0));

    rows.checks.push_back(make_check("generations<=depth+1",
                                     static_cast<double>(forest.generations()),
                                     static_cast<double>(depth + 1), 0.0));
    return rows;
  };
  return finish("corona", for_each_instance(count, jobs, run));
}

Result proofsteps(int count, std::uint64_t seed, int jobs) {
  auto run = [&](std::uint64_t index) {
    Rng rng = Rng::child(seed, index);
    const GenParams params = sparse_params(rng, 5, index);
    const Instance inst = generate_instance(Family::random_sparse, params, rng.bits());
    const auto& e = inst.exponents;
    const LeafFunction f = random_nonnegative(rng, inst.tree.leaf_count());
    const LeafFunction g = random_nonnegative(rng, inst.tree.leaf_count());

    const PrincipalForest forest_f = principal_cubes(inst.tree, f, inst.sigma, inst.tree.root());
    const PrincipalForest forest_g = principal_cubes(inst.tree, g, inst.omega, inst.tree.root());

    InstanceChecks rows{index, {}};
    const double f_norm = lp_norm(f, e.p, inst.sigma);
    rows.checks.push_back(make_check("I1<=2^(1/p)p'|f|_p", i1(inst, f, forest_f),
                                     std::pow(2.0, 1.0 / e.p) * e.p_dual * f_norm, kAlgebraic));

    const WolffNorms norms = wolff_norms(inst);
    const double i21_bound = std::pow(2.0, 1.0 / e.q) * std::pow(c_of_s(e.q), 1.0 / e.q) *
                             dual_exponent(e.r / e.q) * norms.sigma_side;
    rows.checks.push_back(
        make_check("I21<=2^(1/q)c(q)^(1/q)(r/q)'Wsigma", i21(inst, forest_f), i21_bound,
                   kAlgebraic));

    const double g_norm_pow = std::pow(lp_norm(g, e.q_dual, inst.omega), e.q_dual);
    const double i22_bound =
        (1.0 + 2.0 * std::pow(2.0, e.q_dual) * std::pow(e.q, e.q_dual)) * g_norm_pow;
    rows.checks.push_back(make_check("I22^q'<=(1+2*2^q'q^q')|g|^q'",
                                     std::pow(i22(inst, g, forest_f, forest_g), e.q_dual),
                                     i22_bound, kAlgebraic));

    const CoronaSplit split = corona_split(inst, f, g);
    rows.checks.push_back(make_check("total<=S_F+S_G", split.total, split.s_f + split.s_g,
                                     kAlgebraic));
    return rows;
  };
  return finish("proofsteps", for_each_instance(count, jobs, run));
}

Result necessity(int count, std::uint64_t seed, int jobs) {
  auto run = [&](std::uint64_t index) {
    Rng rng = Rng::child(seed, index);
    GenParams params = sparse_params(rng, 5, index);
    // Alternate tiny instances so the brute-force half of the claim gets
    // exercised on every other draw.
    if (index % 2 == 0) params.depth = 1 + static_cast<int>(rng.below(2));
    const Instance inst = generate_instance(Family::random_sparse, params, rng.bits());
    const LeafFunction f = random_nonnegative(rng, inst.tree.leaf_count());

    InstanceChecks rows{index, {}};
    const NecessityChain chain = necessity_chain(inst, f);
    rows.checks.push_back(
        make_check("lhs24<=c(q)^(1/(q-1))(q')^q|Tf|_q^q", chain.lhs24, chain.bound, kAlgebraic));

    if (inst.tree.leaf_count() <= 4) {
      const double c1 = norm_bruteforce_small(inst);
      const NecessityBound bound = necessity_bound(inst, c1);
      rows.checks.push_back(
          make_check("Wsigma<=kappa_nec*C1", wolff_norms(inst).sigma_side, bound.sigma_bound,
                     kAlgebraic));
      rows.checks.push_back(
          make_check("Womega<=kappa_nec'*C1", wolff_norms(inst).omega_side, bound.omega_bound,
                     kAlgebraic));
    }
    return rows;
  };
  return finish("necessity", for_each_instance(count, jobs, run));
}

Result sufficiency(int count, std::uint64_t seed, int jobs) {
  auto run = [&](std::uint64_t index) {
    Rng rng = Rng::child(seed, index);
    const GenParams params = sparse_params(rng, 5, index);
    const Instance inst = generate_instance(Family::random_sparse, params, rng.bits());
    const NormEstimate estimate = norm_lower_bound(inst, 8, 400, rng.bits());
    const SufficiencyBound bound = sufficiency_bound(inst);
    InstanceChecks rows{index, {}};
    rows.checks.push_back(
        make_check("C1_est<=kappa_suf*C2", estimate.value, bound.bound, kAlgebraic));
    return rows;
  };
  return finish("sufficiency", for_each_instance(count, jobs, run));
}

Result duality(int count, std::uint64_t seed, int jobs) {
  auto run = [&](std::uint64_t index) {
    Rng rng = Rng::child(seed, index);
    const GenParams params = sparse_params(rng, 3, index);
    const Instance inst = generate_instance(Family::random_sparse, params, rng.bits());
    const std::uint64_t opt_seed = rng.bits();
    const double primal = norm_lower_bound(inst, 24, 1500, opt_seed).value;
    const double dual = norm_lower_bound(dual_instance(inst), 24, 1500, opt_seed).value;
    InstanceChecks rows{index, {}};
    rows.checks.push_back(
        make_check("|C1-C1(dual)|<=1e-4*C1", std::abs(primal - dual), 1e-4 * primal, 0.0));
    return rows;
  };
  return finish("duality", for_each_instance(count, jobs, run));
}

Result homogeneity(int count, std::uint64_t seed, int jobs) {
  static const double kFactors[] = {0.1, 3.0, 10.0};
  auto run = [&](std::uint64_t index) {
    Rng rng = Rng::child(seed, index);
    const GenParams params = sparse_params(rng, 3, index);
    const Instance inst = generate_instance(Family::random_sparse, params, rng.bits());
    const auto& e = inst.exponents;
    const std::uint64_t opt_seed = rng.bits();

    const double c1 = norm_lower_bound(inst, 16, 800, opt_seed).value;
    const WolffNorms norms = wolff_norms(inst);

    auto scaled_measure = [](const DyadicTree& tree, const MeasureView& mu, double factor) {
      LeafFunction masses = mu.leaf_masses();
      for (double& m : masses) m *= factor;
      return MeasureView(tree, std::move(masses));
    };

    InstanceChecks rows{index, {}};
    for (double lambda : kFactors) {
      const Instance scaled{inst.tree, scaled_measure(inst.tree, inst.sigma, lambda),
                            inst.omega, inst.kernel, e};
      const double gain = std::pow(lambda, 1.0 / e.p_dual);
      const double c1_scaled = norm_lower_bound(scaled, 16, 800, opt_seed).value;
      const WolffNorms scaled_norms = wolff_norms(scaled);
      rows.checks.push_back(make_check("sigma-scale:C1", std::abs(c1_scaled - gain * c1),
                                       1e-4 * gain * c1, 0.0));
      rows.checks.push_back(make_check("sigma-scale:Wsigma",
                                       std::abs(scaled_norms.sigma_side - gain * norms.sigma_side),
                                       kAlgebraic * gain * norms.sigma_side, kTight));
      rows.checks.push_back(make_check("sigma-scale:Womega",
                                       std::abs(scaled_norms.omega_side - gain * norms.omega_side),
                                       kAlgebraic * gain * norms.omega_side, kTight));
    }
    for (double mu_factor : kFactors) {
      const Instance scaled{inst.tree, inst.sigma,
                            scaled_measure(inst.tree, inst.omega, mu_factor), inst.kernel, e};
      const double gain = std::pow(mu_factor, 1.0 / e.q);
      const double c1_scaled = norm_lower_bound(scaled, 16, 800, opt_seed).value;
      const WolffNorms scaled_norms = wolff_norms(scaled);
      rows.checks.push_back(make_check("omega-scale:C1", std::abs(c1_scaled - gain * c1),
                                       1e-4 * gain * c1, 0.0));
      rows.checks.push_back(make_check("omega-scale:Wsigma",
                                       std::abs(scaled_norms.sigma_side - gain * norms.sigma_side),
                                       kAlgebraic * gain * norms.sigma_side, kTight));
      rows.checks.push_back(make_check("omega-scale:Womega",
                                       std::abs(scaled_norms.omega_side - gain * norms.omega_side),
                                       kAlgebraic * gain * norms.omega_side, kTight));
    }
    return rows;
  };
  return finish("homogeneity", for_each_instance(count, jobs, run));
}

Result maximal(int count, std::uint64_t seed, int jobs) {
  static const double kSValues[] = {1.5, 2.0, 3.0};
  auto run = [&](std::uint64_t index) {
    Rng rng = Rng::child(seed, index);
    const int depth = 1 + static_cast<int>(rng.below(6));
    DyadicTree tree(1, depth);
    LeafFunction masses(tree.leaf_count());
    for (double& m : masses) m = rng.bernoulli(0.1) ? 0.0 : rng.log_uniform(1e-3, 1e3);
    MeasureView mu(tree, std::move(masses));
    const LeafFunction f = random_nonnegative(rng, tree.leaf_count());
    const LeafFunction mf = maximal_function(tree, mu, f);

    InstanceChecks rows{index, {}};
    for (double s : kSValues) {
      rows.checks.push_back(make_check("|Mf|_s<=s'|f|_s", lp_norm(mf, s, mu),
                                       dual_exponent(s) * lp_norm(f, s, mu), kAlgebraic));
    }
    return rows;
  };
  return finish("maximal", for_each_instance(count, jobs, run));
}

Result dlbo_prop11(int count, std::uint64_t seed, int jobs) {
  auto run = [&](std::uint64_t index) {
    Rng rng = Rng::child(seed, index);
    GenParams params;
    params.depth = 2 + static_cast<int>(rng.below(4));
    const auto [p, q] = kExponentPool[index % 3];
    params.p = p;
    params.q = q;
    const Instance inst = generate_instance(Family::uniform_dlbo, params, rng.bits());

    InstanceChecks rows{index, {}};
    rows.checks.push_back(
        make_check("dlbo=1", std::abs(dlbo_constant(inst, Base::sigma) - 1.0), 0.0, kAlgebraic));
    const NormEstimate estimate = norm_lower_bound(inst, 8, 400, rng.bits());
    const SufficiencyBound bound = sufficiency_bound(inst);
    rows.checks.push_back(
        make_check("C1_est<=kappa_suf*C2", estimate.value, bound.bound, kAlgebraic));
    return rows;
  };
  return finish("dlbo-prop11", for_each_instance(count, jobs, run));
}

Result single_cube_closed_form(int count, std::uint64_t seed, int jobs) {
  auto run = [&](std::uint64_t index) {
    Rng rng = Rng::child(seed, index);
    GenParams params;
    params.q = rng.uniform(1.3, 2.5);
    params.p = params.q + rng.uniform(0.5, 2.5);
    const Instance inst = generate_instance(Family::single_cube, params, rng.bits());
    const auto& e = inst.exponents;

    const double closed = inst.kernel[0] * std::pow(inst.sigma.total(), 1.0 / e.p_dual) *
                          std::pow(inst.omega.total(), 1.0 / e.q);
    const double tol = 1e-6 * closed;

    const double iterated = norm_lower_bound(inst, 2, 50, rng.bits()).value;
    const double gridded = norm_bruteforce_small(inst);
    const WolffNorms norms = wolff_norms(inst);

    InstanceChecks rows{index, {}};
    rows.checks.push_back(make_check("C1_iter=closed", std::abs(iterated - closed), tol, 0.0));
    rows.checks.push_back(make_check("C1_grid=closed", std::abs(gridded - closed), tol, 0.0));
    rows.checks.push_back(
        make_check("Wsigma=closed", std::abs(norms.sigma_side - closed), tol, 0.0));
    rows.checks.push_back(
        make_check("Womega=closed", std::abs(norms.omega_side - closed), tol, 0.0));
    return rows;
  };
  return finish("single-cube", for_each_instance(count, jobs, run));
}

Result dlbo_depth_stability(std::uint64_t seed, int jobs) {
  static const std::pair<double, double> kPairs[] = {{3.0, 2.0}, {2.5, 1.5}};
  constexpr int kProfiles = 5;
  constexpr int kDepths[] = {3, 6, 8};

  struct Config {
    GenParams params;
    std::uint64_t gen_seed;
  };
  std::vector<Config> configs;
  for (const auto& [p, q] : kPairs) {
    for (int profile = 0; profile < kProfiles; ++profile) {
      GenParams params;
      params.p = p;
      params.q = q;
      configs.push_back({params, Rng::child(seed, configs.size()).bits()});
    }
  }

  // ratio[config][depth index]; the generator draws the same kernel profile
  // for a given seed at every depth.
  auto compute = [&](std::uint64_t flat) {
    const std::size_t config = flat / 3;
    const std::size_t depth_index = flat % 3;
    GenParams params = configs[config].params;
    params.depth = kDepths[depth_index];
    const Instance inst = generate_instance(Family::uniform_dlbo, params, configs[config].gen_seed);
    const double c1 = norm_lower_bound(inst, 16, 1500, configs[config].gen_seed ^ 0xabcd).value;
    const double w = wolff_norms(inst).omega_side;
    InstanceChecks rows{flat, {}};
    rows.checks.push_back(make_check("ratio", c1 / w, c1 / w, 0.0));  // carrier row
    return rows;
  };
  const auto ratios =
      for_each_instance(static_cast<int>(configs.size()) * 3, jobs, compute);

  std::vector<InstanceChecks> instances;
  for (std::size_t pair = 0; pair < 2; ++pair) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int profile = 0; profile < kProfiles; ++profile) {
      const std::size_t config = pair * kProfiles + static_cast<std::size_t>(profile);
      const double ratio = ratios[config * 3].checks[0].lhs;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    for (int profile = 0; profile < kProfiles; ++profile) {
      const std::size_t config = pair * kProfiles + static_cast<std::size_t>(profile);
      for (std::size_t depth_index = 1; depth_index < 3; ++depth_index) {
        const double ratio = ratios[config * 3 + depth_index].checks[0].lhs;
        InstanceChecks rows{config * 3 + depth_index, {}};
        rows.checks.push_back(make_check("ratio>=lo/2", lo / 2.0, ratio, 0.0));
        rows.checks.push_back(make_check("ratio<=2hi", ratio, 2.0 * hi, 0.0));
        instances.push_back(std::move(rows));
      }
    }
  }
  return finish("dlbo-depth-stability", std::move(instances));
}

const std::vector<std::string>& cli_suite_names() {
  static const std::vector<std::string> names = {
      "lemma21", "corona",      "proofsteps", "necessity",   "sufficiency",
      "duality", "homogeneity", "maximal",    "dlbo-prop11", "all"};
  return names;
}

std::vector<Result> run_named(const std::string& name, int count, std::uint64_t seed, int jobs) {
  if (name == "lemma21") return {lemma21(count, seed, jobs)};
  if (name == "corona") return {corona(count, seed, jobs)};
  if (name == "proofsteps") return {proofsteps(count, seed, jobs)};
  if (name == "necessity") return {necessity(count, seed, jobs)};
  if (name == "sufficiency") return {sufficiency(count, seed, jobs)};
  if (name == "duality") return {duality(count, seed, jobs)};
  if (name == "homogeneity") return {homogeneity(count, seed, jobs)};
  if (name == "maximal") return {maximal(count, seed, jobs)};
  if (name == "dlbo-prop11") return {dlbo_prop11(count, seed, jobs)};
  if (name == "all") {
    std::vector<Result> results;
    for (const auto& suite : cli_suite_names()) {
      if (suite == "all") continue;
      auto sub = run_named(suite, count, seed, jobs);
      results.insert(results.end(), std::make_move_iterator(sub.begin()),
                     std::make_move_iterator(sub.end()));
    }
    return results;
  }
  throw std::invalid_argument("unknown verify suite: " + name);
}

}  // namespace dyadlab::suites
