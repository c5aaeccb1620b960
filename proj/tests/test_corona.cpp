#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "dyadlab/corona.hpp"
#include "dyadlab/exponents.hpp"
#include "dyadlab/generators.hpp"
#include "dyadlab/rng.hpp"
#include "test_util.hpp"

using namespace dyadlab;
using testutil::close;

TEST_CASE("principal cubes: constants never stop, depth-1 never stops") {
  DyadicTree tree(1, 3);
  MeasureView mu(tree, LeafFunction(8, 1.0));
  const PrincipalForest trivial = principal_cubes(tree, LeafFunction(8, 2.5), mu, tree.root());
  CHECK(trivial.member_count() == 1);
  CHECK(trivial.member_cube[0] == tree.root());

  // At depth 1 with uniform mass a child average can tie 2 avg(Q0) but never
  // strictly beat it.
  DyadicTree shallow(1, 1);
  MeasureView shallow_mu(shallow, {1.0, 1.0});
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const LeafFunction f = random_nonnegative(rng, 2, 0.3);
    const PrincipalForest forest = principal_cubes(shallow, f, shallow_mu, shallow.root());
    CHECK(forest.member_count() == 1);
  }

  CHECK_THROWS_AS(principal_cubes(shallow, {-1.0, 0.0}, shallow_mu, shallow.root()),
                  std::invalid_argument);
  MeasureView null_mu(shallow, {0.0, 0.0});
  CHECK_THROWS_AS(principal_cubes(shallow, {1.0, 1.0}, null_mu, shallow.root()),
                  std::invalid_argument);
}

TEST_CASE("principal cubes: depth-2 spike fixture") {
  const Instance inst = testutil::fixture_depth2();
  const LeafFunction f = {8.0, 0.0, 0.0, 0.0};
  const PrincipalForest forest = principal_cubes(inst.tree, f, inst.sigma, inst.tree.root());

  // avg(Q0) = 2, so the threshold is 4; [0,1/2) only ties at 4, its child
  // [0,1/4) has average 8.
  REQUIRE(forest.member_count() == 2);
  CHECK(forest.member_cube[0] == 0);
  CHECK(forest.member_cube[1] == inst.tree.index_of(CubeAddress{{0, 0}}));
  CHECK(forest.member_generation[1] == 1);
  CHECK(forest.member_mass[0] == 4.0);
  CHECK(forest.e_set_mass[0] == 3.0);  // Eq. (2.3): 3 >= 4/2
  CHECK(forest.e_set_mass[1] == 1.0);

  SUBCASE("stopping parents") {
    CHECK(stopping_parent(forest, inst.tree.root()) == inst.tree.root());
    const std::size_t quarter = inst.tree.index_of(CubeAddress{{0, 0}});
    CHECK(stopping_parent(forest, quarter) == quarter);  // members contain themselves
    CHECK(stopping_parent(forest, inst.tree.index_of(CubeAddress{{0, 1}})) == inst.tree.root());
    CHECK(stopping_parent(forest, inst.tree.index_of(CubeAddress{{1}})) == inst.tree.root());
  }

  SUBCASE("golden dump") {
    const nlohmann::json dumped = forest_dump(forest, inst.tree);
    std::ifstream golden_file(std::string(DYADLAB_TEST_DATA_DIR) + "/forest_depth2_golden.json");
    REQUIRE(golden_file.good());
    nlohmann::json golden;
    golden_file >> golden;
    CHECK(dumped == golden);
  }
}

TEST_CASE("principal cubes: mass retention and partition on random instances") {
  Rng rng(29);
  for (int trial = 0; trial < 150; ++trial) {
    const int depth = 1 + static_cast<int>(rng.below(6));
    DyadicTree tree(1, depth);
    const bool integer_masses = trial % 2 == 0;
    LeafFunction masses(tree.leaf_count());
    double total = 0.0;
    for (double& m : masses) {
      m = integer_masses ? static_cast<double>(rng.below(9)) : rng.log_uniform(1e-3, 1e3);
      total += m;
    }
    if (!(total > 0.0)) masses[0] = 1.0;
    MeasureView mu(tree, masses);
    const LeafFunction f = random_nonnegative(rng, tree.leaf_count());
    const PrincipalForest forest = principal_cubes(tree, f, mu, tree.root());

    CHECK(forest.generations() <= depth + 1);

    std::vector<int> covered(tree.leaf_count(), 0);
    for (std::size_t id = 0; id < forest.member_count(); ++id) {
      if (integer_masses) {
        CHECK(forest.e_set_mass[id] >= forest.member_mass[id] / 2.0);  // exact
      } else {
        CHECK(forest.e_set_mass[id] >=
              forest.member_mass[id] / 2.0 * (1.0 - 1e-12) - 1e-15);
      }
      for (std::size_t leaf : forest.e_set[id]) ++covered[leaf];
      // member children partition: every child is strictly inside and the
      // defining inequality holds, replayed literally
      const std::vector<double> integral = aggregate(tree, f, mu);
      for (std::size_t cid : forest.member_children[id]) {
        const std::size_t child = forest.member_cube[cid];
        CHECK(tree.contains(forest.member_cube[id], child));
        CHECK(child != forest.member_cube[id]);
        CHECK(integral[child] * forest.member_mass[id] >
              2.0 * integral[forest.member_cube[id]] * mu.total(child));
      }
    }
    CHECK(std::all_of(covered.begin(), covered.end(), [](int c) { return c == 1; }));
  }
}

TEST_CASE("ch_star: trivial G-forest and literal definition replay") {
  const Instance inst = testutil::fixture_depth2();
  const LeafFunction f = {8.0, 0.0, 0.0, 0.0};
  const PrincipalForest forest_f = principal_cubes(inst.tree, f, inst.sigma, inst.tree.root());
  const PrincipalForest forest_g =
      principal_cubes(inst.tree, LeafFunction(4, 1.0), inst.omega, inst.tree.root());

  // G = {Q0} only: ch*(Q0) = ch(Q0), deeper members lose all children.
  const auto root_star = ch_star(inst.tree, forest_f, forest_g, inst.tree.root());
  REQUIRE(root_star.size() == 1);
  CHECK(root_star[0] == inst.tree.index_of(CubeAddress{{0, 0}}));
  CHECK(ch_star(inst.tree, forest_f, forest_g, root_star[0]).empty());

  CHECK_THROWS_AS(ch_star(inst.tree, forest_f, forest_g, inst.tree.index_of(CubeAddress{{1}})),
                  std::domain_error);

  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    DyadicTree tree(1, 1 + static_cast<int>(rng.below(5)));
    MeasureView mu_f(tree, random_masses(rng, tree.leaf_count(), 1e-2, 1e2));
    MeasureView mu_g(tree, random_masses(rng, tree.leaf_count(), 1e-2, 1e2));
    const PrincipalForest ff =
        principal_cubes(tree, random_nonnegative(rng, tree.leaf_count()), mu_f, tree.root());
    const PrincipalForest fg =
        principal_cubes(tree, random_nonnegative(rng, tree.leaf_count()), mu_g, tree.root());
    for (std::size_t id = 0; id < ff.member_count(); ++id) {
      const std::size_t member = ff.member_cube[id];
      const auto star = ch_star(tree, ff, fg, member);
      for (std::size_t child : star) {
        CHECK(stopping_parent(ff, stopping_parent(fg, child)) == member);
      }
      // complement check: children left out fail the defining equation
      std::size_t kept = 0;
      for (std::size_t cid : ff.member_children[id]) {
        const std::size_t child = ff.member_cube[cid];
        const bool satisfies = stopping_parent(ff, stopping_parent(fg, child)) == member;
        const bool in_star = std::find(star.begin(), star.end(), child) != star.end();
        CHECK(satisfies == in_star);
        if (in_star) ++kept;
      }
      CHECK(kept == star.size());
    }
  }
}

TEST_CASE("lemma21: single cube, fixture, and the constant chain") {
  DyadicTree point(1, 0);
  Kernel alpha0(point);
  alpha0.set(0, 3.0);
  MeasureView m(point, {2.0});
  const auto single = lemma21(point, alpha0, m, point.root(), 2.5);
  const double expected = std::pow(3.0, 2.5) / std::pow(2.0, 1.5);
  CHECK(close(single.a1, expected));
  CHECK(close(single.a2, expected));
  CHECK(close(single.a3, expected));

  const Instance inst = testutil::fixture_a();
  Kernel alpha(inst.tree);
  alpha.set(0, 1.0);
  alpha.set(1, 1.0);
  const auto q = lemma21(inst.tree, alpha, inst.sigma, inst.tree.root(), 2.0);
  CHECK(close(q.a1, 2.5));
  CHECK(close(q.a2, 2.0));
  CHECK(close(q.a3, 2.0));

  // zero-mass cube below positive alpha is rejected
  DyadicTree tree(1, 1);
  MeasureView degenerate(tree, {1.0, 0.0});
  Kernel bad(tree);
  bad.set(2, 1.0);
  CHECK_THROWS_AS(lemma21(tree, bad, degenerate, tree.root(), 2.0), std::invalid_argument);
  // with the offending alpha removed the quantities are fine
  Kernel good(tree);
  good.set(0, 1.0);
  CHECK_NOTHROW(lemma21(tree, good, degenerate, tree.root(), 2.0));

  Rng rng(37);
  for (int trial = 0; trial < 300; ++trial) {
    DyadicTree t(1, 1 + static_cast<int>(rng.below(6)));
    MeasureView mu(t, random_masses(rng, t.leaf_count(), 1e-3, 1e3));
    Kernel a(t);
    for (std::size_t cube = 0; cube < t.cube_count(); ++cube) {
      if (rng.bernoulli(0.7)) a.set(cube, rng.log_uniform(1e-2, 1e2));
    }
    const double s_values[] = {1.2, 1.9, 2.0, 2.5, 3.0, 3.7};
    const double s = s_values[trial % 6];
    const auto chain = lemma21(t, a, mu, t.root(), s);
    const double c = c_of_s(s);
    const double tol = 1e-9;
    CHECK(chain.a1 <= c * chain.a2 * (1.0 + tol));
    CHECK(chain.a2 <= std::pow(c, 1.0 / (s - 1.0)) * chain.a3 * (1.0 + tol));
    CHECK(chain.a3 <= std::pow(dual_exponent(s), s) * chain.a1 * (1.0 + tol));
  }
}

TEST_CASE("c_of_s: printed values and the k selection") {
  CHECK(c_of_s(2.0) == 2.0);
  CHECK(c_of_s(1.2) == 1.2);
  CHECK(close(c_of_s(2.5), 52.734375));  // (2.5*1.5)^3
  CHECK(close(c_of_s(3.0), 36.0));       // k = 1, (3*2)^2
  // k = 2 for s = 3.7: 0 < s-k-1 <= 1
  CHECK(close(c_of_s(3.7), std::pow(3.7 * 2.7 * 1.7, 2.7 / 0.7)));
  CHECK(close(c_of_s(4.0), std::pow(4.0 * 3.0 * 2.0, 3.0)));  // k = 2
  CHECK_THROWS_AS(c_of_s(1.0), std::domain_error);
}

TEST_CASE("elementary inequality: frozen values and random replay") {
  const double one[] = {1.0};
  const auto single = elementary_inequality(one, 3.3);
  CHECK(close(single.lhs, 1.0));
  CHECK(close(single.rhs, 3.3));

  const double pair[] = {1.0, 1.0};
  const auto both = elementary_inequality(pair, 2.0);
  CHECK(close(both.lhs, 4.0));
  CHECK(close(both.rhs, 6.0));  // 2 (1*2 + 1*1)

  Rng rng(41);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> a(1 + rng.below(32));
    for (double& v : a) v = rng.bernoulli(0.15) ? 0.0 : rng.log_uniform(1e-3, 1e3);
    const double s_values[] = {1.2, 2.0, 3.7};
    const auto result = elementary_inequality(a, s_values[trial % 3]);
    CHECK(result.lhs <= result.rhs * (1.0 + 1e-12));
  }
}
