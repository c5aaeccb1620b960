#include "dyadlab/corona.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "dyadlab/exponents.hpp"

namespace dyadlab {

bool PrincipalForest::is_member(std::size_t cube) const {
  const std::size_t id = stopping_parent_id[cube];
  return id != kOutside && member_cube[id] == cube;
}

std::size_t PrincipalForest::member_id(std::size_t cube) const {
  if (!is_member(cube)) throw std::domain_error("PrincipalForest: cube is not a member");
  return stopping_parent_id[cube];
}

PrincipalForest principal_cubes(const DyadicTree& tree, const LeafFunction& f,
                                const MeasureView& mu, std::size_t q0) {
  for (double v : f) {
    if (!(v >= 0.0)) throw std::invalid_argument("principal_cubes: requires f >= 0");
  }
  if (!(mu.total(q0) > 0.0)) {
    throw std::invalid_argument("principal_cubes: root member must have positive mass");
  }

  const std::vector<double> integral = aggregate(tree, f, mu);

  PrincipalForest forest;
  forest.q0 = q0;
  forest.stopping_parent_id.assign(tree.cube_count(), PrincipalForest::kOutside);

  auto add_member = [&](std::size_t cube, int generation, std::size_t parent_id) {
    forest.member_cube.push_back(cube);
    forest.member_generation.push_back(generation);
    forest.member_parent.push_back(parent_id);
    forest.member_children.emplace_back();
    forest.member_mass.push_back(mu.total(cube));
    return forest.member_cube.size() - 1;
  };

  std::deque<std::size_t> queue;
  queue.push_back(add_member(q0, 0, 0));

  const std::size_t branching = tree.branching();
  std::vector<std::size_t> stack;
  while (!queue.empty()) {
    const std::size_t fid = queue.front();
    queue.pop_front();
    const std::size_t fcube = forest.member_cube[fid];
    if (tree.is_leaf(fcube)) continue;
    const double f_integral = integral[fcube];
    const double f_mass = forest.member_mass[fid];

    // Maximal Q strictly inside F with avg(Q) > 2 avg(F): descend, never past
    // a qualifying cube. Compared cross-multiplied so that integer-mass
    // fixtures decide exactly.
    stack.clear();
    for (std::size_t d = branching; d-- > 0;) stack.push_back(tree.child(fcube, d));
    while (!stack.empty()) {
      const std::size_t cube = stack.back();
      stack.pop_back();
      const double mass = mu.total(cube);
      if (!(mass > 0.0)) continue;
      if (integral[cube] * f_mass > 2.0 * f_integral * mass) {
        const std::size_t cid = add_member(cube, forest.member_generation[fid] + 1, fid);
        forest.member_children[fid].push_back(cid);
        queue.push_back(cid);
      } else if (!tree.is_leaf(cube)) {
        for (std::size_t d = branching; d-- > 0;) stack.push_back(tree.child(cube, d));
      }
    }
  }

  // Stopping parents top-down, then the E-sets off the leaf stopping parents.
  std::vector<std::size_t> member_of_cube(tree.cube_count(), PrincipalForest::kOutside);
  for (std::size_t id = 0; id < forest.member_cube.size(); ++id) {
    member_of_cube[forest.member_cube[id]] = id;
  }
  forest.stopping_parent_id[q0] = 0;
  const int q0_level = tree.level_of(q0);
  const std::size_t q0_offset = tree.offset_in_level(q0);
  std::size_t width = 1;
  for (int level = q0_level + 1; level <= tree.depth(); ++level) {
    width *= branching;
    const std::size_t row_begin = tree.cube_at(level, q0_offset * width);
    for (std::size_t i = 0; i < width; ++i) {
      const std::size_t cube = row_begin + i;
      forest.stopping_parent_id[cube] = member_of_cube[cube] != PrincipalForest::kOutside
                                            ? member_of_cube[cube]
                                            : forest.stopping_parent_id[tree.parent(cube)];
    }
  }

  forest.e_set.assign(forest.member_cube.size(), {});
  forest.e_set_mass.assign(forest.member_cube.size(), 0.0);
  for (std::size_t leaf = tree.leaf_begin(q0); leaf < tree.leaf_end(q0); ++leaf) {
    const std::size_t id = forest.stopping_parent_id[tree.leaf_cube(leaf)];
    forest.e_set[id].push_back(leaf);
    forest.e_set_mass[id] += mu.leaf_mass(leaf);
  }
  return forest;
}

std::size_t stopping_parent(const PrincipalForest& forest, std::size_t cube) {
  const std::size_t id = forest.stopping_parent_id[cube];
  if (id == PrincipalForest::kOutside) {
    throw std::domain_error("stopping_parent: cube lies outside the forest root");
  }
  return forest.member_cube[id];
}

std::vector<std::size_t> ch_star(const DyadicTree& tree, const PrincipalForest& forest_f,
                                 const PrincipalForest& forest_g, std::size_t member_cube) {
  (void)tree;
  const std::size_t fid = forest_f.member_id(member_cube);
  std::vector<std::size_t> result;
  for (std::size_t cid : forest_f.member_children[fid]) {
    const std::size_t child_cube = forest_f.member_cube[cid];
    const std::size_t g_parent = stopping_parent(forest_g, child_cube);
    if (stopping_parent(forest_f, g_parent) == member_cube) result.push_back(child_cube);
  }
  return result;
}

Lemma21Quantities lemma21(const DyadicTree& tree, const Kernel& alpha, const MeasureView& mu,
                          std::size_t q0, double s) {
  if (!(s > 1.0)) throw std::invalid_argument("lemma21: requires s > 1");
  if (alpha.cube_count() != tree.cube_count() || mu.cube_count() != tree.cube_count()) {
    throw std::invalid_argument("lemma21: shape mismatch");
  }

  // Subtree sums of alpha, then the validity scan: a zero-mass cube may not
  // carry positive alpha anywhere below it.
  std::vector<double> subtree(alpha.values());
  const std::size_t branching = tree.branching();
  const std::size_t first_leaf_cube = tree.leaf_cube(0);
  for (std::size_t cube = first_leaf_cube; cube-- > 0;) {
    const std::size_t base = tree.child(cube, 0);
    for (std::size_t d = 0; d < branching; ++d) subtree[cube] += subtree[base + d];
  }

  const int q0_level = tree.level_of(q0);
  const std::size_t q0_offset = tree.offset_in_level(q0);

  Lemma21Quantities out;
  // Top-down pass over the subtree rows: carry G = sum of alpha_Q/mu(Q) and
  // H = max of subtree(Q)/mu(Q) over the positive-mass ancestors.
  std::vector<double> g_prev{0.0}, h_prev{0.0};
  std::size_t width = 1;
  std::size_t row_begin = q0;
  for (int level = q0_level; level <= tree.depth(); ++level) {
    std::vector<double> g_row(width), h_row(width);
    for (std::size_t i = 0; i < width; ++i) {
      const std::size_t cube = row_begin + i;
      const double mass = mu.total(cube);
      const double above_g = g_prev[level == q0_level ? 0 : i / branching];
      const double above_h = h_prev[level == q0_level ? 0 : i / branching];
      if (mass > 0.0) {
        g_row[i] = above_g + alpha[cube] / mass;
        const double avg = subtree[cube] / mass;
        h_row[i] = std::max(above_h, avg);
        out.a2 += alpha[cube] * std::pow(avg, s - 1.0);
      } else {
        if (subtree[cube] > 0.0) {
          throw std::invalid_argument(
              "lemma21: zero-mass cube carries positive alpha below it");
        }
        g_row[i] = above_g;
        h_row[i] = above_h;
      }
    }
    if (level == tree.depth()) {
      const std::size_t leaf0 = tree.leaf_begin(q0);
      for (std::size_t i = 0; i < width; ++i) {
        const double m = mu.leaf_mass(leaf0 + i);
        if (m > 0.0) {
          out.a1 += std::pow(g_row[i], s) * m;
          out.a3 += std::pow(h_row[i], s) * m;
        }
      }
    }
    g_prev = std::move(g_row);
    h_prev = std::move(h_row);
    width *= branching;
    if (level < tree.depth()) row_begin = tree.cube_at(level + 1, q0_offset * width);
  }
  return out;
}

double c_of_s(double s) {
  if (!(s > 1.0)) throw std::domain_error("c_of_s: requires s > 1");
  if (s <= 2.0) return s;
  // k is pinned by 0 < s-k-1 <= 1, the range the proof's last exponent needs.
  const int k = static_cast<int>(std::ceil(s)) - 2;
  double product = 1.0;
  for (int j = 0; j <= k; ++j) product *= s - j;
  return std::pow(product, (s - 1.0) / (s - k - 1.0));
}

ElementaryIneq elementary_inequality(std::span<const double> a, double s) {
  if (!(s > 1.0)) throw std::invalid_argument("elementary_inequality: requires s > 1");
  for (double v : a) {
    if (!(v >= 0.0)) throw std::invalid_argument("elementary_inequality: requires a >= 0");
  }
  ElementaryIneq out;
  double suffix = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) {
    suffix += a[i];
    out.rhs += a[i] * std::pow(suffix, s - 1.0);
  }
  out.rhs *= s;
  out.lhs = std::pow(suffix, s);
  return out;
}

nlohmann::ordered_json forest_dump(const PrincipalForest& forest, const DyadicTree& tree) {
  nlohmann::ordered_json members = nlohmann::ordered_json::array();
  for (std::size_t id = 0; id < forest.member_count(); ++id) {
    nlohmann::ordered_json rec;
    rec["path"] = tree.address_of(forest.member_cube[id]).path;
    rec["generation"] = forest.member_generation[id];
    rec["parent_path"] = tree.address_of(forest.member_cube[forest.member_parent[id]]).path;
    rec["e_set"] = forest.e_set[id];
    rec["mass"] = forest.member_mass[id];
    rec["e_set_mass"] = forest.e_set_mass[id];
    members.push_back(std::move(rec));
  }
  return members;
}

}  // namespace dyadlab
