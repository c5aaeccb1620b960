#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "dyadlab/kernel.hpp"
#include "dyadlab/measure.hpp"
#include "dyadlab/tree.hpp"

namespace dyadlab {

/// Stopping family for one (f, mu) pair: the members grouped into
/// generations, the stopping-parent map on the subtree, and the exhausted
/// sets E(F) = F minus its member children, stored as leaf lists.
///
/// The E-sets partition the leaves under the root member, and every member F
/// keeps at least half of its mass: mu(E(F)) >= mu(F)/2.
struct PrincipalForest {
  std::size_t q0 = 0;  // root member (cube index)

  std::vector<std::size_t> member_cube;              // per member id, ascending by discovery
  std::vector<int> member_generation;                // per member id
  std::vector<std::size_t> member_parent;            // enclosing member id (root maps to itself)
  std::vector<std::vector<std::size_t>> member_children;  // member ids in ch(F)
  std::vector<std::vector<std::size_t>> e_set;       // leaf indices of E(F)
  std::vector<double> member_mass;                   // mu(F)
  std::vector<double> e_set_mass;                    // mu(E(F))

  // Per cube of the whole tree: member id of the minimal member containing
  // the cube, or kOutside for cubes not under q0.
  static constexpr std::size_t kOutside = static_cast<std::size_t>(-1);
  std::vector<std::size_t> stopping_parent_id;

  std::size_t member_count() const { return member_cube.size(); }
  int generations() const {
    return member_generation.empty() ? 0 : member_generation.back() + 1;
  }
  bool is_member(std::size_t cube) const;
  std::size_t member_id(std::size_t cube) const;  // throws if not a member
};

/// Builds the principal cubes of (f, mu) under q0: generation 0 is {q0}, and
/// each member F spawns the maximal cubes strictly inside F whose mu-average
/// of f strictly exceeds twice the average over F. Zero-mass cubes never
/// qualify. Requires f >= 0 and mu(q0) > 0.
PrincipalForest principal_cubes(const DyadicTree& tree, const LeafFunction& f,
                                const MeasureView& mu, std::size_t q0);

/// Minimal member containing `cube` (total on the subtree under q0).
std::size_t stopping_parent(const PrincipalForest& forest, std::size_t cube);

/// ch*(F) relative to a second forest: the members F' of ch(F) whose
/// G-stopping parent has F as its own F-stopping parent. Returns cube
/// indices. Throws if F is not a member of `forest_f`.
std::vector<std::size_t> ch_star(const DyadicTree& tree, const PrincipalForest& forest_f,
                                 const PrincipalForest& forest_g, std::size_t member_cube);

/// The three subtree quantities tied together by the discrete Wolff lemma:
///   a1 = int_{Q0} (sum_Q (alpha_Q/mu(Q)) 1_Q)^s d mu
///   a2 = sum_Q alpha_Q ((1/mu(Q)) sum_{Q' in Q} alpha_{Q'})^{s-1}
///   a3 = int_{Q0} sup_{x in Q in Q0} ((1/mu(Q)) sum_{Q' in Q} alpha_{Q'})^s d mu
/// with a1 <= c(s) a2, a2 <= c(s)^{1/(s-1)} a3, a3 <= (s')^s a1.
struct Lemma21Quantities {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
};

/// Requires s > 1. A zero-mass cube carrying positive alpha below it makes
/// the quantities ill-defined and raises an invalid-instance error.
Lemma21Quantities lemma21(const DyadicTree& tree, const Kernel& alpha, const MeasureView& mu,
                          std::size_t q0, double s);

/// The lemma's constant: s for 1 < s <= 2, and otherwise
/// (s(s-1)...(s-k))^{(s-1)/(s-k-1)} with k the unique integer satisfying
/// 0 < s-k-1 <= 1.
double c_of_s(double s);

/// Both sides of the rearrangement inequality
///   (sum_i a_i)^s <= s sum_i a_i (sum_{j>=i} a_j)^{s-1},
/// for a nonnegative sequence and s > 1.
struct ElementaryIneq {
  double lhs = 0.0;
  double rhs = 0.0;
};
ElementaryIneq elementary_inequality(std::span<const double> a, double s);

/// Serializable description of a forest for golden-file comparisons: one
/// record per member with {path, generation, parent path, e_set leaves,
/// mass, e_set_mass}.
nlohmann::ordered_json forest_dump(const PrincipalForest& forest, const DyadicTree& tree);

}  // namespace dyadlab
