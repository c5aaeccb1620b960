#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dyadlab {

/// Address of one dyadic cube: the sequence of child digits walked from the
/// root. An empty path is the root cube itself; each digit selects one of the
/// 2^n children. The depth of the cube equals the path length.
struct CubeAddress {
  std::vector<std::uint8_t> path;

  std::size_t level() const { return path.size(); }
  bool operator==(const CubeAddress&) const = default;
};

/// Complete 2^n-ary tree of dyadic cubes under a fixed root cube, enumerated
/// breadth-first with children ordered by digit. Cube indices are stable
/// across runs. Leaves of a cube form a contiguous index range, which is what
/// makes every per-cube integral a range sum.
class DyadicTree {
 public:
  static constexpr std::size_t kDefaultLeafCap = std::size_t{1} << 20;

  DyadicTree(int dimension, int depth, std::size_t leaf_cap = kDefaultLeafCap);

  int dimension() const { return dimension_; }
  int depth() const { return depth_; }

  /// Number of children per non-leaf cube (2^dimension).
  std::size_t branching() const { return branching_; }
  std::size_t cube_count() const { return cube_count_; }
  std::size_t leaf_count() const { return leaf_count_; }

  std::size_t root() const { return 0; }
  bool is_leaf(std::size_t cube) const { return cube >= level_offset_[depth_]; }

  int level_of(std::size_t cube) const;
  std::size_t offset_in_level(std::size_t cube) const;
  std::size_t cube_at(int level, std::size_t offset) const;

  std::size_t parent(std::size_t cube) const;
  std::size_t child(std::size_t cube, std::size_t digit) const;

  /// Leaves below `cube` are exactly the range [leaf_begin, leaf_end).
  std::size_t leaf_begin(std::size_t cube) const;
  std::size_t leaf_end(std::size_t cube) const;

  /// Cube index of the depth-L cell holding leaf `leaf`.
  std::size_t leaf_cube(std::size_t leaf) const { return level_offset_[depth_] + leaf; }

  /// True iff `inner` is contained in `outer` (inclusive).
  bool contains(std::size_t outer, std::size_t inner) const;

  CubeAddress address_of(std::size_t cube) const;
  std::size_t index_of(const CubeAddress& address) const;

 private:
  int dimension_ = 1;
  int depth_ = 0;
  std::size_t branching_ = 2;
  std::size_t cube_count_ = 1;
  std::size_t leaf_count_ = 1;
  // level_offset_[i] = number of cubes on levels < i; one extra entry so that
  // level_offset_[depth_+1] == cube_count_.
  std::vector<std::size_t> level_offset_;
};

}  // namespace dyadlab
