#include "dyadlab/tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dyadlab {

DyadicTree::DyadicTree(int dimension, int depth, std::size_t leaf_cap) {
  if (dimension < 1) throw std::invalid_argument("DyadicTree: dimension must be >= 1");
  if (depth < 0) throw std::invalid_argument("DyadicTree: depth must be >= 0");
  if (dimension >= 63) throw std::invalid_argument("DyadicTree: dimension too large");

  dimension_ = dimension;
  depth_ = depth;
  branching_ = std::size_t{1} << dimension;

  // Reject trees whose leaf level would blow past the cap before computing it.
  long double leaves = 1.0L;
  for (int i = 0; i < depth; ++i) {
    leaves *= static_cast<long double>(branching_);
    if (leaves > static_cast<long double>(leaf_cap)) {
      throw std::length_error("DyadicTree: leaf count 2^(n*L) exceeds cap of " +
                              std::to_string(leaf_cap) + " leaves");
    }
  }

  level_offset_.assign(static_cast<std::size_t>(depth) + 2, 0);
  std::size_t level_size = 1;
  for (int i = 0; i <= depth; ++i) {
    level_offset_[static_cast<std::size_t>(i) + 1] =
        level_offset_[static_cast<std::size_t>(i)] + level_size;
    if (i < depth) level_size *= branching_;
  }
  leaf_count_ = level_size;
  cube_count_ = level_offset_.back();
}

int DyadicTree::level_of(std::size_t cube) const {
  if (cube >= cube_count_) throw std::out_of_range("DyadicTree: cube index out of range");
  auto it = std::upper_bound(level_offset_.begin(), level_offset_.end(), cube);
  return static_cast<int>(it - level_offset_.begin()) - 1;
}

std::size_t DyadicTree::offset_in_level(std::size_t cube) const {
  return cube - level_offset_[static_cast<std::size_t>(level_of(cube))];
}

std::size_t DyadicTree::cube_at(int level, std::size_t offset) const {
  if (level < 0 || level > depth_) throw std::out_of_range("DyadicTree: level out of range");
  return level_offset_[static_cast<std::size_t>(level)] + offset;
}

std::size_t DyadicTree::parent(std::size_t cube) const {
  if (cube == 0) throw std::out_of_range("DyadicTree: root has no parent");
  const int level = level_of(cube);
  const std::size_t offset = cube - level_offset_[static_cast<std::size_t>(level)];
  return cube_at(level - 1, offset / branching_);
}

std::size_t DyadicTree::child(std::size_t cube, std::size_t digit) const {
  if (digit >= branching_) throw std::out_of_range("DyadicTree: child digit out of range");
  const int level = level_of(cube);
  if (level >= depth_) throw std::out_of_range("DyadicTree: leaf cube has no children");
  const std::size_t offset = cube - level_offset_[static_cast<std::size_t>(level)];
  return cube_at(level + 1, offset * branching_ + digit);
}

std::size_t DyadicTree::leaf_begin(std::size_t cube) const {
  const int level = level_of(cube);
  const std::size_t offset = cube - level_offset_[static_cast<std::size_t>(level)];
  std::size_t span = 1;
  for (int i = level; i < depth_; ++i) span *= branching_;
  return offset * span;
}

std::size_t DyadicTree::leaf_end(std::size_t cube) const {
  const int level = level_of(cube);
  const std::size_t offset = cube - level_offset_[static_cast<std::size_t>(level)];
  std::size_t span = 1;
  for (int i = level; i < depth_; ++i) span *= branching_;
  return (offset + 1) * span;
}

bool DyadicTree::contains(std::size_t outer, std::size_t inner) const {
  const int lo = level_of(outer);
  const int li = level_of(inner);
  if (lo > li) return false;
  std::size_t offset = inner - level_offset_[static_cast<std::size_t>(li)];
  for (int i = li; i > lo; --i) offset /= branching_;
  return offset == outer - level_offset_[static_cast<std::size_t>(lo)];
}

CubeAddress DyadicTree::address_of(std::size_t cube) const {
  const int level = level_of(cube);
  std::size_t offset = cube - level_offset_[static_cast<std::size_t>(level)];
  CubeAddress address;
  address.path.resize(static_cast<std::size_t>(level));
  for (int i = level; i > 0; --i) {
    address.path[static_cast<std::size_t>(i) - 1] = static_cast<std::uint8_t>(offset % branching_);
    offset /= branching_;
  }
  return address;
}

std::size_t DyadicTree::index_of(const CubeAddress& address) const {
  if (address.level() > static_cast<std::size_t>(depth_)) {
    throw std::out_of_range("DyadicTree: address deeper than the tree");
  }
  std::size_t offset = 0;
  for (std::uint8_t digit : address.path) {
    if (digit >= branching_) throw std::out_of_range("DyadicTree: address digit out of range");
    offset = offset * branching_ + digit;
  }
  return cube_at(static_cast<int>(address.level()), offset);
}

}  // namespace dyadlab
