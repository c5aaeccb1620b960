#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dyadlab/tree.hpp"

namespace dyadlab {

/// Nonnegative assignment Q -> K(Q) on tree cubes. Stored densely by cube
/// index; cubes never assigned carry the value 0.
class Kernel {
 public:
  explicit Kernel(const DyadicTree& tree) : values_(tree.cube_count(), 0.0) {}

  static Kernel from_entries(const DyadicTree& tree,
                             std::span<const std::pair<CubeAddress, double>> entries) {
    Kernel kernel(tree);
    for (const auto& [address, value] : entries) kernel.set(tree.index_of(address), value);
    return kernel;
  }

  double operator[](std::size_t cube) const { return values_[cube]; }

  void set(std::size_t cube, double value) {
    if (!(value >= 0.0)) throw std::invalid_argument("Kernel: values must be >= 0");
    values_.at(cube) = value;
  }

  std::size_t cube_count() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }

  std::vector<std::pair<std::size_t, double>> nonzero_entries() const {
    std::vector<std::pair<std::size_t, double>> entries;
    for (std::size_t cube = 0; cube < values_.size(); ++cube) {
      if (values_[cube] != 0.0) entries.emplace_back(cube, values_[cube]);
    }
    return entries;
  }

 private:
  std::vector<double> values_;
};

}  // namespace dyadlab
