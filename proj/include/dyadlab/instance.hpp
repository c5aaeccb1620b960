#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "dyadlab/exponents.hpp"
#include "dyadlab/kernel.hpp"
#include "dyadlab/measure.hpp"
#include "dyadlab/tree.hpp"

namespace dyadlab {

/// Which of the two measures an operator is built over.
enum class Base { sigma, omega };

/// One complete problem instance: tree, the two measures, the kernel, and the
/// exponent pair. All components live on the same tree.
struct Instance {
  DyadicTree tree;
  MeasureView sigma;
  MeasureView omega;
  Kernel kernel;
  ExponentTriple exponents;

  const MeasureView& measure(Base base) const {
    return base == Base::sigma ? sigma : omega;
  }
};

/// JSON document {n, depth, sigma_leaves, omega_leaves, kernel: [{path, value}], p, q}.
nlohmann::ordered_json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& doc);

void save_instance(const Instance& instance, const std::filesystem::path& file);
Instance load_instance(const std::filesystem::path& file);

}  // namespace dyadlab
