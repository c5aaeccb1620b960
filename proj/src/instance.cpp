#include "dyadlab/instance.hpp"

#include <fstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dyadlab {

nlohmann::ordered_json instance_to_json(const Instance& instance) {
  nlohmann::ordered_json doc;
  doc["n"] = instance.tree.dimension();
  doc["depth"] = instance.tree.depth();
  doc["sigma_leaves"] = instance.sigma.leaf_masses();
  doc["omega_leaves"] = instance.omega.leaf_masses();

  nlohmann::ordered_json kernel = nlohmann::ordered_json::array();
  for (const auto& [cube, value] : instance.kernel.nonzero_entries()) {
    nlohmann::ordered_json entry;
    entry["path"] = instance.tree.address_of(cube).path;
    entry["value"] = value;
    kernel.push_back(std::move(entry));
  }
  doc["kernel"] = std::move(kernel);
  doc["p"] = instance.exponents.p;
  doc["q"] = instance.exponents.q;
  return doc;
}

Instance instance_from_json(const nlohmann::json& doc) {
  const int n = doc.at("n").get<int>();
  const int depth = doc.at("depth").get<int>();
  DyadicTree tree(n, depth);

  auto sigma_leaves = doc.at("sigma_leaves").get<LeafFunction>();
  auto omega_leaves = doc.at("omega_leaves").get<LeafFunction>();
  MeasureView sigma(tree, std::move(sigma_leaves));
  MeasureView omega(tree, std::move(omega_leaves));

  Kernel kernel(tree);
  for (const auto& entry : doc.at("kernel")) {
    CubeAddress address;
    for (const auto& digit : entry.at("path")) {
      address.path.push_back(digit.get<std::uint8_t>());
    }
    kernel.set(tree.index_of(address), entry.at("value").get<double>());
  }

  const auto exponents = ExponentTriple::make(doc.at("p").get<double>(), doc.at("q").get<double>());
  return Instance{std::move(tree), std::move(sigma), std::move(omega), std::move(kernel),
                  exponents};
}

void save_instance(const Instance& instance, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("save_instance: cannot open " + file.string());
  out << instance_to_json(instance).dump(2) << "\n";
}

Instance load_instance(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("load_instance: cannot open " + file.string());
  nlohmann::json doc;
  in >> doc;
  return instance_from_json(doc);
}

}  // namespace dyadlab
