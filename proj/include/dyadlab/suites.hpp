#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dyadlab::suites {

/// One asserted inequality: pass means lhs <= rhs up to the slack already
/// folded into the comparison; margin = rhs - lhs is kept for the report.
struct Check {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = true;
};

struct InstanceChecks {
  std::uint64_t index = 0;
  std::vector<Check> checks;
};

struct Result {
  std::string suite;
  std::vector<InstanceChecks> instances;
  bool pass = true;

  std::size_t check_count() const;
  double min_margin() const;
};

/// lhs <= rhs with relative slack `tol` (scaled by the larger magnitude, with
/// an absolute floor of tol for values near zero).
Check make_check(std::string id, double lhs, double rhs, double tol);

// Property suites over seeded random instances. Each accepts an instance
// count, a base seed, and a worker count; results are ordered by instance
// index regardless of schedule.
Result lemma21(int count, std::uint64_t seed, int jobs, bool sweep_all_s = false);
Result elementary(int count, std::uint64_t seed, int jobs);
Result corona(int count, std::uint64_t seed, int jobs);
Result proofsteps(int count, std::uint64_t seed, int jobs);
Result necessity(int count, std::uint64_t seed, int jobs);
Result sufficiency(int count, std::uint64_t seed, int jobs);
Result duality(int count, std::uint64_t seed, int jobs);
Result homogeneity(int count, std::uint64_t seed, int jobs);
Result maximal(int count, std::uint64_t seed, int jobs);
Result dlbo_prop11(int count, std::uint64_t seed, int jobs);

/// Closed-form agreement of all norms on depth-0 instances.
Result single_cube_closed_form(int count, std::uint64_t seed, int jobs);

/// Depth stability of c1/wolff ratios on the uniform-dlbo family: the ratio
/// interval observed at depth 3 must contain, up to a factor of 2, the
/// ratios of the same configurations at depths 6 and 8.
Result dlbo_depth_stability(std::uint64_t seed, int jobs);

/// Suite ids accepted by the command-line `verify`.
const std::vector<std::string>& cli_suite_names();

/// Runs one named suite (or every one of them for "all").
std::vector<Result> run_named(const std::string& name, int count, std::uint64_t seed, int jobs);

}  // namespace dyadlab::suites
