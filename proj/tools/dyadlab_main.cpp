// Experiment harness for the dyadic two-weight laboratory.
//
//   dyadlab gen     --family riesz --depth 6 --alpha 0.5 --out inst.json
//   dyadlab verify  lemma21 --count 1000 --seed 1 --out report.csv
//   dyadlab sweep   inst.json --p 2.5 --p 3 --p 4 --q 2 --out sweep.csv
//   dyadlab report  inst.json
//
// verify exits nonzero as soon as any property row fails; the partial CSV is
// still written.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dyadlab/conditions.hpp"
#include "dyadlab/csv.hpp"
#include "dyadlab/generators.hpp"
#include "dyadlab/instance.hpp"
#include "dyadlab/normlab.hpp"
#include "dyadlab/suites.hpp"

namespace {

using dyadlab::CsvWriter;

int run_gen(const std::string& family, const dyadlab::GenParams& params, std::uint64_t seed,
            const std::string& out) {
  const dyadlab::Instance instance =
      dyadlab::generate_instance(dyadlab::family_from_name(family), params, seed);
  dyadlab::save_instance(instance, out);
  std::cout << "wrote " << out << " (" << family << ", depth " << instance.tree.depth()
            << ", " << instance.tree.leaf_count() << " leaves)\n";
  return 0;
}

int run_verify(const std::string& suite, int count, std::uint64_t seed, int jobs,
               const std::string& out) {
  const auto results = dyadlab::suites::run_named(suite, count, seed, jobs);

  CsvWriter csv(out, {"suite", "instance", "check", "lhs", "rhs", "margin", "pass"},
                {"dyadlab verify report", "generated: " + dyadlab::utc_timestamp(),
                 "rng: mt19937_64", "suite: " + suite + " count: " + std::to_string(count) +
                     " seed: " + std::to_string(seed)});
  bool pass = true;
  std::size_t rows = 0;
  for (const auto& result : results) {
    for (const auto& instance : result.instances) {
      for (const auto& check : instance.checks) {
        csv.row({result.suite, std::to_string(instance.index), check.id, CsvWriter::num(check.lhs),
                 CsvWriter::num(check.rhs), CsvWriter::num(check.margin),
                 check.pass ? "1" : "0"});
        ++rows;
      }
    }
    pass = pass && result.pass;
    std::cout << result.suite << ": " << (result.pass ? "pass" : "FAIL") << " ("
              << result.check_count() << " checks, min margin " << result.min_margin() << ")\n";
  }
  std::cout << rows << " rows -> " << out << "\n";
  return pass ? 0 : 1;
}

void print_record(const dyadlab::EquivalenceRecord& record) {
  std::cout << "  C1_est          " << record.c1_est << "\n"
            << "  C2              " << record.c2 << "\n"
            << "  C2/C1           " << record.ratio << "\n"
            << "  W_sigma_side    " << record.w_sigma_side << "\n"
            << "  W_omega_side    " << record.w_omega_side << "\n"
            << "  A_dlbo          " << record.dlbo << "\n"
            << "  sawyer fwd/bwd  " << record.sawyer_forward << " / " << record.sawyer_backward
            << "\n"
            << "  kappa_suf       " << record.kappa_suf << " (C1<=kappa_suf*C2: "
            << (record.sufficiency_ok ? "ok" : "FAIL") << ")\n"
            << "  kappa_nec       " << record.kappa_nec_sigma << " / " << record.kappa_nec_omega
            << (record.necessity_checked
                    ? std::string(" (C2<=kappa_nec*C1: ") + (record.necessity_ok ? "ok" : "FAIL") +
                          ")"
                    : std::string(" (necessity unchecked: instance too large for brute force)"))
            << "\n"
            << "  seconds         " << record.seconds << "\n";
  if (record.degenerate) std::cout << "  degenerate instance (zero kernel or measure)\n";
}

std::vector<std::string> record_columns() {
  return {"p",         "q",           "c1_est",     "c2",          "ratio",
          "w_sigma",   "w_omega",     "dlbo",       "sawyer_fwd",  "sawyer_bwd",
          "kappa_suf", "kappa_nec_s", "kappa_nec_o", "suf_ok",     "nec_checked",
          "nec_ok",    "degenerate",  "seed",       "seconds"};
}

std::vector<std::string> record_cells(const dyadlab::Instance& instance,
                                      const dyadlab::EquivalenceRecord& record) {
  return {CsvWriter::num(instance.exponents.p),
          CsvWriter::num(instance.exponents.q),
          CsvWriter::num(record.c1_est),
          CsvWriter::num(record.c2),
          CsvWriter::num(record.ratio),
          CsvWriter::num(record.w_sigma_side),
          CsvWriter::num(record.w_omega_side),
          CsvWriter::num(record.dlbo),
          CsvWriter::num(record.sawyer_forward),
          CsvWriter::num(record.sawyer_backward),
          CsvWriter::num(record.kappa_suf),
          CsvWriter::num(record.kappa_nec_sigma),
          CsvWriter::num(record.kappa_nec_omega),
          record.sufficiency_ok ? "1" : "0",
          record.necessity_checked ? "1" : "0",
          record.necessity_ok ? "1" : "0",
          record.degenerate ? "1" : "0",
          std::to_string(record.seed),
          CsvWriter::num(record.seconds)};
}

int run_report(const std::string& file, const dyadlab::EquivalenceOptions& options,
               const std::string& out, const std::string& dump_maximizer) {
  const dyadlab::Instance instance = dyadlab::load_instance(file);
  const dyadlab::EquivalenceRecord record = dyadlab::equivalence_report(instance, options);
  std::cout << "equivalence report for " << file << "\n";
  print_record(record);

  if (!out.empty()) {
    CsvWriter csv(out, record_columns(),
                  {"dyadlab equivalence report", "generated: " + dyadlab::utc_timestamp(),
                   "rng: mt19937_64", "instance: " + file});
    csv.row(record_cells(instance, record));
    std::cout << "row -> " << out << "\n";
  }
  if (!dump_maximizer.empty()) {
    const auto estimate =
        dyadlab::norm_lower_bound(instance, options.starts, options.iters, options.seed);
    nlohmann::ordered_json doc;
    doc["c1_est"] = estimate.value;
    doc["seed"] = estimate.seed;
    doc["maximizer"] = estimate.maximizer;
    std::ofstream sidecar(dump_maximizer);
    sidecar << doc.dump(2) << "\n";
    std::cout << "maximizer -> " << dump_maximizer << "\n";
  }
  return record.sufficiency_ok && record.necessity_ok ? 0 : 1;
}

std::vector<double> expand_axis(std::vector<double> values, int steps) {
  if (steps > 1 && values.size() == 2) {
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
      grid[static_cast<std::size_t>(i)] =
          values[0] + (values[1] - values[0]) * i / (steps - 1);
    }
    return grid;
  }
  return values;
}

int run_sweep(const std::string& file, std::vector<double> p_values, std::vector<double> q_values,
              int steps, const dyadlab::EquivalenceOptions& base_options,
              const std::string& out) {
  const dyadlab::Instance instance = dyadlab::load_instance(file);
  p_values = expand_axis(std::move(p_values), steps);
  q_values = expand_axis(std::move(q_values), steps);
  for (double p : p_values) {
    for (double q : q_values) {
      if (!(1.0 < q && q < p)) {
        std::cerr << "sweep: grid point (p=" << p << ", q=" << q << ") violates 1 < q < p\n";
        return 2;
      }
    }
  }

  CsvWriter csv(out, record_columns(),
                {"dyadlab sweep", "generated: " + dyadlab::utc_timestamp(), "rng: mt19937_64",
                 "instance: " + file});
  bool ok = true;
  for (double p : p_values) {
    for (double q : q_values) {
      dyadlab::Instance point{instance.tree, instance.sigma, instance.omega, instance.kernel,
                              dyadlab::ExponentTriple::make(p, q)};
      const auto record = dyadlab::equivalence_report(point, base_options);
      csv.row(record_cells(point, record));
      ok = ok && record.sufficiency_ok && record.necessity_ok;
    }
  }
  std::cout << p_values.size() * q_values.size() << " grid rows -> " << out << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dyadic two-weight trace inequality laboratory"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  std::string family;
  dyadlab::GenParams params;
  std::uint64_t seed = 1;
  std::string out_file = "instance.json";
  gen->add_option("--family", family, "single-cube | uniform-dlbo | random-sparse | riesz")
      ->required();
  gen->add_option("--seed", seed, "rng seed");
  gen->add_option("--depth", params.depth, "tree depth");
  gen->add_option("--n", params.dimension, "tree dimension");
  gen->add_option("--p", params.p, "exponent p");
  gen->add_option("--q", params.q, "exponent q");
  gen->add_option("--alpha", params.alpha, "riesz kernel exponent");
  gen->add_option("--density", params.kernel_density, "random-sparse kernel density");
  gen->add_option("--out", out_file, "output instance file");

  // verify
  auto* verify = app.add_subcommand("verify", "run a property suite over random instances");
  std::string suite;
  int count = 100;
  int jobs = 1;
  std::string verify_out = "verify_report.csv";
  verify->add_option("suite", suite, "one of: lemma21 corona proofsteps necessity sufficiency "
                                     "duality homogeneity maximal dlbo-prop11 all")
      ->required();
  verify->add_option("--count", count, "instances per suite");
  verify->add_option("--seed", seed, "base seed");
  verify->add_option("--jobs", jobs, "worker threads");
  verify->add_option("--out", verify_out, "CSV report file");

  // report
  auto* report = app.add_subcommand("report", "equivalence report for one instance file");
  std::string instance_file;
  dyadlab::EquivalenceOptions options;
  std::string report_out;
  std::string dump_maximizer;
  std::string dlbo_mode = "pointwise";
  report->add_option("instance", instance_file, "instance JSON file")->required();
  report->add_option("--starts", options.starts, "optimizer restarts");
  report->add_option("--iters", options.iters, "optimizer iterations per start");
  report->add_option("--seed", options.seed, "optimizer seed");
  report->add_option("--out", report_out, "append CSV row to this file");
  report->add_option("--dump-maximizer", dump_maximizer, "write maximizer sidecar JSON");
  report->add_option("--dlbo-mode", dlbo_mode, "pointwise | ae")
      ->check(CLI::IsMember({"pointwise", "ae"}));

  // sweep
  auto* sweep = app.add_subcommand("sweep", "equivalence report over a (p, q) grid");
  std::vector<double> p_values;
  std::vector<double> q_values;
  int steps = 0;
  std::string sweep_out = "sweep.csv";
  sweep->add_option("instance", instance_file, "instance JSON file")->required();
  sweep->add_option("--p", p_values, "p values (or lo hi with --steps)")->required();
  sweep->add_option("--q", q_values, "q values (or lo hi with --steps)")->required();
  sweep->add_option("--steps", steps, "expand two-value axes into this many points");
  sweep->add_option("--seed", options.seed, "optimizer seed");
  sweep->add_option("--starts", options.starts, "optimizer restarts");
  sweep->add_option("--iters", options.iters, "optimizer iterations per start");
  sweep->add_option("--out", sweep_out, "CSV output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return run_gen(family, params, seed, out_file);
    if (*verify) return run_verify(suite, count, seed, jobs, verify_out);
    if (*report) {
      options.dlbo_mode =
          dlbo_mode == "ae" ? dyadlab::DlboMode::almost_everywhere : dyadlab::DlboMode::pointwise;
      return run_report(instance_file, options, report_out, dump_maximizer);
    }
    if (*sweep) return run_sweep(instance_file, p_values, q_values, steps, options, sweep_out);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }
  return 0;
}
