// Command-line driver for the level-crossing library. Exit codes: 0 success,
// 2 statistical gate failure, 1 anything else.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "lcross/experiment.hpp"
#include "lcross/stats.hpp"
#include "lcross/theory.hpp"

namespace fs = std::filesystem;
using namespace lcross;

namespace {

constexpr int kGateFailure = 2;

EnsembleSpec parse_ensemble(const std::string& text, int n) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "ge-c") return EnsembleSpec::complex_ginibre(n);
  if (head == "ge-r") return EnsembleSpec::real_ginibre(n);
  if (head == "goe") return EnsembleSpec::goe(n);
  if (head == "gue") return EnsembleSpec::gue(n);
  if (head == "goe-c")
    return arg.empty() ? EnsembleSpec::complex_symmetric(n)
                       : EnsembleSpec::complex_symmetric(n, std::stod(arg));
  if (head == "ge-c-scaled") {
    if (arg.empty())
      throw CLI::ValidationError("--ensemble", "ge-c-scaled needs a variance: ge-c-scaled:2.0");
    return EnsembleSpec::scaled_complex(n, std::stod(arg));
  }
  if (head == "subspace") {
    if (arg.empty())
      throw CLI::ValidationError("--ensemble", "subspace needs a mask file: subspace:mask.txt");
    std::ifstream in(arg);
    if (!in) throw CLI::ValidationError("--ensemble", "cannot open mask file " + arg);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) lines.push_back(line);
    }
    const int mask_n = static_cast<int>(lines.size());
    std::vector<std::uint8_t> pattern;
    for (const auto& row : lines) {
      if (static_cast<int>(row.size()) != mask_n)
        throw CLI::ValidationError("--ensemble", "mask must be square (n lines of n chars)");
      for (char c : row) {
        if (c != '0' && c != '1')
          throw CLI::ValidationError("--ensemble", "mask entries must be 0 or 1");
        pattern.push_back(c == '1' ? 1 : 0);
      }
    }
    return EnsembleSpec::subspace(mask_n, pattern);
  }
  throw CLI::ValidationError("--ensemble", "unknown ensemble " + text);
}

fs::path resolve_output_dir(const std::string& flag_value) {
  std::string dir = flag_value;
  if (dir.empty()) {
    if (const char* env = std::getenv("LCROSS_OUTPUT_DIR")) dir = env;
  }
  if (dir.empty()) dir = ".";
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  body(out);
}

struct CommonArgs {
  std::string ensemble = "ge-c";
  int n = 2;
  std::size_t pairs = 1000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string output_dir;

  void attach(CLI::App* cmd, bool with_ensemble = true) {
    if (with_ensemble)
      cmd->add_option("--ensemble", ensemble,
                      "ge-c | ge-r | goe | gue | goe-c[:var] | ge-c-scaled:var | subspace:file");
    cmd->add_option("--n", n, "matrix dimension")->check(CLI::Range(1, 16));
    cmd->add_option("--pairs", pairs, "number of sampled pairs");
    cmd->add_option("--seed", seed, "base seed");
    cmd->add_option("--workers", workers, "worker threads (output is identical for any count)")
        ->check(CLI::Range(1u, 64u));
    cmd->add_option("--output-dir", output_dir, "output directory (default $LCROSS_OUTPUT_DIR)");
  }

  ExperimentConfig config() const {
    ExperimentConfig cfg;
    cfg.spec = parse_ensemble(ensemble, n);
    cfg.pairs = pairs;
    cfg.seed = seed;
    cfg.workers = workers;
    return cfg;
  }
};

int cmd_sample_crossings(const CommonArgs& args, double ks_gate) {
  const ExperimentConfig cfg = args.config();
  const fs::path dir = resolve_output_dir(args.output_dir);
  const SampleRunResult result = run_sample_crossings(cfg);

  write_file(dir / "crossings.csv", [&](std::ostream& os) { write_crossings_csv(os, result); });
  const auto summary = sample_summary_json(cfg, result);
  write_file(dir / "sample_summary.json", [&](std::ostream& os) { os << summary.dump(2) << '\n'; });

  std::cout << "sampled " << cfg.pairs << " pairs (" << cfg.spec.name() << ", n=" << cfg.spec.n
            << ") in " << result.elapsed_seconds << " s; "
            << summary["finite_crossings"].get<std::size_t>() << " finite crossings, "
            << summary["failed_pairs"].get<std::size_t>() << " failed pairs\n";

  if (ks_gate > 0.0) {
    const auto chosen = choose_one_crossing_per_pair(result, cfg.seed);
    if (chosen.empty()) {
      std::cerr << "ks gate: no usable pairs\n";
      return kGateFailure;
    }
    EmpiricalDistribution emp(radial_values(chosen));
    const double d = ks_distance(emp, [](double r) {
      return std::isfinite(r) ? theory::sphere_uniform_radial_cdf(r) : 1.0;
    });
    std::cout << "ks distance (radial, sphere-uniform reference): " << d << " vs gate " << ks_gate
              << '\n';
    if (d > ks_gate) return kGateFailure;
  }
  return 0;
}

int cmd_verify_invariance(const CommonArgs& args, double hausdorff_gate) {
  const ExperimentConfig cfg = args.config();
  const fs::path dir = resolve_output_dir(args.output_dir);
  const InvarianceRunResult result = run_invariance(cfg);

  write_file(dir / "invariance.csv", [&](std::ostream& os) {
    os << "pair_id,hausdorff\n";
    for (std::size_t i = 0; i < result.per_pair.size(); ++i)
      if (result.per_pair[i] >= 0.0) os << i << ',' << format_double(result.per_pair[i]) << '\n';
  });
  const auto summary = invariance_summary_json(cfg, result);
  write_file(dir / "invariance_summary.json",
             [&](std::ostream& os) { os << summary.dump(2) << '\n'; });

  std::cout << "max chordal Hausdorff over " << cfg.pairs << " pairs: " << result.max_distance()
            << " (" << result.failed_pairs() << " failed)\n";
  if (hausdorff_gate > 0.0 && result.max_distance() > hausdorff_gate) return kGateFailure;
  return 0;
}

int cmd_monodromy_stats(const CommonArgs& args) {
  const ExperimentConfig cfg = args.config();
  const fs::path dir = resolve_output_dir(args.output_dir);
  const MonodromyRunResult result = run_monodromy(cfg);
  const FrequencyTable table = tuple_frequencies(result.records);

  write_file(dir / "tuple_frequencies.csv",
             [&](std::ostream& os) { write_tuple_frequency_csv(os, table); });
  const auto summary = monodromy_summary_json(cfg, result);
  write_file(dir / "monodromy_summary.json",
             [&](std::ostream& os) { os << summary.dump(2) << '\n'; });

  std::cout << "monodromy over " << cfg.pairs << " pairs: " << table.total() << " valid, "
            << table.distinct() << " distinct tuples, discard rate "
            << discard_rate(result.records) << '\n';
  return 0;
}

int cmd_theory_tables(const std::string& law, double lo, double hi, int points,
                      const std::string& output_dir) {
  const fs::path dir = resolve_output_dir(output_dir);
  std::function<double(double)> f;
  if (law == "sphere-radial-cdf") f = theory::sphere_uniform_radial_cdf;
  else if (law == "real-axis-cdf") f = theory::real2_real_axis_cdf;
  else if (law == "real-axis-density") f = theory::real2_real_axis_density;
  else if (law == "midpoint-density") f = theory::real2_midpoint_density;
  else if (law == "midpoint-cdf") f = theory::real2_midpoint_cdf;
  else if (law == "product-density") f = theory::real2_product_density;
  else if (law == "quadratic-form-density") f = theory::real2_quadratic_form_density;
  else if (law == "gap-density-sym") f = theory::goe2_gap_density;
  else if (law == "gap-density-herm") f = theory::gue2_gap_density;
  else if (law == "abs-y-cdf") f = theory::gue2_abs_y_cdf;
  else throw CLI::ValidationError("--law", "unknown law " + law);

  std::vector<std::pair<double, double>> rows;
  rows.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    rows.emplace_back(x, f(x));
  }
  const fs::path path = dir / (law + ".csv");
  write_file(path, [&](std::ostream& os) { write_xy_csv(os, "x", law, rows); });
  std::cout << "wrote " << points << " rows to " << path.string() << '\n';
  return 0;
}

int cmd_enumerate_tuples(int n, int length, const std::string& target,
                         const std::string& output_dir) {
  Permutation t;
  if (target == "reversal") t = reversal_permutation(n);
  else if (target == "identity") t = identity_permutation(n);
  else throw CLI::ValidationError("--target", "target must be reversal or identity");

  const auto tuples = enumerate_admissible(n, length, t);
  if (!output_dir.empty() || std::getenv("LCROSS_OUTPUT_DIR")) {
    const fs::path dir = resolve_output_dir(output_dir);
    write_file(dir / "tuples.csv", [&](std::ostream& os) {
      os << "tuple\n";
      for (const auto& seq : tuples) os << tuple_to_string(seq) << '\n';
    });
  }
  std::cout << tuples.size() << " admissible tuples (n=" << n << ", length=" << length << ", "
            << target << ")\n";
  return 0;
}

int cmd_real_count(const CommonArgs& args) {
  const ExperimentConfig cfg = args.config();
  const fs::path dir = resolve_output_dir(args.output_dir);
  const SampleRunResult result = run_sample_crossings(cfg);
  const auto hist = real_count_histogram(result);

  write_file(dir / "real_count.csv", [&](std::ostream& os) { write_real_count_csv(os, hist); });

  std::size_t total = 0, weighted = 0;
  for (const auto& [k, c] : hist) {
    total += c;
    weighted += static_cast<std::size_t>(k) * c;
  }
  std::cout << "real-crossing counts over " << total << " usable pairs; mean "
            << (total ? double(weighted) / double(total) : 0.0) << " real crossings per pair\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random matrix pencil level-crossing experiments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value configuration file");

  CommonArgs sample_args, invariance_args, monodromy_args, real_args;
  double ks_gate = 0.0, hausdorff_gate = 0.0;

  auto* sample = app.add_subcommand("sample-crossings", "sample pairs and their crossings");
  sample_args.attach(sample);
  sample->add_option("--ks-gate", ks_gate,
                     "fail (exit 2) if the radial KS distance exceeds this value");

  auto* invariance = app.add_subcommand("verify-invariance",
                                        "compare crossings of transformed pairs "
                                        "against the projective image");
  invariance_args.attach(invariance);
  invariance->add_option("--hausdorff-gate", hausdorff_gate,
                         "fail (exit 2) if any pair exceeds this chordal Hausdorff distance");

  auto* monodromy = app.add_subcommand("monodromy-stats", "tuple statistics from loop tracking");
  monodromy_args.attach(monodromy);

  std::string law = "sphere-radial-cdf";
  double lo = 0.0, hi = 4.0;
  int points = 101;
  std::string tables_dir;
  auto* tables = app.add_subcommand("theory-tables", "tabulate reference laws to CSV");
  tables->add_option("--law", law, "which law to tabulate");
  tables->add_option("--min", lo, "left endpoint");
  tables->add_option("--max", hi, "right endpoint");
  tables->add_option("--points", points, "row count")->check(CLI::Range(2, 1000000));
  tables->add_option("--output-dir", tables_dir, "output directory");

  int enum_n = 3, enum_length = 3;
  std::string enum_target = "reversal", enum_dir;
  auto* enumerate = app.add_subcommand("enumerate-tuples", "list admissible transposition tuples");
  enumerate->add_option("--n", enum_n, "label count")->check(CLI::Range(2, 6));
  enumerate->add_option("--length", enum_length, "tuple length")->check(CLI::Range(1, 8));
  enumerate->add_option("--target", enum_target, "reversal | identity");
  enumerate->add_option("--output-dir", enum_dir, "output directory");

  auto* real = app.add_subcommand("real-count", "distribution of real crossings per pair");
  real_args.attach(real);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sample->parsed()) return cmd_sample_crossings(sample_args, ks_gate);
    if (invariance->parsed()) return cmd_verify_invariance(invariance_args, hausdorff_gate);
    if (monodromy->parsed()) return cmd_monodromy_stats(monodromy_args);
    if (tables->parsed()) return cmd_theory_tables(law, lo, hi, points, tables_dir);
    if (enumerate->parsed()) return cmd_enumerate_tuples(enum_n, enum_length, enum_target, enum_dir);
    if (real->parsed()) return cmd_real_count(real_args);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
