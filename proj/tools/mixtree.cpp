#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mixtree/brooms.hpp"
#include "mixtree/enumeration.hpp"
#include "mixtree/error.hpp"
#include "mixtree/mixing.hpp"
#include "mixtree/records.hpp"
#include "mixtree/stopping_rules.hpp"
#include "mixtree/surgery.hpp"
#include "mixtree/tree.hpp"

namespace {

using namespace mixtree;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

enum class Format { Text, Record };

void print_indices(std::ostream& out, const std::vector<int>& values) {
  for (std::size_t k = 0; k < values.size(); ++k) out << (k ? "," : "") << values[k];
}

int run_analyze(const std::string& path, Format format) {
  const Tree tree = read_edge_list_file(path);
  const MixingReport report = mixing_time(tree);
  if (format == Format::Record) {
    std::cout << records::mixing_report(tree, report).dump(2) << '\n';
    return kExitOk;
  }
  std::cout << "t_mix = " << format_rat(report.t_mix) << ", z=" << report.z
            << ", z'=" << report.z_partner << '\n';
  std::cout << "order = " << tree.order() << ", diameter = " << diameter(tree) << '\n';
  std::cout << "vertex,H(v,pi),H(pi,v)\n";
  for (Vertex v = 0; v < tree.order(); ++v) {
    std::cout << v << ',' << format_rat(report.mix_from[static_cast<std::size_t>(v)]) << ','
              << format_rat(report.access_to[static_cast<std::size_t>(v)]) << '\n';
  }
  return kExitOk;
}

int run_broom(int n, int d, std::optional<int> ell, Format format) {
  BroomParams params = balanced_params(n, d);
  if (ell) {
    params.ell = *ell;
    params.r = n - d + 1 - *ell;
  }
  params.validate();
  const LabeledBroom broom = build_double_broom(params);
  const MixingReport report = mixing_time(broom.tree);
  if (format == Format::Record) {
    records::Record out = records::mixing_report(broom.tree, report);
    out["broom"] = {{"n", n}, {"d", d}, {"ell", params.ell}, {"r", params.r}};
    out["closed_form"] = records::rational(broom_mixing_closed_form(params));
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  }
  std::cout << "# double broom n=" << n << " d=" << d << " ell=" << params.ell
            << " r=" << params.r << '\n';
  std::cout << "# t_mix = " << format_rat(report.t_mix) << ", z=" << report.z
            << ", z'=" << report.z_partner << '\n';
  write_edge_list(std::cout, broom.tree);
  return kExitOk;
}

int run_table(int n_max) {
  std::cout << records::broom_csv_header() << ",formula_match\n";
  for (int n = 4; n <= n_max; ++n) {
    for (int d = 3; d <= n - 1; ++d) {
      const LabeledBroom broom = balanced_broom(n, d);
      const Rat tmix = mixing_time(broom.tree).t_mix;
      const bool match = tmix == balanced_mixing_closed_form(n, d);
      std::cout << records::broom_csv_row(broom.params, tmix) << ',' << (match ? "true" : "false")
                << '\n';
    }
  }
  return kExitOk;
}

int run_verify(int n_max, std::optional<int> only_d, bool long_mode,
               const std::vector<std::string>& inject) {
  const EnumerationMode mode = long_mode ? EnumerationMode::Long : EnumerationMode::Standard;
  const int cap = long_mode ? kLongMaxOrder : kStandardMaxOrder;
  if (n_max > cap) {
    throw Error(ErrorCode::OrderTooLarge,
                "--n-max " + std::to_string(n_max) + " exceeds " + std::to_string(cap) +
                    (long_mode ? "" : " (use --long for orders 11 and 12)"));
  }
  if (only_d && *only_d < 3) throw Error(ErrorCode::BadDiameter, "--d must be at least 3");

  // Extra candidates are appended as-is, without deduplication.
  std::map<std::pair<int, int>, std::vector<Tree>> extra;
  for (const auto& path : inject) {
    Tree tree = read_edge_list_file(path);
    extra[{tree.order(), diameter(tree)}].push_back(std::move(tree));
  }

  std::cout << records::extremal_csv_header() << '\n';
  bool all_pass = true;
  for (int n = 4; n <= n_max; ++n) {
    if (only_d && *only_d > n - 1) continue;
    const TreeClassIterator classes = all_trees(n, mode);
    std::map<int, std::vector<Tree>> by_diameter;
    for (const auto& tree : classes) by_diameter[diameter(tree)].push_back(tree);
    for (int d = 3; d <= n - 1; ++d) {
      if (only_d && d != *only_d) continue;
      std::vector<Tree>& candidates = by_diameter[d];
      if (auto it = extra.find({n, d}); it != extra.end()) {
        candidates.insert(candidates.end(), it->second.begin(), it->second.end());
      }
      const ExtremalReport report = evaluate_extremal(n, d, candidates);
      std::cout << records::extremal_csv_row(report) << '\n';
      if (!report.passed()) {
        all_pass = false;
        std::cerr << "FAIL n=" << n << " d=" << d;
        for (const auto& code : report.argmax_codes) std::cerr << ' ' << to_hex(code);
        std::cerr << '\n';
      }
    }
  }
  return all_pass ? kExitOk : kExitFailed;
}

void print_certificate_text(std::ostream& out, const EvolutionCertificate& cert) {
  out << "initial: n=" << cert.initial_tree.order() << " d=" << cert.original_diameter
      << " t_mix=" << format_rat(cert.initial_tmix) << '\n';
  out << "step,phase,kind,indices,moved,before,after,checks\n";
  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    const SurgeryStep& step = cert.steps[k];
    out << k + 1 << ',' << step.phase << ',' << to_string(step.kind) << ",\"";
    print_indices(out, step.indices);
    out << "\",\"";
    print_indices(out, step.moved);
    out << "\"," << to_fraction_string(step.before_tmix) << ','
        << to_fraction_string(step.after_tmix) << ',' << (step.all_checks_pass() ? "ok" : "FAIL")
        << '\n';
  }
  const BroomParams& p = cert.final_params;
  out << "final: double broom n=" << p.n << " d=" << p.d << " ell=" << p.ell << " r=" << p.r
      << " t_mix=" << format_rat(cert.final_tmix) << '\n';
  if (cert.final_diameter < cert.original_diameter) {
    out << "compare: balanced broom n=" << p.n << " d=" << cert.original_diameter
        << " t_mix=" << format_rat(cert.target_tmix) << " (gap "
        << format_rat(cert.target_tmix - cert.final_tmix) << ")\n";
  }
  const auto violations = cert.violations();
  out << (violations.empty() ? "certificate: valid" : "certificate: INVALID") << '\n';
  for (const auto& v : violations) out << "violation: " << v << '\n';
}

int run_evolve(const std::string& path, Format format, const std::string& output) {
  const Tree tree = read_edge_list_file(path);
  const EvolutionCertificate cert = evolve(tree);
  std::ostringstream text;
  if (format == Format::Record) {
    text << records::certificate(cert).dump(2) << '\n';
  } else {
    print_certificate_text(text, cert);
  }
  if (output.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream file(output);
    if (!file) throw Error(ErrorCode::IoError, "cannot write " + output);
    file << text.str();
  }
  return cert.valid() ? kExitOk : kExitFailed;
}

int run_simulate(const std::string& path, Vertex start, std::int64_t trials, std::uint64_t seed,
                 Format format) {
  const Tree tree = read_edge_list_file(path);
  tree.check(start);
  const NaiveRule rule{start, stationary(tree)};
  const SimulationSummary summary = simulate_naive_rule(tree, rule, trials, seed);
  if (format == Format::Record) {
    std::cout << records::simulation(rule, summary).dump(2) << '\n';
    return kExitOk;
  }
  std::ostringstream line;
  line.precision(10);
  line << "seed = " << summary.seed << ", trials = " << summary.trials << '\n';
  line << "analytic = " << format_rat(summary.analytic) << '\n';
  line << "mean = " << summary.mean_length << " +/- " << summary.std_error << " (SE)"
       << (summary.mean_within_three_se() ? ", within 3 SE" : ", OUTSIDE 3 SE") << '\n';
  line << "tv_distance = " << summary.tv_distance_to_target << '\n';
  std::cout << line.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact hitting and mixing times on trees"};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{{"text", Format::Text}, {"record", Format::Record}};
  Format format = Format::Text;
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "text or record (JSON)")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };

  std::string path;
  auto* analyze = app.add_subcommand("analyze", "mixing report for an edge-list file");
  analyze->add_option("path", path, "edge-list file")->required();
  add_format(analyze);

  int n = 0;
  int d = 0;
  std::optional<int> ell;
  auto* broom = app.add_subcommand("broom", "build a double broom and report its mixing time");
  broom->add_option("--n", n, "order")->required();
  broom->add_option("--d", d, "diameter")->required();
  broom->add_option("--ell", ell, "leaves on the v_0 side (default balanced)");
  add_format(broom);

  int n_max = 0;
  auto* table = app.add_subcommand("table", "CSV of balanced-broom mixing times");
  table->add_option("--n-max", n_max, "largest order")->required();

  std::optional<int> only_d;
  bool long_mode = false;
  std::vector<std::string> inject;
  auto* verify = app.add_subcommand("verify", "exhaustive extremal check, CSV report");
  verify->add_option("--n-max", n_max, "largest order")->required();
  verify->add_option("--d", only_d, "restrict to one diameter");
  verify->add_flag("--long", long_mode, "allow orders 11 and 12 (slow)");
  verify->add_option("--inject", inject, "extra candidate trees (edge-list files)");

  std::string output;
  auto* evolve_cmd = app.add_subcommand("evolve", "surgery certificate for an edge-list file");
  evolve_cmd->add_option("path", path, "edge-list file")->required();
  evolve_cmd->add_option("--output", output, "write the certificate here instead of stdout");
  add_format(evolve_cmd);

  Vertex start = 0;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run of the naive rule to pi");
  simulate->add_option("path", path, "edge-list file")->required();
  simulate->add_option("--start", start, "start vertex")->required();
  simulate->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "64-bit seed");
  add_format(simulate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) return run_analyze(path, format);
    if (*broom) return run_broom(n, d, ell, format);
    if (*table) return run_table(n_max);
    if (*verify) return run_verify(n_max, only_d, long_mode, inject);
    if (*evolve_cmd) return run_evolve(path, format, output);
    if (*simulate) return run_simulate(path, start, trials, seed, format);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
