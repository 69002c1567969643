#include "mixtree/records.hpp"

#include <limits>
#include <sstream>

namespace mixtree::records {

namespace {

Record integer(const Integer& value) {
  if (value >= std::numeric_limits<std::int64_t>::min() &&
      value <= std::numeric_limits<std::int64_t>::max()) {
    return value.convert_to<std::int64_t>();
  }
  return value.str();
}

Integer parse_integer(const Record& record) {
  if (record.is_string()) return Integer(record.get<std::string>());
  return Integer(record.get<std::int64_t>());
}

Record header(const char* format) {
  Record out;
  out["format"] = format;
  out["version"] = kRecordVersion;
  return out;
}

Record rationals(const std::vector<Rat>& values) {
  Record out = Record::array();
  for (const auto& v : values) out.push_back(rational(v));
  return out;
}

std::string bool_text(bool value) { return value ? "true" : "false"; }

}  // namespace

Record rational(const Rat& value) {
  Record out;
  out["num"] = integer(boost::multiprecision::numerator(value));
  out["den"] = integer(boost::multiprecision::denominator(value));
  out["decimal"] = to_decimal_string(value);
  return out;
}

Rat parse_rational(const Record& record) {
  return Rat(parse_integer(record.at("num")), parse_integer(record.at("den")));
}

Record edge_list(const Tree& tree) {
  Record out = Record::array();
  for (const auto& [u, v] : tree.edges()) out.push_back({u, v});
  return out;
}

Record mixing_report(const Tree& tree, const MixingReport& report) {
  Record out = header("mixtree.mixing_report");
  out["order"] = tree.order();
  out["diameter"] = diameter(tree);
  out["t_mix"] = rational(report.t_mix);
  out["z"] = report.z;
  out["z_partner"] = report.z_partner;
  out["mix_from"] = rationals(report.mix_from);
  out["access_to"] = rationals(report.access_to);
  out["edges"] = edge_list(tree);
  return out;
}

Record certificate(const EvolutionCertificate& cert) {
  Record out = header("mixtree.evolution_certificate");
  out["order"] = cert.initial_tree.order();
  out["original_diameter"] = cert.original_diameter;
  out["final_diameter"] = cert.final_diameter;
  out["initial_tmix"] = rational(cert.initial_tmix);
  out["final_tmix"] = rational(cert.final_tmix);
  out["target_tmix"] = rational(cert.target_tmix);
  out["final_params"] = {{"n", cert.final_params.n},
                         {"d", cert.final_params.d},
                         {"ell", cert.final_params.ell},
                         {"r", cert.final_params.r}};
  out["valid"] = cert.valid();
  out["violations"] = cert.violations();
  Record steps = Record::array();
  for (const auto& step : cert.steps) {
    Record row;
    row["phase"] = step.phase;
    row["kind"] = std::string(to_string(step.kind));
    row["indices"] = step.indices;
    row["moved"] = step.moved;
    row["before_tmix"] = rational(step.before_tmix);
    row["after_tmix"] = rational(step.after_tmix);
    Record checks = Record::object();
    for (const auto& check : step.checks) checks[check.name] = check.passed;
    row["checks"] = checks;
    row["after_edges"] = edge_list(step.after_tree);
    steps.push_back(row);
  }
  out["steps"] = steps;
  out["initial_edges"] = edge_list(cert.initial_tree);
  out["final_edges"] = edge_list(cert.final_tree);
  return out;
}

Record simulation(const NaiveRule& rule, const SimulationSummary& summary) {
  Record out = header("mixtree.simulation_summary");
  out["seed"] = summary.seed;
  out["trials"] = summary.trials;
  out["start"] = rule.start;
  out["analytic"] = rational(summary.analytic);
  out["mean_length"] = summary.mean_length;
  out["std_error"] = summary.std_error;
  out["within_three_se"] = summary.mean_within_three_se();
  out["tv_distance_to_target"] = summary.tv_distance_to_target;
  out["empirical_final"] = summary.empirical_final;
  return out;
}

std::string broom_csv_header() { return "n,d,ell,r,tmix_num,tmix_den,tmix_decimal"; }

std::string broom_csv_row(const BroomParams& params, const Rat& tmix) {
  std::ostringstream row;
  row << params.n << ',' << params.d << ',' << params.ell << ',' << params.r << ','
      << boost::multiprecision::numerator(tmix) << ',' << boost::multiprecision::denominator(tmix)
      << ',' << to_decimal_string(tmix);
  return row.str();
}

std::string extremal_csv_header() {
  return "n,d,class_count,tmix_num,tmix_den,unique,matches_broom,argmax_code";
}

std::string extremal_csv_row(const ExtremalReport& report) {
  std::ostringstream row;
  row << report.n << ',' << report.d << ',' << report.class_count << ','
      << boost::multiprecision::numerator(report.max_tmix) << ','
      << boost::multiprecision::denominator(report.max_tmix) << ',' << bool_text(report.is_unique)
      << ',' << bool_text(report.matches_balanced_broom) << ',';
  for (std::size_t k = 0; k < report.argmax_codes.size(); ++k) {
    if (k > 0) row << ';';
    row << to_hex(report.argmax_codes[k]);
  }
  return row.str();
}

}  // namespace mixtree::records
