#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mixtree/brooms.hpp"
#include "mixtree/enumeration.hpp"
#include "mixtree/mixing.hpp"
#include "mixtree/rational.hpp"
#include "mixtree/stopping_rules.hpp"
#include "mixtree/surgery.hpp"
#include "mixtree/tree.hpp"

namespace mixtree::records {

using Record = nlohmann::ordered_json;

inline constexpr int kRecordVersion = 1;

/// {"num": .., "den": .., "decimal": ".."}; integers larger than 64 bits are
/// written as decimal strings.
Record rational(const Rat& value);
Rat parse_rational(const Record& record);

/// [[u, v], ...] in Tree::edges() order.
Record edge_list(const Tree& tree);

Record mixing_report(const Tree& tree, const MixingReport& report);
Record certificate(const EvolutionCertificate& cert);
Record simulation(const NaiveRule& rule, const SimulationSummary& summary);

/// n,d,ell,r,tmix_num,tmix_den,tmix_decimal
std::string broom_csv_header();
std::string broom_csv_row(const BroomParams& params, const Rat& tmix);

/// n,d,class_count,tmix_num,tmix_den,unique,matches_broom,argmax_code
std::string extremal_csv_header();
std::string extremal_csv_row(const ExtremalReport& report);

}  // namespace mixtree::records
