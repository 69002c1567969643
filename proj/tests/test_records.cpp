#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mixtree/records.hpp"
#include "support.hpp"

using namespace mixtree;

TEST_CASE("rationals") {
  const records::Record r = records::rational(make_rat(19, 6));
  CHECK(r.dump() == R"({"num":19,"den":6,"decimal":"3.1666666666666666667"})");
  CHECK(records::parse_rational(r) == make_rat(19, 6));
  const Rat huge = Rat(Integer("123456789012345678901234567890"), Integer(7));
  const records::Record h = records::rational(huge);
  CHECK(h["num"].is_string());
  CHECK(records::parse_rational(h) == huge);
  CHECK(records::rational(make_rat(-3, 2))["decimal"] == "-1.5");
  CHECK(to_decimal_string(make_rat(2, 3), 5) == "0.66667");
  CHECK(format_rat(Rat(3)) == "3 (~3)");
}

TEST_CASE("mixing report record") {
  const Tree p4 = path_graph(4);
  const records::Record r = records::mixing_report(p4, mixing_time(p4));
  CHECK(r["format"] == "mixtree.mixing_report");
  CHECK(r["version"] == records::kRecordVersion);
  CHECK(r.begin().key() == "format");
  CHECK(r["t_mix"]["num"] == 19);
  CHECK(r["z"] == 0);
  CHECK(r["z_partner"] == 3);
  CHECK(r["mix_from"].size() == 4);
  CHECK(r["edges"].dump() == "[[0,1],[1,2],[2,3]]");
}

TEST_CASE("certificate record") {
  const EvolutionCertificate cert = evolve(fixtures::surgery_example());
  const records::Record r = records::certificate(cert);
  CHECK(r["format"] == "mixtree.evolution_certificate");
  CHECK(r["valid"] == true);
  CHECK(r["steps"].size() == 6);
  CHECK(r["steps"][0]["kind"] == "sigma");
  CHECK(r["steps"][5]["after_tmix"]["num"] == 115);
  CHECK(r["steps"][5]["after_edges"].size() == 12);
  CHECK(r["final_params"]["ell"] == 5);
  // Field order is stable across runs.
  CHECK(records::certificate(evolve(fixtures::surgery_example())).dump() == r.dump());
}

TEST_CASE("simulation record") {
  const Tree p4 = path_graph(4);
  const NaiveRule rule{0, stationary(p4)};
  const records::Record r = records::simulation(rule, simulate_naive_rule(p4, rule, 100, 9));
  CHECK(r["seed"] == 9);
  CHECK(r["trials"] == 100);
  CHECK(r["analytic"]["den"] == 6);
}

TEST_CASE("csv rows") {
  CHECK(records::broom_csv_header() == "n,d,ell,r,tmix_num,tmix_den,tmix_decimal");
  CHECK(records::broom_csv_row({13, 5, 5, 4}, make_rat(115, 6)) ==
        "13,5,5,4,115,6,19.166666666666666667");
  CHECK(records::extremal_csv_header() ==
        "n,d,class_count,tmix_num,tmix_den,unique,matches_broom,argmax_code");
  const ExtremalReport rep = verify_extremal(6, 5);
  CHECK(records::extremal_csv_row(rep) == "6,5,1,17,2,true,true,000601e380");
}
