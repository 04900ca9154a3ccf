#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "dpp/json_io.hpp"
#include "helpers.hpp"

using namespace dpp;
using namespace dpp::testing;

namespace {

Json valid_doc() {
  Interface iface({"o0", "o1"}, {"a0", "a1"}, 2);
  Json doc;
  doc["interface"] = {{"observations", {"o0", "o1"}},
                      {"actions", {"a0", "a1"}},
                      {"horizon", 2}};
  doc["rho0"] = {{"o0", "1/2"}, {"o1", "1/2"}};
  doc["rho"] = Json::array();
  doc["rho"].push_back(
      {{"history", {"o0"}}, {"action", "a0"}, {"dist", {{"o1", "1/1"}}}});
  doc["default_dist"] = {{"o0", "1/3"}, {"o1", "2/3"}};
  Json r = Json::object();
  int i = 0;
  for (std::size_t t = 0; t <= 2; ++t)
    for (const History& h : all_histories(iface, t)) {
      r[history_key(h, iface)] =
          format_rational(Rational(i % 7 - 3, 1 + i % 4));
      ++i;
    }
  doc["preference"] = {{"kind", "expected_reward"}, {"r", r}};
  return doc;
}

void expect_ptr(const Json& doc, const std::string& ptr) {
  try {
    parse_dpp(doc);
    FAIL_CHECK("expected a rejection at \"" << ptr << "\"");
  } catch (const ParseError& e) {
    CHECK(e.pointer == ptr);
  }
}

}  // namespace

TEST_CASE("rationals round trip with canonical keys") {
  CHECK(format_rational(rat(1, 2)) == "1/2");
  CHECK(format_rational(rat(3)) == "3/1");
  CHECK(format_rational(rat(-1, 2)) == "-1/2");
  CHECK(format_rational(rat(0)) == "0/1");

  CHECK(parse_rational("4/2", "x") == rat(2));
  CHECK(parse_rational("7", "x") == rat(7));
  CHECK(parse_rational("-3/6", "x") == rat(-1, 2));
  CHECK(parse_rational("1/-2", "x") == rat(-1, 2));

  CHECK(parse_rational("+1", "x") == rat(1));
  for (const char* bad : {"", "1/", "/2", "a", "1/2/3", "0x10", " 1", "1.5"})
    CHECK_THROWS_AS(parse_rational(bad, "x"), ParseError);
  try {
    parse_rational("1/0", "/here");
    FAIL("expected a rejection");
  } catch (const ParseError& e) {
    CHECK(e.pointer == "/here");
  }
}

TEST_CASE("a complete definition document parses") {
  Json doc = valid_doc();
  DppFile f = parse_dpp(doc);

  CHECK(f.iface.num_observations() == 2);
  CHECK(f.iface.num_actions() == 2);
  CHECK(f.iface.horizon() == 2);
  CHECK(f.iface.observation_name(1) == "o1");
  CHECK(f.iface.action_name(0) == "a0");

  CHECK(f.env.initial() ==
        Dist<ObsId>::make({{0, rat(1, 2)}, {1, rat(1, 2)}}));
  CHECK(f.env.transition(hist({0}), 0) == Dist<ObsId>::dirac(1));
  CHECK(f.env.transition(hist({1}), 0) ==
        Dist<ObsId>::make({{0, rat(1, 3)}, {1, rat(2, 3)}}));

  CHECK(f.preference_kind == "expected_reward");
  REQUIRE(f.relation.has_value());
  CHECK(!f.circ_relation.has_value());
  CHECK(!f.feature_map.has_value());
  CHECK(!f.gamma.has_value());

  // The parsed relation orders diracs by summed prefix rewards.
  std::map<History, Rational> expect;
  int i = 0;
  for (std::size_t t = 0; t <= 2; ++t)
    for (const History& h : all_histories(f.iface, t)) {
      expect.emplace(h, Rational(i % 7 - 3, 1 + i % 4));
      ++i;
    }
  Trajectory w1 = hist({0, 0, 1, 0, 0});
  Trajectory w2 = hist({1, 1, 0, 1, 1});
  CHECK(f.relation->compare(TrajDist::dirac(w1), TrajDist::dirac(w2)) ==
        compare_values(cumulative_utility(expect, w1),
                       cumulative_utility(expect, w2)));
}

TEST_CASE("risk and lexicographic preferences parse") {
  Json doc;
  doc["interface"] = {{"observations", {"o0"}}, {"actions", {"a0", "a1"}},
                      {"horizon", 2}};
  doc["rho0"] = {{"o0", "1/1"}};
  doc["default_dist"] = {{"o0", "1/1"}};
  doc["preference"] = {{"kind", "risk"},
                       {"u",
                        {{"o0|a0|o0|a0|o0", "1/1"},
                         {"o0|a0|o0|a1|o0", "2/1"},
                         {"o0|a1|o0|a0|o0", "3/1"},
                         {"o0|a1|o0|a1|o0", "4/1"}}},
                       {"beta", "-1/1"},
                       {"event", {"o0|a1|o0|a1|o0"}}};
  DppFile f = parse_dpp(doc);
  CHECK(f.preference_kind == "risk");
  REQUIRE(f.relation.has_value());
  Trajectory w00 = hist({0, 0, 0, 0, 0});
  Trajectory w01 = hist({0, 0, 0, 1, 0});
  Trajectory w11 = hist({0, 1, 0, 1, 0});
  CHECK(f.relation->compare(TrajDist::dirac(w11), TrajDist::dirac(w00)) ==
        CompareResult::Less);
  CHECK(f.relation->compare(TrajDist::dirac(w00), TrajDist::dirac(w01)) ==
        CompareResult::Less);

  doc["preference"] = {{"kind", "lexicographic"},
                       {"u1",
                        {{"o0|a0|o0|a0|o0", "1/1"},
                         {"o0|a0|o0|a1|o0", "1/1"},
                         {"o0|a1|o0|a0|o0", "2/1"},
                         {"o0|a1|o0|a1|o0", "0/1"}}},
                       {"u2",
                        {{"o0|a0|o0|a0|o0", "0/1"},
                         {"o0|a0|o0|a1|o0", "3/1"},
                         {"o0|a1|o0|a0|o0", "1/1"},
                         {"o0|a1|o0|a1|o0", "1/1"}}}};
  f = parse_dpp(doc);
  CHECK(f.preference_kind == "lexicographic");
  REQUIRE(f.relation.has_value());
  CHECK(f.relation->compare(TrajDist::dirac(w00), TrajDist::dirac(w01)) ==
        CompareResult::Less);
  CHECK(f.relation->compare(TrajDist::dirac(w01), TrajDist::dirac(w00)) ==
        CompareResult::Greater);
}

TEST_CASE("frequency embedded preferences parse") {
  Json doc;
  doc["interface"] = {{"observations", {"o0", "o1"}},
                      {"actions", {"a0", "a1"}},
                      {"horizon", 2}};
  doc["rho0"] = {{"o0", "1/2"}, {"o1", "1/2"}};
  doc["default_dist"] = {{"o0", "1/2"}, {"o1", "1/2"}};
  doc["feature_map"] = {{"kind", "k_window"}, {"k", 1}};
  doc["gamma"] = {"1/2", "1/2"};
  doc["preference"] = {{"kind", "frequency_embedded"},
                       {"r",
                        {{"o0|a0", "0/1"},
                         {"o0|a1", "1/1"},
                         {"o1|a0", "2/1"},
                         {"o1|a1", "3/1"}}}};
  DppFile f = parse_dpp(doc);
  CHECK(f.preference_kind == "frequency_embedded");
  REQUIRE(f.relation.has_value());
  REQUIRE(f.circ_relation.has_value());
  REQUIRE(f.feature_map.has_value());
  REQUIRE(f.gamma.has_value());
  CHECK(f.feature_map->kind == "k_window");
  CHECK(f.feature_map->num_features() == 2);
  CHECK(f.gamma->weights == std::vector<Rational>{rat(1, 2), rat(1, 2)});

  std::map<FAKey, Rational> values{{FAKey{0, 0}, rat(0)},
                                   {FAKey{0, 1}, rat(1)},
                                   {FAKey{1, 0}, rat(2)},
                                   {FAKey{1, 1}, rat(3)}};
  TrajRelation expect = embedded_relation(
      linear_value_relation<FAKey>("feature_reward", values), *f.feature_map,
      *f.gamma);
  Trajectory w1 = hist({0, 0, 1, 1, 0});
  Trajectory w2 = hist({1, 1, 0, 0, 1});
  TrajDist m = mix(rat(1, 3), TrajDist::dirac(w1), TrajDist::dirac(w2));
  CHECK(f.relation->compare(TrajDist::dirac(w1), TrajDist::dirac(w2)) ==
        expect.compare(TrajDist::dirac(w1), TrajDist::dirac(w2)));
  CHECK(f.relation->compare(m, TrajDist::dirac(w1)) ==
        expect.compare(m, TrajDist::dirac(w1)));

  Json broken = doc;
  broken["preference"]["r"].erase("o1|a1");
  expect_ptr(broken, "/preference/r");
}

TEST_CASE("table feature maps parse") {
  Json doc;
  doc["interface"] = {{"observations", {"o0"}}, {"actions", {"a0", "a1"}},
                      {"horizon", 2}};
  doc["rho0"] = {{"o0", "1/1"}};
  doc["default_dist"] = {{"o0", "1/1"}};
  Interface iface({"o0"}, {"a0", "a1"}, 2);
  Json map = Json::object();
  for (std::size_t t = 0; t <= 2; ++t)
    for (const History& h : all_histories(iface, t))
      map[history_key(h, iface)] = "s";
  doc["feature_map"] = {{"kind", "table"}, {"map", map}};
  DppFile f = parse_dpp(doc);
  REQUIRE(f.feature_map.has_value());
  CHECK(f.feature_map->kind == "table");
  CHECK(f.feature_map->num_features() == 1);
  CHECK(f.feature_map->at(hist({0, 1, 0})) == 0);

  Json broken = doc;
  broken["feature_map"]["map"].erase("o0|a1|o0");
  expect_ptr(broken, "/feature_map/map");
}

TEST_CASE("malformed documents carry pointers") {
  expect_ptr(Json::array(), "");

  Json doc = valid_doc();
  doc["extra"] = 1;
  expect_ptr(doc, "/extra");

  doc = valid_doc();
  doc.erase("interface");
  expect_ptr(doc, "/interface");

  doc = valid_doc();
  doc["interface"]["observations"] = {"o0", "o0"};
  expect_ptr(doc, "/interface/observations/1");

  doc = valid_doc();
  doc["interface"]["actions"] = {"a|0", "a1"};
  expect_ptr(doc, "/interface/actions/0");

  doc = valid_doc();
  doc["interface"]["horizon"] = 0;
  expect_ptr(doc, "/interface/horizon");

  doc = valid_doc();
  doc["rho0"] = {{"o0", "2/3"}, {"o1", "2/3"}};
  expect_ptr(doc, "/rho0");

  doc = valid_doc();
  doc["rho"][0]["history"] = {"o0", "a0"};
  expect_ptr(doc, "/rho/0/history");

  doc = valid_doc();
  doc["rho"][0]["action"] = "a9";
  expect_ptr(doc, "/rho/0/action");

  doc = valid_doc();
  doc["rho"].push_back(doc["rho"][0]);
  expect_ptr(doc, "/rho/1");

  doc = valid_doc();
  doc["preference"]["kind"] = "mystery";
  expect_ptr(doc, "/preference/kind");

  doc = valid_doc();
  doc["preference"]["r"].erase("o0|a0|o0");
  expect_ptr(doc, "/preference/r");

  doc = valid_doc();
  doc["feature_map"] = {{"kind", "k_window"}, {"k", 1}};
  doc["preference"] = {{"kind", "frequency_embedded"}, {"r", Json::object()}};
  expect_ptr(doc, "/preference");

  doc = valid_doc();
  doc["gamma"] = {"1/1"};
  expect_ptr(doc, "/gamma");

  doc = valid_doc();
  doc["gamma"] = {"0/1", "0/1"};
  expect_ptr(doc, "/gamma");

  doc = valid_doc();
  doc["feature_map"] = {{"kind", "k_window"}, {"k", 5}};
  expect_ptr(doc, "/feature_map/k");
}

TEST_CASE("definition files load from disk") {
  const std::string path = "tmp_json_io_test.json";
  {
    std::ofstream out(path);
    out << valid_doc().dump(2) << "\n";
  }
  DppFile f = load_dpp(path);
  CHECK(f.iface.horizon() == 2);
  CHECK(f.preference_kind == "expected_reward");
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_dpp("does_not_exist.json"), ParseError);

  {
    std::ofstream out(path);
    out << "{nope";
  }
  CHECK_THROWS_AS(load_dpp(path), ParseError);
  std::remove(path.c_str());
}

TEST_CASE("feature action keys round trip") {
  Interface iface({"o0", "o1"}, {"a0", "a1"}, 2);
  FeatureMap phi = k_window_feature(1, iface);
  FAKey key = parse_fa_key("o1|a0", phi, iface, "x");
  CHECK(key.feature == 1);
  CHECK(key.action == 0);
  CHECK(fa_key(key, phi, iface) == "o1|a0");
  CHECK_THROWS_AS(parse_fa_key("o9|a0", phi, iface, "x"), ParseError);
  CHECK_THROWS_AS(parse_fa_key("o1|a9", phi, iface, "x"), ParseError);
  CHECK_THROWS_AS(parse_fa_key("nodivider", phi, iface, "x"), ParseError);

  // Table feature names may contain pipes; the action is the final segment.
  std::map<History, std::string> names;
  for (std::size_t t = 0; t <= 2; ++t)
    for (const History& h : all_histories(iface, t))
      names.emplace(h, h.length() == 0 ? "x|y" : "z");
  FeatureMap table = table_feature(iface, names);
  FAKey piped = parse_fa_key("x|y|a1", table, iface, "x");
  CHECK(table.features.at(piped.feature) == "x|y");
  CHECK(piped.action == 1);
  CHECK(fa_key(piped, table, iface) == "x|y|a1");
}
