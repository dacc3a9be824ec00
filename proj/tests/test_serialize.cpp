#include <gtest/gtest.h>

#include "json.hpp"
#include "krbenes/errors.hpp"
#include "krbenes/generators.hpp"
#include "krbenes/serialize.hpp"

using namespace krbenes;
using nlohmann::json;

TEST(NetworkJson, RoundTripsEveryKind) {
  const std::vector<Network> nets{build_butterfly(8), build_inverse_butterfly(16), build_benes(32),
                                  build_band_exchange(16, 4), build_k_benes(32, 4), build_kr_benes(32)};
  for (const auto& net : nets) {
    const std::string text = network_to_json(net);
    EXPECT_EQ(network_from_json(text), net);
    EXPECT_EQ(network_to_json(network_from_json(text)), text);
  }
}

TEST(NetworkJson, Layout) {
  const json doc = json::parse(network_to_json(build_band_exchange(8, 2)));
  EXPECT_EQ(doc["kind"], "band-exchange");
  EXPECT_EQ(doc["k"], 2);
  EXPECT_EQ(doc["columns"][0]["role"], "band-exchange-even");
  EXPECT_EQ(doc["columns"][1]["switches"], json::parse("[[2,4],[3,5]]"));
  EXPECT_TRUE(doc["bypass_edges"].empty());
  EXPECT_FALSE(json::parse(network_to_json(build_kr_benes(8)))["bypass_edges"].empty());
}

TEST(NetworkJson, RejectsEditedDocuments) {
  json doc = json::parse(network_to_json(build_benes(8)));
  doc["columns"][1]["switches"][0] = json::array({0, 1});
  EXPECT_THROW(network_from_json(doc.dump()), StructuralError);
  EXPECT_THROW(network_from_json("{\"kind\": \"benes\"}"), StructuralError);
  EXPECT_THROW(network_from_json("not json"), ParseError);
  json bad = json::parse(network_to_json(build_benes(8)));
  bad["n"] = 6;
  EXPECT_THROW(network_from_json(bad.dump()), InvalidSize);
}

TEST(PlanJson, RoundTrip) {
  const Network kr = build_kr_benes(32);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Permutation p = gen_random_k_bounded(32, 1 + seed, seed);
    const RoutePlan plan = kr_benes_route(kr, p);
    const std::string text = plan_to_json(plan);
    const RoutePlan back = plan_from_json(text);
    EXPECT_EQ(back.network, plan.network);
    EXPECT_EQ(back.permutation, plan.permutation);
    EXPECT_EQ(back.k_used, plan.k_used);
    EXPECT_EQ(back.settings, plan.settings);
    EXPECT_EQ(back.bypass, plan.bypass);
    EXPECT_EQ(back.cost, plan.cost);
    EXPECT_TRUE(back.paths.empty());
    EXPECT_EQ(plan_to_json(back), text);
    EXPECT_EQ(plan_to_json(kr_benes_route(kr, p)), text);
  }
}

TEST(PlanJson, Layout) {
  const Network b = build_benes(4);
  const json doc = json::parse(plan_to_json(looping_route(b, Permutation::identity(4))));
  EXPECT_FALSE(doc.contains("k_used"));
  EXPECT_EQ(doc["network"]["kind"], "benes");
  EXPECT_EQ(doc["settings"].size(), 6u);
  EXPECT_EQ(doc["settings"][0], json::parse("[0,0,\"straight\"]"));
  EXPECT_EQ(doc["cost"]["terminal_visits"], 12);
}

TEST(PlanJson, RejectsForeignSwitches) {
  json doc = json::parse(plan_to_json(looping_route(build_benes(4), Permutation::identity(4))));
  doc["settings"].push_back(json::parse("[7,0,\"cross\"]"));
  EXPECT_THROW(plan_from_json(doc.dump()), StructuralError);
  doc = json::parse(plan_to_json(looping_route(build_benes(4), Permutation::identity(4))));
  doc["settings"][0][2] = "sideways";
  EXPECT_THROW(plan_from_json(doc.dump()), Error);
  doc = json::parse(plan_to_json(looping_route(build_benes(4), Permutation::identity(4))));
  doc["permutation"] = json::array({0, 0, 1, 2});
  EXPECT_THROW(plan_from_json(doc.dump()), StructuralError);
}

TEST(CountJson, LargeValuesAreStrings) {
  const json small = json::parse(count_report_to_json(count_report(4, 2, true)));
  EXPECT_EQ(small["formula_count"], 18);
  EXPECT_EQ(small["exhaustive_count"], 14);
  EXPECT_EQ(small["agrees"], false);
  const json big = json::parse(count_report_to_json(count_report(64, 16, false)));
  EXPECT_TRUE(big["formula_count"].is_string());
  EXPECT_EQ(big["formula_count"].get<std::string>(), count_k_bounded_formula(64, 16).str());
  EXPECT_TRUE(big["exhaustive_count"].is_null());
}

TEST(ReportJson, Fields) {
  const Network b = build_benes(4);
  const auto plan = looping_route(b, Permutation::identity(4));
  const json ok = json::parse(report_to_json(verify_plan(b, plan, Permutation::identity(4))));
  EXPECT_EQ(ok["ok"], true);
  EXPECT_TRUE(ok["violations"].empty());
  const json bad = json::parse(report_to_json(verify_plan(b, flip_switch(plan, 0, 0), Permutation::identity(4))));
  EXPECT_EQ(bad["ok"], false);
  EXPECT_FALSE(bad["violations"].empty());
  EXPECT_TRUE(bad["violations"][0].contains("switch"));
}
