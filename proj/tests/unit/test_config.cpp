#include <doctest.h>

#include "conjint/config.hpp"
#include "conjint/errors.hpp"
#include "conjint/intersections.hpp"
#include "conjint/invariants.hpp"
#include "conjint/report.hpp"
#include "support.hpp"

using namespace conjint;
using nlohmann::json;

TEST_CASE("group configuration") {
  auto d = load_group_config(testing::fixture("g6.json"));
  CHECK(d.backend == Backend::semidirect);
  CHECK(d.generators.size() == 5);
  CHECK(d.delta.twice() == 2);
  CHECK(load_group_config(testing::fixture("g6_delta3.json")).delta.twice() == 6);
  auto half = parse_group_config(json{{"backend", "free"}, {"generators", {"a", "b"}}, {"delta", "3/2"}});
  CHECK(half.delta.twice() == 3);
  auto defaulted = parse_group_config(json{{"backend", "semidirect"}, {"delta", 1},
                                           {"free_rank", 2},
                                           {"torsion_order", 2},
                                           {"automorphism", {2, 1}}});
  CHECK(defaulted.generators == std::vector<std::string>{"x1", "x2", "t"});
}

TEST_CASE("configuration errors name the key") {
  try {
    parse_group_config(json{{"backend", "free"}, {"generators", {"a"}}, {"delat", 1}});
    FAIL("accepted an unknown key");
  } catch (InvalidConfig const& e) {
    CHECK(std::string(e.what()).find("delat") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_group_config(json{{"backend", "free"}, {"generators", {"a"}}, {"torsion_order", 4}}),
                  InvalidConfig);
  CHECK_THROWS_AS(parse_group_config(json{{"backend", "hyperbolic"}}), InvalidConfig);
  CHECK_THROWS_AS(parse_subgroup_config(json{{"generators", {"a"}}}), InvalidConfig);
  CHECK_THROWS_AS(parse_subgroup_config(json{{"generators", {"a"}}, {"K", 0}, {"k", 1}}),
                  InvalidConfig);
  CHECK_THROWS_AS(parse_half_integer("x/2"), InvalidConfig);
}

TEST_CASE("subgroup configuration") {
  auto G = make_group(load_group_config(testing::fixture("g6.json")));
  auto H = make_subgroup(G, load_subgroup_config(testing::fixture("h1.json")));
  CHECK(H.generators().size() == 2);
  CHECK(H.K() == 0);
  CHECK_THROWS_AS(make_subgroup(G, SubgroupConfig{{"y7"}, 0}), MalformedWord);
}

TEST_CASE("json reports") {
  auto G = testing::g6();
  auto H1 = testing::subgroup(G, {"x1", "x2"}, 0);
  Json j = to_json(width(H1, Mode::exact_search), G->alphabet());
  CHECK(j["width"] == 2);
  CHECK(j["weak_width"] == 3);
  CHECK(j["L"] == json::array({"", "t", "t^-1"}));
  CHECK(j["mode"] == "exact");
  Json r = to_json(conjugate_intersection_generators(H1, testing::W(*G, "t")), G->alphabet());
  CHECK(r["generating_set"] == json::array({"x2"}));
  CHECK(to_json(HalfInteger::from_twice(3)) == "3/2");
  CHECK(to_json(HalfInteger::from_twice(4)) == 2);
}
