#include <doctest.h>

#include <random>

#include "conjint/coset_geometry.hpp"
#include "conjint/errors.hpp"
#include "conjint/oracle.hpp"
#include "reference_fold.hpp"
#include "support.hpp"

using namespace conjint;
using testing::S;
using testing::W;

TEST_CASE("membership with certificates") {
  auto G = testing::free_group(2);
  auto H = testing::subgroup(G, {"a^2", "b"}, 1);
  auto in = membership(H, W(*G, "a a b"));
  REQUIRE(in.in());
  CHECK(in.witness == std::vector<Factor>{{0, false}, {1, false}});
  CHECK(H.expand(in.witness) == W(*G, "a a b"));
  CHECK(membership(H, W(*G, "a")).verdict == Verdict::out);

  auto G6 = testing::g6();
  auto H1 = testing::subgroup(G6, {"x1", "x2"}, 0);
  CHECK(membership(H1, W(*G6, "t")).verdict == Verdict::out);
  auto cert = membership(H1, W(*G6, "x2 x1^-1 x2"));
  REQUIRE(cert.in());
  CHECK(G6->equal(H1.expand(cert.witness), W(*G6, "x2 x1^-1 x2")));
}

TEST_CASE("membership agrees with the reference folding") {
  auto         G = testing::free_group(2);
  std::mt19937 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> gens;
    std::vector<Word>        words;
    for (int k = 0; k < 2; ++k) {
      std::vector<Letter> raw(1 + rng() % 3);
      for (auto& x : raw) {
        x = static_cast<Letter>(rng() % 4);
      }
      Word w = reduce(raw);
      if (!w.empty()) {
        gens.push_back(S(*G, w));
        words.push_back(w);
      }
    }
    if (words.empty()) {
      continue;
    }
    auto H = testing::subgroup(G, gens, 0);
    auto ref = testing::RefGraph::from_generators(words);
    for (auto const& e : G->ball(4)) {
      CHECK(membership(H, e.representative).in() == ref.accepts(e.representative));
    }
  }
}

TEST_CASE("coset and double coset equality") {
  auto G = testing::g6();
  auto H1 = testing::subgroup(G, {"x1", "x2"}, 0);
  CHECK(coset_equal(H1, W(*G, "x1 t"), W(*G, "t")).value);
  CHECK_FALSE(coset_equal(H1, W(*G, "t"), W(*G, "t t")).value);
  CHECK(coset_equal(H1, W(*G, "t x3"), W(*G, "t x3")).value);
  CHECK(double_coset_equal(H1, W(*G, "x3 t^3"), W(*G, "t^3"), 4).value);
  CHECK_FALSE(double_coset_equal(H1, W(*G, "t"), W(*G, "t^3"), 4).value);
  CHECK(double_coset_equal(H1, W(*G, "t"), W(*G, "t"), 0).value);
  CHECK(canonical_coset_rep(H1, W(*G, "x1 x2 t")) == W(*G, "t"));
}

TEST_CASE("coset neighbourhoods") {
  auto G = testing::free_group(2);
  auto A = testing::subgroup(G, {"a"}, 0);
  CHECK(build_neighborhood(A, 0).vertex_count() == 1);
  auto N = build_neighborhood(A, 1);
  CHECK(N.vertex_count() == 3);
  CHECK(S(*G, N.representatives) == std::vector<std::string>{"", "b", "b^-1"});
  CHECK(N.target(0, make_letter(0, false)) == 0);
  // every edge joins the right cosets
  auto G6 = testing::g6();
  auto H1 = testing::subgroup(G6, {"x1", "x2"}, 0);
  auto N6 = build_neighborhood(H1, 2);
  for (std::size_t v = 0; v < N6.vertex_count(); ++v) {
    for (Letter x = 0; x < G6->alphabet().letter_count(); ++x) {
      auto u = N6.target(v, x);
      if (u >= 0) {
        CHECK(coset_equal(H1, N6.representatives[v] * Word{x}, N6.representatives[u]).value);
      }
    }
  }
}

TEST_CASE("geodesic cores") {
  auto G = testing::free_group(2);
  auto A = testing::subgroup(G, {"a"}, 0);
  auto core_a = geodesic_core(A);
  CHECK(core_a.state_count() == 1);
  CHECK(core_a.transitions[0][make_letter(0, false)] == 0);
  CHECK(core_a.transitions[0][make_letter(0, true)] == 0);
  CHECK(core_a.transitions[0][make_letter(1, false)] < 0);
  auto core = geodesic_core(testing::subgroup(G, {"a^2", "b"}, 1));
  CHECK(core.state_count() == 2);
  CHECK(core.accepts(W(*G, "a^2 b")));
  CHECK_FALSE(core.accepts(W(*G, "a b")));

  auto G6 = testing::g6();
  auto core6 = geodesic_core(testing::subgroup(G6, {"x1", "x2"}, 0));
  CHECK(core6.state_count() == 1);
  CHECK(core6.accepts(W(*G6, "x1 x2^-1 x1")));
  CHECK_FALSE(core6.accepts(W(*G6, "x3")));
}

TEST_CASE("quasiconvexity check") {
  auto G = testing::free_group(2);
  CHECK(check_quasiconvexity(testing::subgroup(G, {"a"}, 0)).value);
  CHECK(check_quasiconvexity(testing::subgroup(G, {"a^2", "b"}, 1)).value);
  CHECK_FALSE(check_quasiconvexity(testing::subgroup(G, {"a^2", "b"}, 0)).value);
  auto G6 = testing::g6();
  CHECK(check_quasiconvexity(testing::subgroup(G6, {"x1", "x2"}, 0)).value);
}

TEST_CASE("loop labels at Hg") {
  auto G = testing::g6();
  auto H1 = testing::subgroup(G, {"x1", "x2"}, 0);
  CHECK(loop_label_conjugation_test(H1, W(*G, "t"), W(*G, "x2")).value);
  CHECK_FALSE(loop_label_conjugation_test(H1, W(*G, "t^2"), W(*G, "x1")).value);
  CHECK(loop_label_conjugation_test(H1, Word{}, W(*G, "x1 x2")).value
        == membership(H1, W(*G, "x1 x2")).in());
  CHECK_FALSE(loop_label_conjugation_test(H1, Word{}, W(*G, "x3")).value);
}

TEST_CASE("subgroup elements match the enumeration oracle") {
  auto G = testing::g6();
  auto H1 = testing::subgroup(G, {"x1", "x2"}, 0);
  auto fast = subgroup_elements(H1, 3);
  CHECK(fast.complete);
  auto slow = oracle_subgroup_ball(H1, 3, 6);
  CHECK(slow.stable);
  CHECK(fast.elements == slow.words(*G));
}

TEST_CASE("generic strategy on a subgroup containing torsion") {
  // <t^2, x1> = <x1, x3> x| <t^2>
  auto G = testing::g6();
  auto T = testing::subgroup(G, {"t^2", "x1"}, 1);
  CHECK_FALSE(T.exact());
  auto in = membership(T, W(*G, "t^2 x1 t^-2"));
  REQUIRE(in.in());
  CHECK(G->equal(T.expand(in.witness), W(*G, "x3")));
  CHECK(membership(T, W(*G, "x3 x1^-1 t^2")).in());
  CHECK_FALSE(membership(T, W(*G, "x2")).in());
  CHECK_FALSE(membership(T, W(*G, "t")).in());
}
