// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "conjint/errors.hpp"
#include "conjint/intersections.hpp"
#include "conjint/invariants.hpp"
#include "conjint/oracle.hpp"
#include "conjint/subgroup_graph.hpp"
#include "reference_fold.hpp"
#include "support.hpp"

using namespace conjint;
using testing::S;
using testing::W;

namespace {

  // Wall-clock limits in seconds.
  constexpr double limit_example_1 = 600;
  constexpr double limit_example_2 = 1800;
  constexpr double limit_intersections = 300;
  constexpr double limit_bound_suite = 900;
  constexpr double limit_splitting = 300;
  constexpr double limit_oracle = 900;

  constexpr int bound_fixtures = 60;      // at least 50
  constexpr int split_loops = 25;
  constexpr int oracle_random_cases = 200;
  constexpr unsigned seed = 20240601;

  struct Outcome {
    bool        pass = true;
    std::string detail;
  };

  class Log {
   public:
    void fail(std::string const& what) {
      if (failures_ < 5) {
        std::cerr << "    " << what << "\n";
      }
      ++failures_;
    }
    std::size_t failures() const {
      return failures_;
    }

   private:
    std::size_t failures_ = 0;
  };

  using Clock = std::chrono::steady_clock;

  double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }

  Word random_word(std::mt19937& rng, std::size_t rank, std::size_t min_len, std::size_t max_len) {
    for (;;) {
      std::size_t         len = min_len + rng() % (max_len - min_len + 1);
      std::vector<Letter> raw(len);
      for (auto& x : raw) {
        x = static_cast<Letter>(rng() % (2 * rank));
      }
      Word w = reduce(raw);
      if (w.size() >= min_len) {
        return w;
      }
    }
  }

  // Smallest K <= 12 for which the quasiconvexity check passes.
  long minimal_K(std::shared_ptr<Group const> const& G, std::vector<Word> const& gens) {
    for (long K = 0; K <= 12; ++K) {
      if (check_quasiconvexity(SubgroupHandle(G, gens, K)).value) {
        return K;
      }
    }
    return -1;
  }

  // Nielsen reduced: for symbols u, v, w in X^{+-1} with u != v^-1 and
  // v != w^-1, |uv| >= max(|u|, |v|) and |uvw| > |u| - |v| + |w|. Every
  // element of length n is then a product of at most n generators.
  bool nielsen_reduced(std::vector<Word> const& gens) {
    struct Sym {
      std::size_t index;
      bool        inverse;
      Word        word;
    };
    std::vector<Sym> syms;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i].empty()) {
        return false;
      }
      syms.push_back({i, false, gens[i]});
      syms.push_back({i, true, gens[i].inverse()});
    }
    auto cancels = [](Sym const& a, Sym const& b) {
      return a.index == b.index && a.inverse != b.inverse;
    };
    for (auto const& u : syms) {
      for (auto const& v : syms) {
        if (cancels(u, v)) {
          continue;
        }
        Word uv = u.word * v.word;
        if (uv.size() < std::max(u.word.size(), v.word.size())) {
          return false;
        }
        for (auto const& w : syms) {
          if (!cancels(v, w) && (uv * w.word).size() + v.word.size() <= u.word.size() + w.word.size()) {
            return false;
          }
        }
      }
    }
    return true;
  }

  struct RandomSubgroup {
    std::shared_ptr<Group const> G;
    std::vector<Word>            gens;
    long                         K = 0;
    SubgroupHandle               handle() const {
      return SubgroupHandle(G, gens, K);
    }
  };

  // Nonempty list of words of length <= 3 outside H, or empty when none
  // turned up (H is then of small index and not used).
  std::vector<Word> conjugators_outside(std::mt19937& rng, SubgroupHandle const& H, std::size_t count) {
    std::size_t const rank = H.group().alphabet().rank();
    std::vector<Word> out;
    for (int attempt = 0; attempt < 400 && out.size() < count; ++attempt) {
      Word g = random_word(rng, rank, 1, 3);
      if (!membership(H, g).in()) {
        out.push_back(g);
      }
    }
    return out.size() == count ? out : std::vector<Word>{};
  }

  RandomSubgroup random_subgroup(std::mt19937& rng,
                                 std::size_t   rank,
                                 std::size_t   max_gens,
                                 std::size_t   max_len,
                                 bool          nielsen = false) {
    auto G = testing::free_group(rank);
    for (;;) {
      RandomSubgroup r{G, {}, 0};
      std::size_t    count = 1 + rng() % max_gens;
      for (std::size_t i = 0; i < count; ++i) {
        r.gens.push_back(random_word(rng, rank, 1, max_len));
      }
      if (nielsen && !nielsen_reduced(r.gens)) {
        continue;
      }
      r.K = minimal_K(G, r.gens);
      if (r.K >= 0) {
        return r;
      }
    }
  }

  std::size_t max_state_length(CoreAutomaton const& core) {
    std::size_t m = 0;
    for (auto const& s : core.states) {
      m = std::max(m, s.size());
    }
    return m;
  }

  std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
  }

  // --- 1, 2: the semidirect examples ------------------------------------

  Outcome semidirect_example(std::vector<std::string> const& gens,
                             std::size_t                     want_weak,
                             std::size_t                     want_width,
                             std::size_t                     want_height,
                             double                          limit) {
    auto start = Clock::now();
    Outcome out;
    std::ostringstream detail;
    for (long delta : {1L, 3L}) {
      auto G = testing::g6(delta);
      auto H = testing::subgroup(G, gens, 0);
      auto ww = weak_width(H);
      auto w = width(H, Mode::exact_search);
      auto h = height(H, Mode::exact_search);
      bool ok = ww.weak_width == want_weak && w.width == want_width && h.height == want_height
                && !ww.bounded && !w.bounded && !h.bounded;
      out.pass = out.pass && ok;
      detail << "delta=" << delta << ": weak_width=" << ww.weak_width
             << " width=" << w.width.value_or(0) << " height=" << h.height.value_or(0) << "; ";
    }
    double t = seconds_since(start);
    out.pass = out.pass && t <= limit;
    detail << fmt(t) << " s";
    out.detail = detail.str();
    return out;
  }

  // --- 3: intersection table ---------------------------------------------

  Outcome intersection_table() {
    auto start = Clock::now();
    auto G = testing::g6();
    struct Row {
      std::vector<std::string> h;
      std::string              g;
      std::vector<std::string> expected;
    };
    std::vector<Row> rows{
        {{"x1", "x2"}, "t", {"x2"}},
        {{"x1", "x2"}, "t^-1", {"x1"}},
        {{"x1", "x2"}, "t^2", {}},
        {{"x2", "x3"}, "t^2", {}},
    };
    Log  log;
    for (auto const& row : rows) {
      auto H = testing::subgroup(G, row.h, 0);
      Word g = W(*G, row.g);
      std::vector<Word> expected;
      for (auto const& s : row.expected) {
        expected.push_back(W(*G, s));
      }
      auto want = SubgroupGraph::from_generators(expected, G->alphabet().letter_count());

      auto report = conjugate_intersection_generators(H, g);
      auto got = SubgroupGraph::from_generators(report.generating_set, G->alphabet().letter_count());
      if (!got.same_subgroup(want) || report.bounded) {
        log.fail("generating set mismatch for g = " + row.g);
      }
      if (report.finiteness.infinite() != !expected.empty()) {
        log.fail("finiteness mismatch for g = " + row.g);
      }

      std::size_t const radius = 4;
      std::size_t const depth = radius + 2 * G->geodesic_length(g) + 2;
      auto              oracle = oracle_intersection(H, g, radius, depth);
      auto              truth = oracle_subgroup_ball(SubgroupHandle(G, expected, 0), radius, radius + 2);
      if (!oracle.stable || !truth.stable || oracle.elements != truth.words(*G)) {
        log.fail("oracle intersection mismatch for g = " + row.g);
      }
    }
    double  t = seconds_since(start);
    Outcome out;
    out.pass = log.failures() == 0 && t <= limit_intersections;
    out.detail = std::to_string(rows.size()) + " intersections, "
                 + std::to_string(log.failures()) + " mismatches; " + fmt(t) + " s";
    return out;
  }

  // --- 4: bounds -----------------------------------------------------------

  Outcome bound_suite() {
    auto         start = Clock::now();
    std::mt19937 rng(seed);
    Log          log;
    std::size_t  applicable_a = 0;
    for (int f = 0; f < bound_fixtures; ++f) {
      std::size_t rank = 2 + f % 2;
      auto        A = random_subgroup(rng, rank, rank == 2 ? 3 : 2, 4);
      auto        H = A.handle();
      auto const& G = *A.G;
      auto        outside = conjugators_outside(rng, H, 1);
      if (outside.empty()) {
        --f;
        continue;
      }
      Word const g = outside.front();
      long const tw = G.delta().twice();

      // (a) small intersections for g shortest in a long double coset
      Word d = canonical_double_coset_rep(H, g);
      if (2 * static_cast<long>(d.size()) > 4 * A.K + 2 * tw) {
        ++applicable_a;
        std::size_t const bound_twice = 4 * A.K + 8 * tw + 4;  // 2(2K + 8 delta + 2)
        auto elems = intersection_elements(H, d, bound_twice / 2 + 4);
        for (auto const& e : elems.elements) {
          if (2 * e.size() >= bound_twice) {
            log.fail("long intersection element in fixture " + std::to_string(f));
          }
        }
      }

      // (b) the conjugate's core lies in N_{K_g}(H^g . 1)
      auto conj = conjugate_handle(H, g);
      if (conj.K() != A.K + tw + 2 * static_cast<long>(G.geodesic_length(g))) {
        log.fail("K_g formula mismatch in fixture " + std::to_string(f));
      }
      auto core = geodesic_core(conj);
      if (core.bounded || static_cast<long>(max_state_length(core)) > conj.K()) {
        log.fail("conjugate core escapes N_{K_g} in fixture " + std::to_string(f));
      }

      // (c) the intersection core lies in N_{K0}
      auto B = random_subgroup(rng, rank, 2, 4);
      B.G = A.G;
      auto k = intersection_quasiconvexity_constant(H, B.handle());
      auto inter = fiber_product_intersection(H, B.handle());
      if (k.bounded || k.K0 != k.M_A * k.M_B) {
        log.fail("K0 is not M_A * M_B in fixture " + std::to_string(f));
      }
      if (!inter.generating_set.empty()) {
        auto icore = geodesic_core(SubgroupHandle(A.G, inter.generating_set, static_cast<long>(k.K0)));
        if (icore.bounded || max_state_length(icore) > k.K0) {
          log.fail("intersection core escapes N_{K0} in fixture " + std::to_string(f));
        }
      }
    }
    double  t = seconds_since(start);
    Outcome out;
    out.pass = log.failures() == 0 && t <= limit_bound_suite;
    out.detail = std::to_string(bound_fixtures) + " fixtures (" + std::to_string(applicable_a)
                 + " with a long double coset), " + std::to_string(log.failures())
                 + " violations; " + fmt(t) + " s";
    return out;
  }

  // --- 5: splitting -------------------------------------------------------

  struct SplitFixture {
    std::shared_ptr<Group const> G;
    std::vector<std::string>     gens;
    long                         K;
    std::string                  g;
    int                          loops;
  };

  Outcome splitting_suite() {
    auto         start = Clock::now();
    std::mt19937 rng(seed + 1);
    auto         F2 = testing::free_group(2);
    auto         F3 = testing::free_group(3);
    std::vector<SplitFixture> fixtures{
        {F2, {"a^2", "b"}, 1, "a", 6},
        {F2, {"a^2"}, 1, "a", 4},
        {F2, {"a^3", "b"}, 1, "a", 5},
        {F2, {"a^2", "b a b^-1"}, 1, "a", 4},
        {F3, {"a^2", "b", "c"}, 1, "a", 4},
        {testing::g6(), {"x1", "x2"}, 0, "t", 2},
    };
    Log         log;
    std::size_t done = 0;
    for (auto const& fx : fixtures) {
      auto              H = testing::subgroup(fx.G, fx.gens, fx.K);
      Group const&      G = *fx.G;
      Word const        g = W(G, fx.g);
      std::size_t const M
          = build_neighborhood(H, G.delta().twice() + fx.K + G.geodesic_length(g)).vertex_count();
      // words w in H with g w g^-1 in H
      auto loop_gens = conjugate_intersection_generators(H, g).generating_set;
      if (loop_gens.empty()) {
        log.fail("no loops for fixture " + fx.g);
        continue;
      }
      for (int n = 0; n < fx.loops; ++n) {
        std::size_t const target = M * M + static_cast<std::size_t>(n);
        Word              w;
        while (w.size() <= target || G.geodesic_length(w) <= target) {
          Word s = loop_gens[rng() % loop_gens.size()];
          w *= rng() % 4 == 0 ? s.inverse() : s;
          if (w.size() > 4 * target + 64) {
            w = Word{};
          }
        }
        ++done;
        try {
          auto r = split_long_loop(H, g, w);
          auto holds = [&](Word const& x) {
            return membership(H, x).in() && membership(H, g * x * g.inverse()).in();
          };
          bool ok = G.equal(r.h1 * r.h2, w) && holds(r.h1) && holds(r.h2)
                    && G.geodesic_length(r.h1) < 2 * M * M + 1
                    && G.geodesic_length(r.h2) < G.geodesic_length(w) && r.i < r.j
                    && r.j <= M * M + 1;
          if (ok && G.backend() == Backend::free) {
            // independent membership through the reference folding
            auto ref = testing::RefGraph::from_generators(H.generators());
            ok = ref.accepts(r.h1) && ref.accepts(r.h2)
                 && ref.accepts(G.representative(G.evaluate(g * r.h1 * g.inverse())))
                 && ref.accepts(G.representative(G.evaluate(g * r.h2 * g.inverse())));
          }
          if (!ok) {
            log.fail("postcondition failure for g = " + fx.g);
          }
        } catch (Error const& e) {
          log.fail(std::string("split aborted: ") + e.what());
        }
      }
    }
    double  t = seconds_since(start);
    Outcome out;
    out.pass = done >= split_loops && log.failures() == 0 && t <= limit_splitting;
    out.detail = std::to_string(done) + " loops, " + std::to_string(log.failures())
                 + " failures; " + fmt(t) + " s";
    return out;
  }

  // --- 6: oracle equivalence ---------------------------------------------

  // Runs an oracle at increasing depth until two consecutive depths agree
  // or the expansion cap is hit; returns the last result.
  template <class Run>
  auto deepen(std::size_t first_depth, std::size_t last_depth, Run run) {
    decltype(run(first_depth)) result;
    for (std::size_t depth = first_depth; !result.stable && depth <= last_depth; ++depth) {
      try {
        result = run(depth);
      } catch (ResourceCapExceeded const&) {
        break;
      }
    }
    return result;
  }

  struct OracleCounts {
    std::size_t checks = 0;
    std::size_t disagreements = 0;
    std::size_t unstable = 0;
    std::size_t inconclusive = 0;  // enumeration found no nontrivial element
  };

  void compare_with_oracle(SubgroupHandle const&    H,
                           std::vector<Word> const& conjugators,
                           std::size_t              coset_radius,
                           std::size_t              dc_radius,
                           std::size_t              intersection_radius,
                           OracleCounts&            counts,
                           Log&                     log,
                           std::string const&       name) {
    Group const& G = H.group();
    auto         ball = G.ball(coset_radius);
    std::size_t const r = 2 * coset_radius;
    auto members = deepen(r + 1, 3 * r + 8, [&](std::size_t d) { return oracle_subgroup_ball(H, r, d); });
    counts.unstable += members.stable ? 0 : 1;

    // membership and cosets
    for (auto const& x : ball) {
      ++counts.checks;
      if (membership(H, x.representative).in() != members.contains(x.element)) {
        ++counts.disagreements;
        log.fail(name + ": membership of '" + S(G, x.representative) + "'");
      }
    }
    for (std::size_t i = 0; i < ball.size(); ++i) {
      for (std::size_t j = i + 1; j < ball.size(); j += 3) {
        ++counts.checks;
        bool fast = coset_equal(H, ball[i].representative, ball[j].representative).value;
        bool slow = members.contains(G.multiply(ball[i].element, G.inverse(ball[j].element)));
        if (fast != slow) {
          ++counts.disagreements;
          log.fail(name + ": coset equality");
        }
      }
    }

    // double cosets
    // the oracle's widest ball has radius 4r + 2K + 2
    std::size_t const dc_depth = 4 * dc_radius + 2 * static_cast<std::size_t>(H.K()) + 3;
    auto dc = deepen(dc_depth, 2 * dc_depth,
                     [&](std::size_t d) { return oracle_double_cosets(H, dc_radius, d); });
    counts.unstable += dc.stable ? 0 : 1;
    std::vector<std::pair<Word, std::size_t>> cls;
    for (std::size_t c = 0; c < dc.classes.size(); ++c) {
      for (auto const& w : dc.classes[c]) {
        cls.emplace_back(w, c);
      }
    }
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (std::size_t j = i + 1; j < cls.size(); ++j) {
        ++counts.checks;
        bool fast = double_coset_equal(H, cls[i].first, cls[j].first, 2 * dc_radius).value;
        if (fast != (cls[i].second == cls[j].second)) {
          ++counts.disagreements;
          log.fail(name + ": double coset of '" + S(G, cls[i].first) + "' and '"
                   + S(G, cls[j].first) + "'");
        }
      }
    }

    // Intersection finiteness. The kernel is torsion-free, so the
    // intersection is infinite iff it is nontrivial. Enumeration can only
    // prove nontriviality; when it finds nothing within its radius the
    // verdict is checked against the reference folding instead.
    auto reference = testing::RefGraph::from_generators(H.generators());
    for (auto const& g : conjugators) {
      ++counts.checks;
      bool              fast = is_intersection_infinite(H, g).infinite();
      std::size_t const len = G.geodesic_length(g);
      std::size_t const i_depth = intersection_radius + 2 * len + 1;
      auto slow = deepen(i_depth, 2 * i_depth, [&](std::size_t d) {
        return oracle_intersection(H, g, intersection_radius, d);
      });
      counts.unstable += slow.stable ? 0 : 1;
      bool agree = true;
      if (slow.elements.size() > 1) {
        agree = fast;
      } else {
        ++counts.inconclusive;
        std::vector<Word> conj;
        for (auto const& s : H.generators()) {
          conj.push_back(G.evaluate(g.inverse() * s * g).word);
        }
        auto product = testing::RefGraph::product(reference, testing::RefGraph::from_generators(conj));
        agree = fast == (product.rank() > 0);
      }
      if (!agree) {
        ++counts.disagreements;
        log.fail(name + ": intersection finiteness for g = '" + S(G, g) + "'");
      }
    }
  }

  Outcome oracle_suite() {
    auto         start = Clock::now();
    Log          log;
    OracleCounts counts;

    auto g6 = testing::g6();
    auto conj6 = std::vector<Word>{W(*g6, "t"), W(*g6, "t^-1"), W(*g6, "t^2"), W(*g6, "x3 t")};
    compare_with_oracle(make_subgroup(g6, load_subgroup_config(testing::fixture("h1.json"))),
                        conj6, 2, 1, 3, counts, log, "h1");
    compare_with_oracle(make_subgroup(g6, load_subgroup_config(testing::fixture("l1.json"))),
                        conj6, 2, 1, 3, counts, log, "l1");
    auto f2 = make_group(load_group_config(testing::fixture("f2.json")));
    for (auto const& name : {"f2_a", "f2_a2", "f2_ab", "f2_a2_b"}) {
      auto H = make_subgroup(f2, load_subgroup_config(testing::fixture(std::string(name) + ".json")));
      std::vector<Word> conj;
      for (auto const& s : {"a", "b", "a b", "b a^-1", "a^-1 b a"}) {
        if (!membership(H, W(*f2, s)).in()) {
          conj.push_back(W(*f2, s));
        }
      }
      compare_with_oracle(H, conj, 3, 1, 4, counts, log, name);
    }

    std::mt19937 rng(seed + 2);
    for (int c = 0; c < oracle_random_cases; ++c) {
      std::size_t rank = 2 + c % 2;
      auto        A = random_subgroup(rng, rank, 2, 3, true);
      auto        H = A.handle();
      auto        conj = conjugators_outside(rng, H, 2);
      if (conj.empty()) {
        --c;
        continue;
      }
      compare_with_oracle(H, conj, rank == 2 ? 2 : 1, 1, 4, counts, log,
                          "random case " + std::to_string(c));
    }

    double  t = seconds_since(start);
    Outcome out;
    out.pass = counts.disagreements == 0 && counts.unstable == 0 && t <= limit_oracle;
    out.detail = "6 fixtures + " + std::to_string(oracle_random_cases) + " random cases, "
                 + std::to_string(counts.checks) + " checks, "
                 + std::to_string(counts.disagreements) + " disagreements, "
                 + std::to_string(counts.unstable) + " unstable oracle runs, "
                 + std::to_string(counts.inconclusive)
                 + " finiteness checks settled by reference folding; " + fmt(t) + " s";
    return out;
  }

  // --- 7: inequalities ----------------------------------------------------

  Outcome inequality_suite() {
    auto start = Clock::now();
    Log  log;
    struct Fx {
      std::shared_ptr<Group const> G;
      std::string                  file;
    };
    auto g6 = testing::g6();
    auto f2 = make_group(load_group_config(testing::fixture("f2.json")));
    std::vector<Fx> fixtures{{g6, "h1.json"},   {g6, "l1.json"},    {f2, "f2_a.json"},
                             {f2, "f2_a2.json"}, {f2, "f2_ab.json"}, {f2, "f2_a2_b.json"}};
    for (auto const& fx : fixtures) {
      auto H = make_subgroup(fx.G, load_subgroup_config(testing::fixture(fx.file)));
      auto we = width(H, Mode::exact_search);
      auto wp = width(H, Mode::paper_greedy);
      auto he = height(H, Mode::exact_search);
      auto hp = height(H, Mode::paper_greedy);
      bool ok = *he.height <= *we.width && *hp.height <= *wp.width
                && we.L1.size() <= we.L.size() && we.L.size() == we.weak_width
                && *we.width == we.L_w.size() && *we.width >= we.L1.size()
                && *wp.width == wp.L_w.size() && *wp.width >= wp.L1.size()
                && *we.width >= *wp.width && *he.height >= *hp.height
                && (we.weak_width == 1) == almost_malnormal(H).value;
      if (!ok) {
        log.fail("inequality violated for " + fx.file);
      }
    }
    double  t = seconds_since(start);
    Outcome out;
    out.pass = log.failures() == 0;
    out.detail = std::to_string(fixtures.size()) + " fixtures, " + std::to_string(log.failures())
                 + " violations; " + fmt(t) + " s";
    return out;
  }

}  // namespace

int main() {
  struct Criterion {
    int                      id;
    std::string              name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {1, "H1 = <x1,x2>: weak width 3, width 2, height 2",
       [] { return semidirect_example({"x1", "x2"}, 3, 2, 2, limit_example_1); }},
      {2, "L1 = <x1,x2,x3>: weak width 4, width 4, height 3",
       [] { return semidirect_example({"x1", "x2", "x3"}, 4, 4, 3, limit_example_2); }},
      {3, "conjugate intersection table", intersection_table},
      {4, "small-intersection, K_g and K0 bounds", bound_suite},
      {5, "long loop splitting", splitting_suite},
      {6, "fast paths agree with the enumeration oracle", oracle_suite},
      {7, "invariant inequalities", inequality_suite},
  };
  int failed = 0;
  for (auto const& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (std::exception const& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " ("
              << o.detail << ")" << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
