#include "conjint/invariants.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "conjint/errors.hpp"

namespace conjint {

  std::string_view mode_name(Mode m) {
    return m == Mode::paper_greedy ? "paper" : "exact";
  }

  namespace {
    std::size_t two_delta(Group const& G) {
      return static_cast<std::size_t>(G.delta().twice());
    }

    std::size_t ucast(long v) {
      return v < 0 ? 0 : static_cast<std::size_t>(v);
    }

    // Finiteness of the intersection of f^-1 H f over a family of coset
    // representatives, memoised. Conjugating by f_0 turns it into
    // H ∩ (f_1 f_0^-1)^-1 H (f_1 f_0^-1) ∩ ...
    class FamilyOracle {
     public:
      FamilyOracle(SubgroupHandle const& h, SearchBudget const& budget)
          : h_(h), budget_(budget) {}

      FinitenessVerdict verdict(std::vector<Word> family) {
        std::sort(family.begin(), family.end());
        if (auto it = memo_.find(family); it != memo_.end()) {
          return it->second;
        }
        std::vector<Word> conj;
        for (std::size_t k = 1; k < family.size(); ++k) {
          conj.push_back(family[k] * family[0].inverse());
        }
        auto v = multi_intersection_infinite(h_, conj, budget_);
        bounded_ = bounded_ || v.bounded();
        memo_.emplace(std::move(family), v);
        return v;
      }

      bool infinite(std::vector<Word> family) {
        return verdict(std::move(family)).infinite();
      }

      bool bounded() const noexcept {
        return bounded_;
      }

      std::vector<FamilyCertificate> certificates() const {
        std::vector<FamilyCertificate> out;
        for (auto const& [family, v] : memo_) {
          out.push_back({family, v});
        }
        return out;
      }

     private:
      SubgroupHandle const&                        h_;
      SearchBudget const&                          budget_;
      std::map<std::vector<Word>, FinitenessVerdict> memo_;
      bool                                         bounded_ = false;
    };

    // Canonical coset representatives of ball(radius), shortlex-sorted.
    std::vector<Word> coset_reps_in_ball(SubgroupHandle const& h,
                                         std::size_t           radius,
                                         SearchBudget const&   budget,
                                         std::size_t*          ball_size = nullptr) {
      auto          ball = h.group().ball(radius, budget.max_elements);
      std::set<Word> reps;
      for (auto const& entry : ball) {
        reps.insert(canonical_coset_rep(h, entry.representative, budget));
      }
      if (ball_size != nullptr) {
        *ball_size = ball.size();
      }
      return {reps.begin(), reps.end()};
    }

    // Keeps the first word of every double coset; returns whether any
    // comparison was bounded.
    bool distinct_double_cosets(SubgroupHandle const&    h,
                                std::vector<Word> const& words,
                                std::size_t              bound,
                                SearchBudget const&      budget,
                                std::vector<Word>&       kept) {
      bool bounded = false;
      if (h.exact()) {
        std::set<Word> seen;
        for (auto const& g : words) {
          if (seen.insert(canonical_double_coset_rep(h, g)).second) {
            kept.push_back(g);
          }
        }
        return false;
      }
      for (auto const& g : words) {
        bool fresh = true;
        for (auto const& k : kept) {
          auto d = double_coset_equal(h, g, k, bound, budget);
          bounded = bounded || d.bounded;
          if (d.value) {
            fresh = false;
            break;
          }
        }
        if (fresh) {
          kept.push_back(g);
        }
      }
      return bounded;
    }

    bool finite_subgroup(SubgroupHandle const& h, SearchBudget const& budget) {
      if (h.trivial()) {
        return true;
      }
      if (h.exact()) {
        return h.graph().rank() == 0;
      }
      return !subgroup_finiteness(h.group(), h.generators(), budget).infinite();
    }

    InvariantReport weak_width_impl(SubgroupHandle const& h,
                                    SearchBudget const&   budget,
                                    FamilyOracle&         oracle) {
      InvariantReport report;
      Group const&    G = h.group();
      report.ball_radius = 2 * ucast(h.K()) + two_delta(G);
      if (finite_subgroup(h, budget)) {
        report.finite_subgroup = true;
        report.weak_width = 0;
        return report;
      }
      auto qc = check_quasiconvexity(h, budget);
      if (!qc.value) {
        throw PreconditionError("H is not " + std::to_string(h.K())
                                + "-quasiconvex by the core check");
      }
      report.bounded = qc.bounded;

      auto cosets = coset_reps_in_ball(h, report.ball_radius, budget, &report.ball_size);
      report.bounded = distinct_double_cosets(h, cosets, 2 * report.ball_radius, budget,
                                              report.double_cosets)
                       || report.bounded;
      report.L.push_back(Word{});
      for (auto const& g : report.double_cosets) {
        if (g.empty()) {
          continue;
        }
        auto m = membership(h, g, budget);
        if (m.in()) {
          continue;
        }
        report.bounded = report.bounded || m.bounded();
        if (oracle.infinite({Word{}, g})) {
          report.L.push_back(g);
        }
      }
      report.weak_width = report.L.size();
      return report;
    }

    CandidateSet candidate_set_impl(SubgroupHandle const& h,
                                    Word const&           g_i,
                                    SearchBudget const&   budget,
                                    FamilyOracle&         oracle,
                                    bool&                 bounded) {
      Group const& G = h.group();
      auto         in_h = membership(h, g_i, budget);
      if (in_h.in()) {
        throw PreconditionError("candidate set: g_i = '" + format_word(g_i, G.alphabet())
                                + "' lies in H");
      }
      CandidateSet out;
      out.g_i = g_i;
      out.full_radius
          = G.geodesic_length(g_i) + 8 * ucast(h.K()) + 12 * two_delta(G);
      out.radius = std::min(out.full_radius, budget.candidate_radius);
      out.truncated = out.radius < out.full_radius;
      Word const gi_rep = canonical_coset_rep(h, g_i, budget);
      for (auto const& g : coset_reps_in_ball(h, out.radius, budget)) {
        if (g == gi_rep) {
          continue;
        }
        auto same = coset_equal(h, g, g_i, budget);
        bounded = bounded || same.bounded;
        if (same.value) {
          continue;
        }
        auto dc = double_coset_equal(h, g, g_i, 2 * out.radius, budget);
        bounded = bounded || dc.bounded;
        if (!dc.value) {
          continue;
        }
        if (oracle.infinite({g, g_i})) {
          out.candidates.push_back(g);
        }
      }
      return out;
    }

    struct WidthState {
      InvariantReport                report;
      std::vector<std::vector<char>> adjacent;  // over report.universe
    };

    WidthState width_impl(SubgroupHandle const& h,
                          Mode                  mode,
                          SearchBudget const&   budget,
                          FamilyOracle&         oracle) {
      WidthState state;
      auto&      report = state.report;
      report = weak_width_impl(h, budget, oracle);
      report.mode = mode;
      if (report.finite_subgroup) {
        report.width = 0;
        return state;
      }

      for (auto const& g : report.L) {
        bool keep = true;
        for (auto const& k : report.L1) {
          if (!oracle.infinite({k, g})) {
            keep = false;
            break;
          }
        }
        if (keep) {
          report.L1.push_back(g);
        }
      }

      bool                   bounded = false;
      std::vector<Word> const& sources = mode == Mode::paper_greedy ? report.L1 : report.L;
      for (auto const& g : sources) {
        if (g.empty()) {
          continue;
        }
        report.A.push_back(candidate_set_impl(h, g, budget, oracle, bounded));
        report.candidate_radius_truncated
            = report.candidate_radius_truncated || report.A.back().truncated;
      }
      std::set<Word> added;
      for (auto const& a : report.A) {
        added.insert(a.candidates.begin(), a.candidates.end());
      }

      if (mode == Mode::paper_greedy) {
        report.L_w = report.L1;
        for (auto const& a : added) {
          if (std::find(report.L_w.begin(), report.L_w.end(), a) != report.L_w.end()) {
            continue;
          }
          bool all = true;
          for (auto const& g : report.L1) {
            all = all && oracle.infinite({g, a});
          }
          if (all) {
            report.L_w.push_back(a);
          }
        }
      } else {
        std::set<Word> universe(report.L.begin(), report.L.end());
        universe.insert(added.begin(), added.end());
        universe.insert(Word{});
        report.universe.assign(universe.begin(), universe.end());
        std::size_t const n = report.universe.size();
        state.adjacent.assign(n, std::vector<char>(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = i + 1; j < n; ++j) {
            char e = oracle.infinite({report.universe[i], report.universe[j]}) ? 1 : 0;
            state.adjacent[i][j] = state.adjacent[j][i] = e;
          }
        }
        // largest clique through the identity (index 0); the first one met
        // in index order wins ties
        std::vector<std::size_t> best{0};
        std::vector<std::size_t> current{0};
        std::function<void(std::size_t)> extend = [&](std::size_t from) {
          if (current.size() > best.size()) {
            best = current;
          }
          for (std::size_t v = from; v < n; ++v) {
            if (current.size() + (n - v) <= best.size()) {
              return;
            }
            bool ok = true;
            for (auto u : current) {
              ok = ok && state.adjacent[u][v] != 0;
            }
            if (ok) {
              current.push_back(v);
              extend(v + 1);
              current.pop_back();
            }
          }
        };
        extend(1);
        for (auto v : best) {
          report.L_w.push_back(report.universe[v]);
        }
      }
      report.width = report.L_w.size();
      report.bounded = report.bounded || bounded || oracle.bounded();
      return state;
    }
  }  // namespace

  InvariantReport weak_width(SubgroupHandle const& h, SearchBudget const& budget) {
    FamilyOracle oracle(h, budget);
    auto         report = weak_width_impl(h, budget, oracle);
    report.bounded = report.bounded || oracle.bounded();
    report.certificates = oracle.certificates();
    return report;
  }

  InvariantReport width(SubgroupHandle const& h, Mode mode, SearchBudget const& budget) {
    FamilyOracle oracle(h, budget);
    auto         report = width_impl(h, mode, budget, oracle).report;
    report.certificates = oracle.certificates();
    return report;
  }

  InvariantReport height(SubgroupHandle const& h, Mode mode, SearchBudget const& budget) {
    FamilyOracle oracle(h, budget);
    auto         state = width_impl(h, mode, budget, oracle);
    auto&        report = state.report;
    if (report.finite_subgroup) {
      report.height = 0;
      report.certificates = oracle.certificates();
      return report;
    }
    if (mode == Mode::paper_greedy) {
      report.L_h.push_back(Word{});
      for (auto const& g : report.L_w) {
        if (g.empty()) {
          continue;
        }
        auto family = report.L_h;
        family.push_back(g);
        if (oracle.infinite(family)) {
          report.L_h.push_back(g);
        }
      }
    } else {
      // families with infinite intersection are cliques, so the search only
      // extends along edges before asking for the full intersection
      auto const&              U = report.universe;
      std::size_t const        n = U.size();
      std::vector<std::size_t> best{0};
      std::vector<std::size_t> current{0};
      std::function<void(std::size_t)> extend = [&](std::size_t from) {
        if (current.size() > best.size()) {
          best = current;
        }
        for (std::size_t v = from; v < n; ++v) {
          if (current.size() + (n - v) <= best.size()) {
            return;
          }
          bool ok = true;
          for (auto u : current) {
            ok = ok && state.adjacent[u][v] != 0;
          }
          if (!ok) {
            continue;
          }
          std::vector<Word> family;
          for (auto u : current) {
            family.push_back(U[u]);
          }
          family.push_back(U[v]);
          if (oracle.infinite(family)) {
            current.push_back(v);
            extend(v + 1);
            current.pop_back();
          }
        }
      };
      extend(1);
      for (auto v : best) {
        report.L_h.push_back(U[v]);
      }
    }
    report.height = report.L_h.size();
    report.bounded = report.bounded || oracle.bounded();
    report.certificates = oracle.certificates();
    return report;
  }

  CandidateSet candidate_set(SubgroupHandle const& h,
                             Word const&           g_i,
                             SearchBudget const&   budget) {
    FamilyOracle oracle(h, budget);
    bool         bounded = false;
    return candidate_set_impl(h, g_i, budget, oracle, bounded);
  }

  WidthDecomposition check_width_decomposition(SubgroupHandle const& h,
                                               Word const&           g_i,
                                               Word const&           g,
                                               SearchBudget const&   budget) {
    Group const& G = h.group();
    auto         name = [&](Word const& w) { return "'" + format_word(w, G.alphabet()) + "'"; };

    if (membership(h, g_i, budget).in()) {
      throw PreconditionError("g_i = " + name(g_i) + " lies in H");
    }
    if (G.geodesic_length(canonical_coset_rep(h, g, budget)) != g.size()
        || G.geodesic_length(g) != g.size()) {
      throw PreconditionError(name(g) + " is not a shortest element of its coset");
    }
    if (coset_equal(h, g, g_i, budget).value) {
      throw PreconditionError(name(g) + " and " + name(g_i) + " lie in the same coset");
    }
    std::size_t const radius = std::max(g.size(), G.geodesic_length(g_i));
    if (!double_coset_equal(h, g, g_i, 2 * radius, budget).value) {
      throw PreconditionError(name(g) + " is not in the double coset of " + name(g_i));
    }
    if (!multi_intersection_infinite(h, {g_i * g.inverse()}, budget).infinite()) {
      throw PreconditionError("the conjugates by " + name(g) + " and " + name(g_i)
                              + " do not have infinite intersection");
    }

    long const        tw = G.delta().twice();
    long const        K = h.K();
    std::size_t const s_max = ucast((4 * K + 3 * tw) / 2);
    // |k| < 6K + 21 delta
    long const        k_twice = 12 * K + 21 * tw;
    std::size_t const k_max = ucast((k_twice - 1) / 2);

    WidthDecomposition d;
    d.target = G.representative(G.evaluate(g_i * g.inverse()));
    auto const                ball = G.ball(s_max, budget.max_elements);
    std::optional<std::size_t> best_total;
    for (std::size_t r = 0; k_twice > 0 && r <= k_max; ++r) {
      if (best_total && r >= *best_total) {
        break;
      }
      for (auto const& k : subgroup_elements(h, r, budget).elements) {
        if (G.geodesic_length(k) != r) {
          continue;
        }
        for (auto const& entry : ball) {
          Word const& s = entry.representative;
          Word        hw = d.target * k.inverse() * s.inverse();
          if (!membership(h, hw, budget).in()) {
            continue;
          }
          Word        h_i = G.representative(G.evaluate(hw));
          std::size_t total = h_i.size() + s.size() + r;
          if (!best_total || total < *best_total) {
            best_total = total;
            d.h_i = h_i;
            d.s_i = s;
            d.k_i = k;
          }
        }
      }
    }
    if (!best_total) {
      throw InternalConsistencyError("no decomposition g_i g^-1 = h s k with |s| <= "
                                     + std::to_string(s_max) + " and |k| <= "
                                     + std::to_string(k_max) + " for g_i = " + name(g_i)
                                     + ", g = " + name(g));
    }
    if (!(G.evaluate(d.h_i * d.s_i * d.k_i) == G.evaluate(d.target))
        || !membership(h, d.h_i, budget).in() || !membership(h, d.k_i, budget).in()) {
      throw InternalConsistencyError("width decomposition failed certification");
    }
    return d;
  }

  Decision almost_malnormal(SubgroupHandle const& h, SearchBudget const& budget) {
    auto report = weak_width(h, budget);
    if (report.finite_subgroup) {
      throw PreconditionError("almost malnormality is asked of an infinite subgroup");
    }
    return {report.weak_width == 1, report.bounded};
  }

  MalnormalityResult malnormality_semidecision(SubgroupHandle const& h,
                                               std::size_t           radius,
                                               SearchBudget const&   budget) {
    Group const&       G = h.group();
    MalnormalityResult out;
    out.swept_radius = radius;
    std::size_t const limit = 2 * ucast(h.K()) + 4 * two_delta(G) + 1;

    std::vector<Word> outside;
    for (auto const& entry : G.ball(radius, budget.max_elements)) {
      auto m = membership(h, entry.representative, budget);
      out.bounded = out.bounded || m.bounded();
      if (!m.in()) {
        outside.push_back(entry.representative);
      }
    }
    std::vector<Word> reps;
    out.bounded = distinct_double_cosets(h, outside, 2 * radius, budget, reps) || out.bounded;
    for (auto const& g : reps) {
      ++out.double_cosets_checked;
      auto elems = intersection_elements(h, g, limit, budget);
      out.bounded = out.bounded || !elems.complete;
      if (elems.elements.size() > 1) {
        out.malnormal_up_to_budget = false;
        out.witness = g;
        for (auto& w : elems.elements) {
          if (!w.empty()) {
            out.witness_elements.push_back(std::move(w));
          }
        }
        return out;
      }
    }
    // a sweep that finds nothing proves nothing beyond its radius
    out.bounded = true;
    return out;
  }

  ConstantsReport constants_report(SubgroupHandle const& h,
                                   Word const&           g,
                                   SearchBudget const&   budget) {
    Group const&    G = h.group();
    ConstantsReport r;
    long const      tw = G.delta().twice();
    long const      K = h.K();
    r.K = K;
    r.delta = G.delta();
    r.g_length = G.geodesic_length(g);
    r.K_g = K + tw + 2 * static_cast<long>(r.g_length);
    r.M_radius = static_cast<std::size_t>(tw) + ucast(K) + r.g_length;
    auto N = build_neighborhood(h, r.M_radius, budget);
    r.M = N.vertex_count();
    r.bounded = N.bounded;

    if (r.M_radius == 0) {
      r.crude_M_bound = "1";
    } else {
      using boost::multiprecision::cpp_int;
      cpp_int const two_l = G.alphabet().letter_count();
      cpp_int       bound = two_l * boost::multiprecision::pow(two_l - 1, static_cast<unsigned>(r.M_radius - 1));
      r.crude_M_bound = bound.str();
    }
    r.short_generator_bound = 2 * ucast(K) + 1;
    r.weak_width_radius = HalfInteger::from_twice(4 * K + 2 * tw);
    r.small_intersection_bound = HalfInteger::from_twice(4 * K + 8 * tw + 4);
    r.s_bound = HalfInteger::from_twice(4 * K + 3 * tw);
    r.k_bound = HalfInteger::from_twice(12 * K + 21 * tw);
    r.candidate_radius = HalfInteger::from_twice(16 * K + 24 * tw);
    return r;
  }

}  // namespace conjint
