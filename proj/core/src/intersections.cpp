#include "conjint/intersections.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

#include "conjint/errors.hpp"

namespace conjint {

  std::string_view finiteness_name(Finiteness f) {
    switch (f) {
      case Finiteness::finite:
        return "finite";
      case Finiteness::infinite:
        return "infinite";
      case Finiteness::finite_bounded:
        return "finite_bounded";
    }
    return "finite_bounded";
  }

  namespace {
    std::size_t two_delta(Group const& G) {
      return static_cast<std::size_t>(G.delta().twice());
    }

    void require_in(SubgroupHandle const& h, Word const& w, char const* what) {
      if (!membership(h, w).in()) {
        throw InternalConsistencyError(std::string(what) + ": '"
                                       + format_word(w, h.group().alphabet())
                                       + "' failed certification");
      }
    }

    // Kernel word of an element known to lie in the folded subgroup.
    Word kernel_word(Group const& G, Word const& w) {
      return G.evaluate(w).word;
    }

    SubgroupGraph graph_of(Group const& G, std::vector<Word> const& words) {
      std::vector<Word> kernel;
      for (auto const& w : words) {
        kernel.push_back(kernel_word(G, w));
      }
      return SubgroupGraph::from_generators(kernel, G.alphabet().letter_count());
    }
  }  // namespace

  SubgroupHandle conjugate_handle(SubgroupHandle const& h, Word const& g) {
    Group const&      G = h.group();
    std::vector<Word> gens;
    for (auto const& s : h.generators()) {
      gens.push_back(G.representative(G.evaluate(g.inverse() * s * g)));
    }
    long K_g = h.K() + static_cast<long>(two_delta(G))
               + 2 * static_cast<long>(G.geodesic_length(g));
    return SubgroupHandle(h.group_ptr(), std::move(gens), K_g);
  }

  ElementSet intersection_elements(SubgroupHandle const& h,
                                   Word const&           g,
                                   std::size_t           radius,
                                   SearchBudget const&   budget) {
    ElementSet out;
    if (h.exact()) {
      SubgroupHandle conj = conjugate_handle(h, g);
      auto const&    other = conj.graph();
      out.elements.push_back(Word{});
      // Prefixes of elements of g^-1 H g are readable in its folded graph,
      // so the walk over H prunes as soon as a prefix falls off.
      h.graph().for_each_loop(
          radius,
          [&](Word const& w) {
            if (other.accepts(w)) {
              if (out.elements.size() >= budget.max_elements) {
                throw ResourceCapExceeded("intersection enumeration exceeds "
                                          + std::to_string(budget.max_elements)
                                          + " elements");
              }
              out.elements.push_back(w);
            }
            return true;
          },
          [&](std::vector<Letter> const& prefix) {
            std::size_t v = 0;
            for (Letter x : prefix) {
              auto t = other.target(v, x);
              if (t < 0) {
                return false;
              }
              v = static_cast<std::size_t>(t);
            }
            return true;
          });
      std::sort(out.elements.begin(), out.elements.end());
      return out;
    }
    auto candidates = subgroup_elements(h, radius, budget);
    out.complete = candidates.complete;
    for (auto const& s : candidates.elements) {
      auto c = membership(h, g * s * g.inverse(), budget);
      out.complete = out.complete && !c.bounded();
      if (c.in()) {
        out.elements.push_back(s);
      }
    }
    return out;
  }

  FinitenessVerdict subgroup_finiteness(Group const&             G,
                                        std::vector<Word> const& generators,
                                        SearchBudget const&      budget) {
    std::size_t const    C = G.finite_order_bound();
    std::vector<Element> gens;
    for (auto const& w : generators) {
      Element e = G.evaluate(w);
      if (!(e == G.identity())) {
        gens.push_back(e);
      }
    }
    if (gens.empty()) {
      return {Finiteness::finite, 1};
    }
    for (auto const& e : gens) {
      Element p = e;
      bool    torsion = false;
      for (std::size_t j = 1; j <= C && !torsion; ++j) {
        torsion = p == G.identity();
        p = G.multiply(p, e);
      }
      if (!torsion) {
        return {Finiteness::infinite, 0};
      }
    }
    std::unordered_set<Element, ElementHash> seen{G.identity()};
    std::vector<Element>                     order{G.identity()};
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (auto const& s : gens) {
        Element next = G.multiply(order[i], s);
        if (seen.insert(next).second) {
          order.push_back(std::move(next));
          if (order.size() > C || order.size() > budget.max_elements) {
            return {Finiteness::infinite, 0};
          }
        }
      }
    }
    return {Finiteness::finite, order.size()};
  }

  IntersectionReport conjugate_intersection_generators(SubgroupHandle const& h,
                                                       Word const&           g,
                                                       SearchBudget const&   budget) {
    Group const& G = h.group();
    auto         in_h = membership(h, g, budget);
    if (in_h.in()) {
      throw InvalidConjugator("conjugator '" + format_word(g, G.alphabet())
                              + "' lies in H");
    }
    IntersectionReport report;
    report.bounded = in_h.bounded();
    std::size_t const len_g = G.geodesic_length(g);
    std::size_t const radius = two_delta(G) + static_cast<std::size_t>(h.K()) + len_g;
    auto              N = build_neighborhood(h, radius, budget);
    report.M = N.vertex_count();
    report.bounded = report.bounded || N.bounded;

    using boost::multiprecision::cpp_int;
    cpp_int const M = report.M;
    cpp_int const bound = 2 * cpp_int(len_g) + 2 * M * M + 1;
    report.theoretical_bound = bound.str();
    report.length_bound = bound - 1 < budget.max_gen_length
                              ? static_cast<std::size_t>(bound - 1)
                              : budget.max_gen_length;
    report.theoretical_bound_swept = bound - 1 <= budget.max_gen_length;

    auto elems = intersection_elements(h, g, report.length_bound, budget);
    report.bounded = report.bounded || !elems.complete;
    std::vector<Word> found;
    for (auto const& s : elems.elements) {
      if (s.empty()) {
        continue;
      }
      require_in(h, s, "intersection element in H");
      require_in(h, g * s * g.inverse(), "intersection element in the conjugate");
      found.push_back(s);
    }
    report.elements_found = found.size();

    if (h.exact()) {
      // keep an element only if the kept ones do not already generate it
      std::vector<Word> kept;
      SubgroupGraph     span = graph_of(G, kept);
      for (auto const& s : found) {
        if (!span.accepts(kernel_word(G, s))) {
          kept.push_back(s);
          span = graph_of(G, kept);
        }
      }
      report.generating_set = std::move(kept);
      auto product = SubgroupGraph::product(h.graph(), conjugate_handle(h, g).graph());
      report.fiber_product_agrees = product.same_subgroup(span);
      report.finiteness = product.rank() > 0 ? FinitenessVerdict{Finiteness::infinite, 0}
                                             : FinitenessVerdict{Finiteness::finite, 1};
    } else {
      report.generating_set = std::move(found);
      report.finiteness = subgroup_finiteness(G, report.generating_set, budget);
      if (report.finiteness.kind == Finiteness::finite
          && (!report.theoretical_bound_swept || report.bounded)) {
        report.finiteness.kind = Finiteness::finite_bounded;
      }
    }
    report.bounded = report.bounded || report.finiteness.bounded();
    return report;
  }

  SplitResult split_long_loop(SubgroupHandle const& h,
                              Word const&           g,
                              Word const&           w,
                              SearchBudget const&   budget) {
    Group const& G = h.group();
    if (!membership(h, w, budget).in()) {
      throw PreconditionError("split_long_loop: w is not in H");
    }
    if (!membership(h, g * w * g.inverse(), budget).in()) {
      throw PreconditionError("split_long_loop: g w g^-1 is not in H");
    }
    std::size_t const radius
        = two_delta(G) + static_cast<std::size_t>(h.K()) + G.geodesic_length(g);
    auto              N = build_neighborhood(h, radius, budget);
    std::size_t const M = N.vertex_count();
    Word const        geo = G.representative(G.evaluate(w));
    if (geo.size() <= M * M) {
      throw PreconditionError("split_long_loop: |w| = " + std::to_string(geo.size())
                              + " does not exceed M^2 = " + std::to_string(M * M));
    }

    // vertex of Hg inside the neighbourhood
    std::optional<std::size_t> start;
    Word const                 g_rep = h.exact() ? canonical_coset_rep(h, g, budget) : Word{};
    for (std::size_t v = 0; v < N.vertex_count() && !start; ++v) {
      if (h.exact() ? N.representatives[v] == g_rep
                    : coset_equal(h, N.representatives[v], g, budget).value) {
        start = v;
      }
    }
    if (!start) {
      throw InternalConsistencyError("coset Hg missing from its neighbourhood");
    }

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
    std::size_t                                                 v = 0, u = *start;
    std::optional<std::pair<std::size_t, std::size_t>>          repeat;
    for (std::size_t k = 0; k <= geo.size(); ++k) {
      auto [it, fresh] = seen.try_emplace({v, u}, k);
      if (!fresh) {
        repeat = {it->second, k};
        break;
      }
      if (k == geo.size()) {
        break;
      }
      auto tv = N.target(v, geo[k]);
      auto tu = N.target(u, geo[k]);
      if (tv < 0 || tu < 0) {
        throw InternalConsistencyError("traced loop left N_" + std::to_string(radius)
                                       + "(H.1) at step " + std::to_string(k));
      }
      v = static_cast<std::size_t>(tv);
      u = static_cast<std::size_t>(tu);
    }
    if (!repeat || repeat->second > M * M) {
      throw InternalConsistencyError("no repeated vertex pair within M^2 + 1 steps");
    }

    auto [i, j] = *repeat;
    Word prefix = geo.prefix(i);
    SplitResult r;
    r.h1 = G.representative(G.evaluate(prefix * geo.subword(i, j - i) * prefix.inverse()));
    r.h2 = G.representative(G.evaluate(prefix * geo.suffix(j)));
    r.i = i;
    r.j = j;
    r.M = M;

    if (!(G.evaluate(r.h1 * r.h2) == G.evaluate(w))) {
      throw InternalConsistencyError("split factors do not multiply to w");
    }
    require_in(h, r.h1, "split factor h1");
    require_in(h, r.h2, "split factor h2");
    require_in(h, g * r.h1 * g.inverse(), "conjugated split factor h1");
    require_in(h, g * r.h2 * g.inverse(), "conjugated split factor h2");
    if (G.geodesic_length(r.h1) >= 2 * M * M + 1 || G.geodesic_length(r.h2) >= geo.size()) {
      throw InternalConsistencyError("split factors violate the length bounds");
    }
    return r;
  }

  IntersectionReport fiber_product_intersection(SubgroupHandle const& a,
                                                SubgroupHandle const& b) {
    if (!a.exact() || !b.exact()) {
      throw PreconditionError("fibre product needs folded graphs for both subgroups");
    }
    if (!(a.group().alphabet() == b.group().alphabet())) {
      throw PreconditionError("fibre product of subgroups of different groups");
    }
    auto               product = SubgroupGraph::product(a.graph(), b.graph());
    IntersectionReport report;
    report.basis = product.basis();
    report.rank = product.rank();
    report.generating_set = *report.basis;
    report.elements_found = report.generating_set.size();
    for (auto const& s : report.generating_set) {
      require_in(a, s, "fibre product generator in A");
      require_in(b, s, "fibre product generator in B");
    }
    report.finiteness = *report.rank > 0 ? FinitenessVerdict{Finiteness::infinite, 0}
                                         : FinitenessVerdict{Finiteness::finite, 1};
    return report;
  }

  FinitenessVerdict is_intersection_infinite(SubgroupHandle const& h,
                                             Word const&           g,
                                             SearchBudget const&   budget) {
    if (h.exact()) {
      if (membership(h, g, budget).in()) {
        throw InvalidConjugator("conjugator '" + format_word(g, h.group().alphabet())
                                + "' lies in H");
      }
      auto product = SubgroupGraph::product(h.graph(), conjugate_handle(h, g).graph());
      return product.rank() > 0 ? FinitenessVerdict{Finiteness::infinite, 0}
                                : FinitenessVerdict{Finiteness::finite, 1};
    }
    return conjugate_intersection_generators(h, g, budget).finiteness;
  }

  FinitenessVerdict multi_intersection_infinite(SubgroupHandle const&    h,
                                                std::vector<Word> const& conjugators,
                                                SearchBudget const&      budget) {
    Group const&      G = h.group();
    std::vector<Word> all{Word{}};
    all.insert(all.end(), conjugators.begin(), conjugators.end());
    bool bounded = false;
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        auto eq = coset_equal(h, all[i], all[j], budget);
        if (eq.value) {
          throw PreconditionError("conjugators '" + format_word(all[i], G.alphabet())
                                  + "' and '" + format_word(all[j], G.alphabet())
                                  + "' lie in the same coset of H");
        }
        bounded = bounded || eq.bounded;
      }
    }
    if (h.exact()) {
      SubgroupGraph graph = h.graph();
      for (auto const& c : conjugators) {
        graph = SubgroupGraph::product(graph, conjugate_handle(h, c).graph());
      }
      return graph.rank() > 0 ? FinitenessVerdict{Finiteness::infinite, 0}
                              : FinitenessVerdict{Finiteness::finite, 1};
    }
    if (conjugators.empty()) {
      return subgroup_finiteness(G, h.generators(), budget);
    }
    auto              candidates = subgroup_elements(h, budget.max_gen_length, budget);
    std::vector<Word> common;
    for (auto const& s : candidates.elements) {
      bool all_in = !s.empty();
      for (auto const& c : conjugators) {
        if (!all_in) {
          break;
        }
        auto m = membership(h, c * s * c.inverse(), budget);
        all_in = m.in();
      }
      if (all_in) {
        common.push_back(s);
      }
    }
    auto verdict = subgroup_finiteness(G, common, budget);
    // the enumeration stops at max_gen_length, so a finite answer is bounded
    if (verdict.kind == Finiteness::finite) {
      verdict.kind = Finiteness::finite_bounded;
    }
    return verdict;
  }

  IntersectionConstant intersection_quasiconvexity_constant(SubgroupHandle const& a,
                                                            SubgroupHandle const& b,
                                                            SearchBudget const&   budget) {
    IntersectionConstant out;
    out.K = static_cast<std::size_t>(std::max(a.K(), b.K()));
    auto NA = build_neighborhood(a, out.K, budget);
    auto NB = build_neighborhood(b, out.K, budget);
    out.M_A = NA.vertex_count();
    out.M_B = NB.vertex_count();
    out.K0 = out.M_A * out.M_B;
    out.bounded = NA.bounded || NB.bounded;
    return out;
  }

  std::vector<Word> short_generator_set(SubgroupHandle const& h, SearchBudget const& budget) {
    auto all = subgroup_elements(h, 2 * static_cast<std::size_t>(h.K()) + 1, budget);
    std::vector<Word> out;
    for (auto& w : all.elements) {
      if (!w.empty()) {
        out.push_back(std::move(w));
      }
    }
    return out;
  }

}  // namespace conjint
