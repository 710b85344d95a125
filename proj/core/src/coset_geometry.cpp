#include "conjint/coset_geometry.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "conjint/errors.hpp"

namespace conjint {

  using Witness = std::vector<Factor>;
  using ElementMap = std::unordered_map<Element, Witness, ElementHash>;

  struct SaturationCache {
    std::mutex mutex;
    bool       delta_ready = false;
    bool       delta_stable = false;
    // Nontrivial elements of H inside ball(2K+1), shortlex by representative.
    std::vector<std::pair<Element, Witness>> delta;
  };

  ////////////////////////////////////////////////////////////////////////
  // SubgroupHandle
  ////////////////////////////////////////////////////////////////////////

  namespace {
    SemidirectGroup const* as_semidirect(Group const& g) {
      return dynamic_cast<SemidirectGroup const*>(&g);
    }
  }  // namespace

  SubgroupHandle::SubgroupHandle(std::shared_ptr<Group const> group,
                                 std::vector<Word>            generators,
                                 long                         K)
      : group_(std::move(group)),
        generators_(std::move(generators)),
        K_(K),
        cache_(std::make_shared<SaturationCache>()) {
    if (K_ < 0) {
      throw PreconditionError("quasiconvexity constant must be non-negative");
    }
    std::vector<Word> kernel;
    bool              in_kernel = true;
    for (auto const& s : generators_) {
      Element e = group_->evaluate(s);
      if (e == group_->identity()) {
        throw PreconditionError("subgroup generator '"
                                + format_word(s, group_->alphabet())
                                + "' is trivial in G");
      }
      in_kernel = in_kernel && e.torsion == 0;
      kernel.push_back(e.word);
    }
    bool exact = group_->backend() == Backend::free
                 || (group_->backend() == Backend::semidirect && in_kernel);
    if (exact) {
      graph_ = std::make_shared<SubgroupGraph>(
          SubgroupGraph::from_generators(kernel, group_->alphabet().letter_count()));
      paths_ = std::make_shared<std::vector<Word>>(graph_->shortest_paths());
    }
  }

  SubgroupGraph const& SubgroupHandle::graph() const {
    if (!graph_) {
      throw PreconditionError("subgroup handle has no folded graph");
    }
    return *graph_;
  }

  Word SubgroupHandle::expand(std::vector<Factor> const& witness) const {
    Word out;
    for (auto const& f : witness) {
      Word const& s = generators_.at(f.generator);
      out *= f.inverse ? s.inverse() : s;
    }
    return out;
  }

  std::string_view verdict_name(Verdict v) {
    switch (v) {
      case Verdict::in:
        return "in";
      case Verdict::out:
        return "out";
      case Verdict::out_bounded:
        return "out_bounded";
    }
    return "out";
  }

  ////////////////////////////////////////////////////////////////////////
  // Saturation helpers
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // H-elements of length <= radius reachable from 1 by right
    // multiplication with generators, never leaving ball(radius).
    ElementMap closure(SubgroupHandle const& h, std::size_t radius, SearchBudget const& budget) {
      Group const&                          G = h.group();
      std::vector<std::pair<Element, Factor>> steps;
      for (std::size_t i = 0; i < h.generators().size(); ++i) {
        Element e = G.evaluate(h.generators()[i]);
        steps.push_back({e, {i, false}});
        steps.push_back({G.inverse(e), {i, true}});
      }
      ElementMap          seen{{G.identity(), {}}};
      std::deque<Element> queue{G.identity()};
      while (!queue.empty()) {
        Element e = queue.front();
        queue.pop_front();
        for (auto const& [s, f] : steps) {
          Element next = G.multiply(e, s);
          if (seen.count(next) != 0 || G.geodesic_length(next) > radius) {
            continue;
          }
          if (seen.size() >= budget.max_elements) {
            throw ResourceCapExceeded("subgroup closure exceeds "
                                      + std::to_string(budget.max_elements) + " elements");
          }
          Witness w = seen.at(e);
          w.push_back(f);
          seen.emplace(next, std::move(w));
          queue.push_back(std::move(next));
        }
      }
      return seen;
    }

    void ensure_delta(SubgroupHandle const& h, SearchBudget const& budget) {
      auto&           cache = h.saturation();
      std::lock_guard lock(cache.mutex);
      if (cache.delta_ready) {
        return;
      }
      Group const&      G = h.group();
      std::size_t const r0 = 2 * static_cast<std::size_t>(h.K()) + 1;
      std::vector<std::set<Element>> history;
      ElementMap                     last;
      for (std::size_t d = 0; d <= budget.depth_cap; ++d) {
        last = closure(h, r0 + d, budget);
        std::set<Element> inner;
        for (auto const& [e, w] : last) {
          if (G.geodesic_length(e) <= r0) {
            inner.insert(e);
          }
        }
        history.push_back(std::move(inner));
        std::size_t n = history.size();
        if (n >= 3 && history[n - 1] == history[n - 2] && history[n - 2] == history[n - 3]) {
          cache.delta_stable = true;
          break;
        }
      }
      std::vector<std::pair<Word, Element>> order;
      for (auto const& e : history.back()) {
        if (!(e == G.identity())) {
          order.emplace_back(G.representative(e), e);
        }
      }
      std::sort(order.begin(), order.end());
      for (auto& [rep, e] : order) {
        cache.delta.emplace_back(e, last.at(e));
      }
      cache.delta_ready = true;
    }

    // Breadth-first walk over H-elements inside ball(radius) stepping by
    // the short set. Calls visit(element, parent-chain accessor).
    struct Walk {
      std::unordered_map<Element, std::pair<Element, std::int64_t>, ElementHash> parent;
      std::vector<Element>                                                    order;
    };

    Walk delta_walk(SubgroupHandle const& h, std::size_t radius, SearchBudget const& budget) {
      ensure_delta(h, budget);
      Group const& G = h.group();
      auto const&  delta = h.saturation().delta;
      Walk         walk;
      walk.parent.emplace(G.identity(), std::make_pair(G.identity(), std::int64_t{-1}));
      walk.order.push_back(G.identity());
      for (std::size_t i = 0; i < walk.order.size(); ++i) {
        Element e = walk.order[i];
        for (std::size_t j = 0; j < delta.size(); ++j) {
          Element next = G.multiply(e, delta[j].first);
          if (walk.parent.count(next) != 0 || G.geodesic_length(next) > radius) {
            continue;
          }
          if (walk.order.size() >= budget.max_elements) {
            throw ResourceCapExceeded("saturation walk exceeds "
                                      + std::to_string(budget.max_elements) + " elements");
          }
          walk.parent.emplace(next, std::make_pair(e, static_cast<std::int64_t>(j)));
          walk.order.push_back(std::move(next));
        }
      }
      return walk;
    }

    Witness walk_witness(SubgroupHandle const& h, Walk const& walk, Element e) {
      auto const&          delta = h.saturation().delta;
      std::vector<std::size_t> steps;
      while (true) {
        auto const& [p, j] = walk.parent.at(e);
        if (j < 0) {
          break;
        }
        steps.push_back(static_cast<std::size_t>(j));
        e = p;
      }
      Witness out;
      for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        auto const& w = delta[*it].second;
        out.insert(out.end(), w.begin(), w.end());
      }
      return out;
    }

    void certify(SubgroupHandle const& h, Word const& w, MembershipCertificate const& c) {
      if (!c.in()) {
        return;
      }
      Group const& G = h.group();
      if (!(G.evaluate(h.expand(c.witness)) == G.evaluate(w))) {
        throw InternalConsistencyError("membership witness does not evaluate to '"
                                       + format_word(w, G.alphabet()) + "'");
      }
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Membership and coset equality
  ////////////////////////////////////////////////////////////////////////

  MembershipCertificate membership(SubgroupHandle const& h,
                                   Word const&           w,
                                   SearchBudget const&   budget) {
    Group const&          G = h.group();
    Element               target = G.evaluate(w);
    MembershipCertificate cert;
    if (target == G.identity()) {
      cert.verdict = Verdict::in;
      return cert;
    }
    if (h.trivial()) {
      cert.verdict = Verdict::out;
      return cert;
    }
    if (h.exact()) {
      if (target.torsion != 0) {
        cert.verdict = Verdict::out;
        return cert;
      }
      auto weights = h.graph().witness(target.word);
      if (!weights) {
        cert.verdict = Verdict::out;
        return cert;
      }
      cert.verdict = Verdict::in;
      for (auto [i, inv] : weight_factors(*weights)) {
        cert.witness.push_back({i, inv});
      }
      certify(h, w, cert);
      return cert;
    }
    std::size_t radius = G.geodesic_length(target) + static_cast<std::size_t>(h.K());
    Walk        walk = delta_walk(h, radius, budget);
    if (walk.parent.count(target) != 0) {
      cert.verdict = Verdict::in;
      cert.witness = walk_witness(h, walk, target);
      certify(h, w, cert);
    } else {
      cert.verdict = Verdict::out_bounded;
      cert.explored_radius = radius;
    }
    return cert;
  }

  Decision coset_equal(SubgroupHandle const& h,
                       Word const&           g1,
                       Word const&           g2,
                       SearchBudget const&   budget) {
    auto c = membership(h, g1 * g2.inverse(), budget);
    return {c.in(), c.bounded()};
  }

  Decision double_coset_equal(SubgroupHandle const& h,
                              Word const&           g1,
                              Word const&           g2,
                              std::size_t           bound,
                              SearchBudget const&   budget) {
    if (h.exact()) {
      return {canonical_double_coset_rep(h, g1) == canonical_double_coset_rep(h, g2), false};
    }
    Decision result{false, false};
    for (auto const& s : subgroup_elements(h, bound, budget).elements) {
      auto d = coset_equal(h, g1, g2 * s, budget);
      if (d.value) {
        return {true, false};
      }
      result.bounded = result.bounded || d.bounded;
    }
    // Without a folded graph a negative answer is only as good as the bound.
    result.bounded = true;
    return result;
  }

  Word canonical_coset_rep(SubgroupHandle const& h, Word const& g, SearchBudget const& budget) {
    Group const& G = h.group();
    Element      e = G.evaluate(g);
    if (h.exact()) {
      auto const& graph = h.graph();
      auto        r = graph.read(e.word);
      Word        rep = h.graph_paths()[r.vertex] * e.word.suffix(r.consumed);
      return G.representative(Element{rep, e.torsion});
    }
    std::size_t n = G.geodesic_length(e);
    for (std::size_t len = 0; len <= n; ++len) {
      std::optional<Word> found;
      for_each_reduced_of_length(G.alphabet().letter_count(), len, [&](Word const& u) {
        if (!found && coset_equal(h, u, g, budget).value) {
          found = u;
        }
      });
      if (found) {
        return *found;
      }
    }
    return G.representative(e);
  }

  Word canonical_double_coset_rep(SubgroupHandle const& h, Word const& g) {
    Group const& G = h.group();
    Element      e = G.evaluate(g);
    auto const&  graph = h.graph();
    auto const*  semi = as_semidirect(G);
    std::size_t const V = graph.vertex_count();
    std::size_t const L = graph.letter_count();

    std::vector<RawEdge> edges;
    for (std::size_t v = 0; v < V; ++v) {
      for (Letter x = 0; x < L; x += 2) {
        auto t = graph.target(v, x);
        if (t >= 0) {
          edges.push_back({v, x, static_cast<std::size_t>(t), {}});
        }
      }
    }
    std::size_t n = V;
    std::size_t p = 0;
    for (Letter x : e.word) {
      edges.push_back({p, x, n, {}});
      p = n++;
    }
    // copy of the graph of t^k H t^-k rooted at p
    auto copy_id = [&](std::size_t v) { return v == 0 ? p : n + v - 1; };
    for (std::size_t v = 0; v < V; ++v) {
      for (Letter x = 0; x < L; x += 2) {
        auto t = graph.target(v, x);
        if (t >= 0) {
          Letter y = semi != nullptr ? semi->twist(x, e.torsion) : x;
          edges.push_back({copy_id(v), y, copy_id(static_cast<std::size_t>(t)), {}});
        }
      }
    }
    n += V - 1;
    std::vector<std::size_t> tracked{p};
    auto folded = SubgroupGraph::fold(n, std::move(edges), L, &tracked);
    Word rep = folded.shortest_paths()[tracked[0]];
    return G.representative(Element{rep, e.torsion});
  }

  ////////////////////////////////////////////////////////////////////////
  // Neighbourhoods and cores
  ////////////////////////////////////////////////////////////////////////

  CosetNeighborhood build_neighborhood(SubgroupHandle const& h,
                                       std::size_t           radius,
                                       SearchBudget const&   budget) {
    Group const&      G = h.group();
    std::size_t const L = G.alphabet().letter_count();
    CosetNeighborhood N;
    N.radius = radius;
    N.representatives.push_back(Word{});
    std::vector<std::size_t> dist{0};
    std::unordered_map<Word, std::size_t, WordHash> index{{Word{}, 0}};

    auto add = [&](Word rep, std::size_t d) {
      if (N.representatives.size() >= budget.max_elements) {
        throw ResourceCapExceeded("coset neighbourhood exceeds "
                                  + std::to_string(budget.max_elements) + " vertices");
      }
      index.emplace(rep, N.representatives.size());
      N.representatives.push_back(std::move(rep));
      dist.push_back(d);
      return N.representatives.size() - 1;
    };

    for (std::size_t v = 0; v < N.representatives.size(); ++v) {
      N.edges.emplace_back(L, -1);
      for (Letter x = 0; x < L; ++x) {
        Word u = N.representatives[v] * Word{x};
        std::int32_t target = -1;
        if (h.exact()) {
          Word        rep = canonical_coset_rep(h, u, budget);
          std::size_t d = G.geodesic_length(rep);
          if (auto it = index.find(rep); it != index.end()) {
            target = static_cast<std::int32_t>(it->second);
          } else if (d <= radius) {
            target = static_cast<std::int32_t>(add(std::move(rep), d));
          }
        } else {
          // neighbours of a vertex at distance d sit at distance d-1, d, d+1
          for (std::size_t j = 0; j < N.representatives.size() && target < 0; ++j) {
            if (dist[j] + 1 < dist[v] || dist[j] > dist[v] + 1) {
              continue;
            }
            auto eq = coset_equal(h, u, N.representatives[j], budget);
            N.bounded = N.bounded || eq.bounded;
            if (eq.value) {
              target = static_cast<std::int32_t>(j);
            }
          }
          if (target < 0 && dist[v] + 1 <= radius) {
            target = static_cast<std::int32_t>(add(u, dist[v] + 1));
          }
        }
        if (target >= 0) {
          if (N.edges[v][x] >= 0 && N.edges[v][x] != target) {
            throw InternalConsistencyError("coset graph edge is not deterministic");
          }
          N.edges[v][x] = target;
        }
      }
    }
    return N;
  }

  bool CoreAutomaton::accepts(Word const& w) const {
    std::size_t v = 0;
    for (Letter x : w) {
      auto t = transitions[v][x];
      if (t < 0) {
        return false;
      }
      v = static_cast<std::size_t>(t);
    }
    return v == 0;
  }

  ElementSet subgroup_elements(SubgroupHandle const& h,
                               std::size_t           radius,
                               SearchBudget const&   budget) {
    ElementSet   out;
    Group const& G = h.group();
    out.elements.push_back(Word{});
    if (h.trivial()) {
      return out;
    }
    if (h.exact()) {
      h.graph().for_each_loop(radius, [&](Word const& w) {
        if (out.elements.size() >= budget.max_elements) {
          throw ResourceCapExceeded("subgroup enumeration exceeds "
                                    + std::to_string(budget.max_elements) + " elements");
        }
        out.elements.push_back(w);
        return true;
      });
      std::sort(out.elements.begin(), out.elements.end());
      return out;
    }
    Walk walk = delta_walk(h, radius + static_cast<std::size_t>(h.K()), budget);
    out.elements.clear();
    for (auto const& e : walk.order) {
      if (G.geodesic_length(e) <= radius) {
        out.elements.push_back(G.representative(e));
      }
    }
    std::sort(out.elements.begin(), out.elements.end());
    out.complete = h.saturation().delta_stable;
    return out;
  }

  CoreAutomaton geodesic_core(SubgroupHandle const& h, SearchBudget const& budget) {
    Group const&      G = h.group();
    std::size_t const L = G.alphabet().letter_count();
    CoreAutomaton     core;
    if (h.exact()) {
      auto const& graph = h.graph();
      core.states = graph.shortest_paths();
      for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
        core.transitions.emplace_back(L, -1);
        for (Letter x = 0; x < L; ++x) {
          core.transitions[v][x] = graph.target(v, x);
        }
      }
      return core;
    }

    std::size_t const K = static_cast<std::size_t>(h.K());
    auto              N = build_neighborhood(h, K + 1, budget);
    core.bounded = N.bounded;
    std::set<std::pair<std::size_t, Letter>> used;
    std::set<Word>                           traced;
    std::size_t                              quiet = 0;
    bool                                     stable = false;
    for (std::size_t r = 1; r <= budget.radius_cap; ++r) {
      auto elems = subgroup_elements(h, r, budget);
      core.bounded = core.bounded || !elems.complete;
      bool grew = false;
      for (auto const& e : elems.elements) {
        if (e.empty() || !traced.insert(e).second) {
          continue;
        }
        for (auto const& geo : G.geodesic_representatives(G.evaluate(e))) {
          std::size_t v = 0;
          for (Letter x : geo) {
            auto t = N.target(v, x);
            if (t < 0) {
              core.escaped = true;
              break;
            }
            grew = used.insert({v, x}).second || grew;
            used.insert({static_cast<std::size_t>(t), inverse_letter(x)});
            v = static_cast<std::size_t>(t);
          }
        }
      }
      quiet = grew ? 0 : quiet + 1;
      if (r >= 2 * K + 1 && quiet >= 2) {
        stable = true;
        break;
      }
    }
    core.bounded = core.bounded || !stable;

    std::map<std::size_t, std::size_t> id{{0, 0}};
    std::vector<std::size_t>           order{0};
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (Letter x = 0; x < L; ++x) {
        if (used.count({order[i], x}) == 0) {
          continue;
        }
        auto t = static_cast<std::size_t>(N.target(order[i], x));
        if (id.emplace(t, order.size()).second) {
          order.push_back(t);
        }
      }
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      core.states.push_back(N.representatives[order[i]]);
      core.transitions.emplace_back(L, -1);
      for (Letter x = 0; x < L; ++x) {
        if (used.count({order[i], x}) != 0) {
          core.transitions[i][x] = static_cast<std::int32_t>(
              id.at(static_cast<std::size_t>(N.target(order[i], x))));
        }
      }
    }
    return core;
  }

  Decision check_quasiconvexity(SubgroupHandle const& h, SearchBudget const& budget) {
    std::size_t const K = static_cast<std::size_t>(h.K());
    if (h.exact()) {
      return {h.graph().radius() <= K, false};
    }
    auto core = geodesic_core(h, budget);
    bool ok = !core.escaped;
    for (auto const& s : core.states) {
      ok = ok && h.group().geodesic_length(s) <= K;
    }
    return {ok, core.bounded};
  }

  Decision loop_label_conjugation_test(SubgroupHandle const& h,
                                       Word const&           g,
                                       Word const&           w,
                                       SearchBudget const&   budget) {
    auto c = membership(h, g * w * g.inverse(), budget);
    return {c.in(), c.bounded()};
  }

}  // namespace conjint
