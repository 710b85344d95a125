#include "conjint/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "conjint/errors.hpp"

namespace conjint {

  std::vector<Word> EnumeratedSubgroupBall::words(Group const& G) const {
    std::vector<Word> out;
    for (auto const& [e, w] : elements) {
      out.push_back(G.representative(e));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  EnumeratedSubgroupBall oracle_subgroup_ball(SubgroupHandle const& h,
                                              std::size_t           radius,
                                              std::size_t           depth,
                                              std::size_t           max_elements) {
    Group const&           G = h.group();
    EnumeratedSubgroupBall out;
    out.radius = radius;
    out.depth = depth;

    std::vector<std::pair<Element, Factor>> steps;
    for (std::size_t i = 0; i < h.generators().size(); ++i) {
      Element e = G.evaluate(h.generators()[i]);
      steps.push_back({e, {i, false}});
      steps.push_back({G.inverse(e), {i, true}});
    }

    std::unordered_map<Element, std::vector<Factor>, ElementHash> all{{G.identity(), {}}};
    std::vector<Element> frontier{G.identity()};
    std::size_t          previous = 1;  // filtered count at depth - 1
    std::size_t          filtered = 1;
    for (std::size_t d = 1; d <= depth; ++d) {
      std::vector<Element> next;
      for (auto const& e : frontier) {
        for (auto const& [s, f] : steps) {
          Element p = G.multiply(e, s);
          if (all.count(p) != 0) {
            continue;
          }
          if (all.size() >= max_elements) {
            throw ResourceCapExceeded("oracle expansion exceeds "
                                      + std::to_string(max_elements) + " elements");
          }
          auto w = all.at(e);
          w.push_back(f);
          all.emplace(p, std::move(w));
          next.push_back(std::move(p));
        }
      }
      frontier = std::move(next);
      previous = filtered;
      filtered = 0;
      for (auto const& [e, w] : all) {
        filtered += G.geodesic_length(e) <= radius ? 1 : 0;
      }
    }
    out.stable = depth > 0 && previous == filtered;
    for (auto& [e, w] : all) {
      if (G.geodesic_length(e) <= radius) {
        out.elements.emplace(e, std::move(w));
      }
    }
    return out;
  }

  OracleIntersection oracle_intersection(SubgroupHandle const& h,
                                         Word const&           g,
                                         std::size_t           radius,
                                         std::size_t           depth) {
    Group const&      G = h.group();
    std::size_t const len_g = G.geodesic_length(g);
    auto              small = oracle_subgroup_ball(h, radius, depth);
    auto              large = oracle_subgroup_ball(h, radius + 2 * len_g, depth);
    Element const     eg = G.evaluate(g);
    Element const     eg_inv = G.inverse(eg);
    OracleIntersection out;
    out.stable = small.stable && large.stable;
    for (auto const& [e, w] : small.elements) {
      if (large.contains(G.multiply(G.multiply(eg, e), eg_inv))) {
        out.elements.push_back(G.representative(e));
      }
    }
    std::sort(out.elements.begin(), out.elements.end());
    return out;
  }

  OracleDoubleCosets oracle_double_cosets(SubgroupHandle const& h,
                                          std::size_t           radius,
                                          std::size_t           depth) {
    Group const&      G = h.group();
    auto              ball = G.ball(radius);
    std::size_t const s_radius = 2 * radius + 2 * static_cast<std::size_t>(h.K()) + 2;
    auto              shifts = oracle_subgroup_ball(h, s_radius, depth);
    auto              members = oracle_subgroup_ball(h, 2 * radius + s_radius, depth);

    std::vector<std::size_t> parent(ball.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };

    for (std::size_t i = 0; i < ball.size(); ++i) {
      for (std::size_t j = i + 1; j < ball.size(); ++j) {
        if (find(i) == find(j)) {
          continue;
        }
        Element const inv_j = G.inverse(ball[j].element);
        for (auto const& [s, w] : shifts.elements) {
          Element x = G.multiply(G.multiply(ball[i].element, s), inv_j);
          if (members.contains(x)) {
            parent[find(j)] = find(i);
            break;
          }
        }
      }
    }

    std::map<std::size_t, std::vector<Word>> groups;
    for (std::size_t i = 0; i < ball.size(); ++i) {
      groups[find(i)].push_back(ball[i].representative);
    }
    OracleDoubleCosets out;
    out.stable = shifts.stable && members.stable;
    for (auto& [root, words] : groups) {
      std::sort(words.begin(), words.end());
      out.classes.push_back(std::move(words));
    }
    std::sort(out.classes.begin(), out.classes.end());
    return out;
  }

  bool oracle_member(SubgroupHandle const& h, Word const& w, std::size_t depth) {
    Group const& G = h.group();
    Element      e = G.evaluate(w);
    return oracle_subgroup_ball(h, G.geodesic_length(e), depth).contains(e);
  }

}  // namespace conjint
