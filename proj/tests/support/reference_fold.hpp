// A deliberately plain folding of subgroup graphs over free groups, used
// to cross-check the library. Vertices are merged with a union-find until
// no vertex has two edges with the same label.

#ifndef CONJINT_TESTS_REFERENCE_FOLD_HPP_
#define CONJINT_TESTS_REFERENCE_FOLD_HPP_

#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "conjint/words.hpp"

namespace testing {

  class RefGraph {
   public:
    // Labels are letters; every edge is stored with its inverse.
    static RefGraph from_generators(std::vector<conjint::Word> const& gens) {
      RefGraph g;
      g.n_ = 1;
      std::vector<std::tuple<int, conjint::Letter, int>> edges;
      for (auto const& w : gens) {
        int prev = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
          int next = i + 1 == w.size() ? 0 : g.n_++;
          edges.emplace_back(prev, w[i], next);
          prev = next;
        }
      }
      g.build(edges);
      return g;
    }

    // Component of (0,0) in the product, labels synchronised.
    static RefGraph product(RefGraph const& a, RefGraph const& b) {
      std::map<std::pair<int, int>, int>                id{{{0, 0}, 0}};
      std::vector<std::pair<int, int>>                  order{{0, 0}};
      std::vector<std::tuple<int, conjint::Letter, int>> edges;
      for (std::size_t i = 0; i < order.size(); ++i) {
        auto [u, v] = order[i];
        for (auto const& [x, ut] : a.out_[u]) {
          auto it = b.out_[v].find(x);
          if (it == b.out_[v].end()) {
            continue;
          }
          std::pair<int, int> t{ut, it->second};
          auto [pos, fresh] = id.emplace(t, static_cast<int>(order.size()));
          if (fresh) {
            order.push_back(t);
          }
          if (!conjint::is_inverse(x)) {
            edges.emplace_back(static_cast<int>(i), x, pos->second);
          }
        }
      }
      RefGraph g;
      g.n_ = static_cast<int>(order.size());
      g.build(edges);
      return g;
    }

    bool accepts(conjint::Word const& w) const {
      int v = 0;
      for (auto x : w) {
        auto it = out_[v].find(x);
        if (it == out_[v].end()) {
          return false;
        }
        v = it->second;
      }
      return v == 0;
    }

    // Rank of the loop group at the base: edges - vertices + 1 over the
    // component of the base.
    long rank() const {
      std::set<int>    seen{0};
      std::vector<int> stack{0};
      long             edges = 0;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto const& [x, t] : out_[v]) {
          if (!conjint::is_inverse(x)) {
            ++edges;
          }
          if (seen.insert(t).second) {
            stack.push_back(t);
          }
        }
      }
      // a graph whose only loops are trees hanging off the base has rank 0
      return edges - static_cast<long>(seen.size()) + 1;
    }

   private:
    void build(std::vector<std::tuple<int, conjint::Letter, int>> const& raw) {
      std::vector<int> parent(static_cast<std::size_t>(n_));
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](int x) {
        while (parent[x] != x) {
          x = parent[x] = parent[parent[x]];
        }
        return x;
      };
      // directed edges in both orientations
      std::vector<std::tuple<int, conjint::Letter, int>> all;
      for (auto const& [u, x, v] : raw) {
        all.emplace_back(u, x, v);
        all.emplace_back(v, conjint::inverse_letter(x), u);
      }
      bool changed = true;
      while (changed) {
        changed = false;
        std::map<std::pair<int, conjint::Letter>, int> seen;
        for (auto const& [u, x, v] : all) {
          auto key = std::make_pair(find(u), x);
          auto it = seen.find(key);
          if (it == seen.end()) {
            seen.emplace(key, find(v));
          } else if (find(it->second) != find(v)) {
            parent[find(v)] = find(it->second);
            changed = true;
          }
        }
      }
      std::map<int, int> id;
      for (int v = 0; v < n_; ++v) {
        id.emplace(find(v), static_cast<int>(id.size()));
      }
      // keep the base at 0
      int base = id.at(find(0));
      for (auto& [root, k] : id) {
        if (k == base) {
          k = 0;
        } else if (k == 0) {
          k = base;
        }
      }
      out_.assign(id.size(), {});
      for (auto const& [u, x, v] : all) {
        out_[id.at(find(u))][x] = id.at(find(v));
      }
      n_ = static_cast<int>(id.size());
    }

    int                                          n_ = 0;
    std::vector<std::map<conjint::Letter, int>> out_;
  };

}  // namespace testing

#endif
