#include "conjint/subgroup_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "conjint/errors.hpp"

namespace conjint {

  namespace {
    using Table = std::vector<std::vector<std::int32_t>>;
    using Weights = std::vector<std::vector<Word>>;

    struct Oriented {
      std::size_t from;
      Letter      label;
      std::size_t to;
      Word        weight;
    };

    Oriented orient(RawEdge const& e, int o) {
      if (o == 0) {
        return {e.from, e.label, e.to, e.weight};
      }
      return {e.to, inverse_letter(e.label), e.from, e.weight.inverse()};
    }

    // Breadth-first renumbering of the vertices reachable from 0 that are
    // flagged alive. Returns old id -> new id (-1 for dropped vertices).
    std::vector<std::int32_t> bfs_order(Table const&             next,
                                        std::vector<bool> const& alive) {
      std::vector<std::int32_t> id(next.size(), -1);
      std::deque<std::size_t>   queue{0};
      id[0] = 0;
      std::int32_t count = 1;
      while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (auto t : next[v]) {
          if (t >= 0 && alive[t] && id[t] < 0) {
            id[t] = count++;
            queue.push_back(static_cast<std::size_t>(t));
          }
        }
      }
      return id;
    }
  }  // namespace

  SubgroupGraph SubgroupGraph::fold(std::size_t               n,
                                    std::vector<RawEdge>      edges,
                                    std::size_t               letter_count,
                                    std::vector<std::size_t>* tracked) {
    if (n == 0) {
      throw PreconditionError("graph without a base vertex");
    }
    for (auto& e : edges) {
      if (is_inverse(e.label)) {
        std::swap(e.from, e.to);
        e.label = inverse_letter(e.label);
        e.weight = e.weight.inverse();
      }
    }
    std::vector<std::int64_t> slot(n * letter_count);
    bool                      changed = true;
    while (changed) {
      changed = false;
      std::fill(slot.begin(), slot.end(), -1);
      for (std::size_t i = 0; i < edges.size() && !changed; ++i) {
        for (int o = 0; o < 2 && !changed; ++o) {
          Oriented a = orient(edges[i], o);
          auto&    s = slot[a.from * letter_count + a.label];
          if (s < 0) {
            s = static_cast<std::int64_t>(2 * i + o);
            continue;
          }
          Oriented b = orient(edges[s / 2], static_cast<int>(s % 2));
          changed = true;
          if (a.to == b.to) {
            // Parallel edges evaluate to the same element of F(X).
            edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(i));
            break;
          }
          std::size_t keep = b.to, gone = a.to;
          Word        w_keep = b.weight, w_gone = a.weight;
          if (gone == 0) {
            std::swap(keep, gone);
            std::swap(w_keep, w_gone);
          }
          // Re-gauge `gone` so the edge into it carries w_keep, then rename.
          Word g = w_gone.inverse() * w_keep;
          Word g_inv = g.inverse();
          for (auto& e : edges) {
            if (e.to == gone) {
              e.weight = e.weight * g;
            }
            if (e.from == gone) {
              e.weight = g_inv * e.weight;
            }
            if (e.to == gone) {
              e.to = keep;
            }
            if (e.from == gone) {
              e.from = keep;
            }
          }
          if (tracked != nullptr) {
            for (auto& t : *tracked) {
              if (t == gone) {
                t = keep;
              }
            }
          }
        }
      }
    }

    Table   next(n, std::vector<std::int32_t>(letter_count, none));
    Weights weight(n, std::vector<Word>(letter_count));
    for (auto const& e : edges) {
      next[e.from][e.label] = static_cast<std::int32_t>(e.to);
      weight[e.from][e.label] = e.weight;
      next[e.to][inverse_letter(e.label)] = static_cast<std::int32_t>(e.from);
      weight[e.to][inverse_letter(e.label)] = e.weight.inverse();
    }
    auto id = bfs_order(next, std::vector<bool>(n, true));

    SubgroupGraph out;
    out.letters_ = letter_count;
    std::size_t count = static_cast<std::size_t>(*std::max_element(id.begin(), id.end()) + 1);
    out.next_.assign(count, std::vector<std::int32_t>(letter_count, none));
    out.weight_.assign(count, std::vector<Word>(letter_count));
    for (std::size_t v = 0; v < n; ++v) {
      if (id[v] < 0) {
        continue;
      }
      for (std::size_t x = 0; x < letter_count; ++x) {
        if (next[v][x] >= 0) {
          out.next_[id[v]][x] = id[next[v][x]];
          out.weight_[id[v]][x] = std::move(weight[v][x]);
        }
      }
    }
    if (tracked != nullptr) {
      for (auto& t : *tracked) {
        if (id[t] < 0) {
          throw InternalConsistencyError("tracked vertex disconnected from base");
        }
        t = static_cast<std::size_t>(id[t]);
      }
    }
    return out;
  }

  SubgroupGraph SubgroupGraph::from_generators(std::vector<Word> const& generators,
                                               std::size_t              letter_count) {
    std::size_t          n = 1;
    std::vector<RawEdge> edges;
    for (std::size_t i = 0; i < generators.size(); ++i) {
      Word const& g = generators[i];
      if (g.empty()) {
        continue;
      }
      for (std::size_t j = 0; j < g.size(); ++j) {
        std::size_t from = j == 0 ? 0 : n + j - 1;
        std::size_t to = j + 1 == g.size() ? 0 : n + j;
        Word        w = j == 0 ? Word{make_letter(i, false)} : Word{};
        edges.push_back({from, g[j], to, std::move(w)});
      }
      n += g.size() - 1;
    }
    return fold(n, std::move(edges), letter_count).trimmed();
  }

  SubgroupGraph SubgroupGraph::product(SubgroupGraph const& a, SubgroupGraph const& b) {
    if (a.letters_ != b.letters_) {
      throw PreconditionError("product of graphs over different alphabets");
    }
    std::size_t const                                      L = a.letters_;
    std::map<std::pair<std::int32_t, std::int32_t>, std::size_t> index;
    std::vector<std::pair<std::int32_t, std::int32_t>>     states{{0, 0}};
    index[{0, 0}] = 0;
    Table   next;
    Weights weight;
    for (std::size_t i = 0; i < states.size(); ++i) {
      auto [p, q] = states[i];
      next.emplace_back(L, none);
      weight.emplace_back(L);
      for (Letter x = 0; x < L; ++x) {
        auto tp = a.next_[p][x], tq = b.next_[q][x];
        if (tp < 0 || tq < 0) {
          continue;
        }
        auto [it, fresh] = index.try_emplace({tp, tq}, states.size());
        if (fresh) {
          states.emplace_back(tp, tq);
        }
        next[i][x] = static_cast<std::int32_t>(it->second);
        weight[i][x] = a.weight_[p][x];
      }
    }
    SubgroupGraph out;
    out.letters_ = L;
    out.next_ = std::move(next);
    out.weight_ = std::move(weight);
    return out.trimmed();
  }

  std::size_t SubgroupGraph::edge_count() const {
    std::size_t count = 0;
    for (auto const& row : next_) {
      for (std::size_t x = 0; x < letters_; x += 2) {
        count += row[x] >= 0 ? 1 : 0;
      }
    }
    return count;
  }

  std::size_t SubgroupGraph::degree(std::size_t v) const {
    return static_cast<std::size_t>(
        std::count_if(next_[v].begin(), next_[v].end(), [](auto t) { return t >= 0; }));
  }

  SubgroupGraph SubgroupGraph::trimmed() const {
    std::size_t const        n = next_.size();
    std::vector<bool>        alive(n, true);
    std::vector<std::size_t> deg(n);
    std::deque<std::size_t>  queue;
    for (std::size_t v = 0; v < n; ++v) {
      deg[v] = degree(v);
      if (v != 0 && deg[v] <= 1) {
        queue.push_back(v);
      }
    }
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      if (!alive[v]) {
        continue;
      }
      alive[v] = false;
      for (auto t : next_[v]) {
        if (t >= 0 && alive[t] && static_cast<std::size_t>(t) != v) {
          if (--deg[t] <= 1 && t != 0) {
            queue.push_back(static_cast<std::size_t>(t));
          }
        }
      }
    }
    auto          id = bfs_order(next_, alive);
    SubgroupGraph out;
    out.letters_ = letters_;
    std::int32_t count = *std::max_element(id.begin(), id.end()) + 1;
    out.next_.assign(count, std::vector<std::int32_t>(letters_, none));
    out.weight_.assign(count, std::vector<Word>(letters_));
    for (std::size_t v = 0; v < n; ++v) {
      if (id[v] < 0) {
        continue;
      }
      for (std::size_t x = 0; x < letters_; ++x) {
        auto t = next_[v][x];
        if (t >= 0 && id[t] >= 0) {
          out.next_[id[v]][x] = id[t];
          out.weight_[id[v]][x] = weight_[v][x];
        }
      }
    }
    return out;
  }

  SubgroupGraph::ReadResult SubgroupGraph::read(Word const& w, std::size_t from) const {
    std::size_t v = from;
    std::size_t i = 0;
    for (; i < w.size(); ++i) {
      auto t = next_[v][w[i]];
      if (t < 0) {
        break;
      }
      v = static_cast<std::size_t>(t);
    }
    return {v, i};
  }

  bool SubgroupGraph::accepts(Word const& w) const {
    auto r = read(w);
    return r.consumed == w.size() && r.vertex == 0;
  }

  std::optional<Word> SubgroupGraph::witness(Word const& w) const {
    std::size_t v = 0;
    Word        product;
    for (Letter x : w) {
      auto t = next_[v][x];
      if (t < 0) {
        return std::nullopt;
      }
      product *= weight_[v][x];
      v = static_cast<std::size_t>(t);
    }
    if (v != 0) {
      return std::nullopt;
    }
    return product;
  }

  std::vector<Word> SubgroupGraph::shortest_paths() const {
    std::vector<std::optional<Word>> path(next_.size());
    std::deque<std::size_t>          queue{0};
    path[0] = Word{};
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (Letter x = 0; x < letters_; ++x) {
        auto t = next_[v][x];
        if (t >= 0 && !path[t]) {
          Word w = *path[v];
          w.push_back(x);
          path[t] = std::move(w);
          queue.push_back(static_cast<std::size_t>(t));
        }
      }
    }
    std::vector<Word> out;
    out.reserve(path.size());
    for (auto& p : path) {
      out.push_back(p ? std::move(*p) : Word{});
    }
    return out;
  }

  std::size_t SubgroupGraph::radius() const {
    std::size_t r = 0;
    for (auto const& p : shortest_paths()) {
      r = std::max(r, p.size());
    }
    return r;
  }

  std::vector<Word> SubgroupGraph::basis() const {
    std::size_t const         n = next_.size();
    std::vector<Word>         path(n);
    std::vector<std::int32_t> parent(n, none);
    std::vector<Letter>       via(n, 0);
    std::vector<bool>         seen(n, false);
    std::deque<std::size_t>   queue{0};
    seen[0] = true;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (Letter x = 0; x < letters_; ++x) {
        auto t = next_[v][x];
        if (t >= 0 && !seen[t]) {
          seen[t] = true;
          parent[t] = static_cast<std::int32_t>(v);
          via[t] = x;
          path[t] = path[v] * Word{x};
          queue.push_back(static_cast<std::size_t>(t));
        }
      }
    }
    std::vector<Word> out;
    for (std::size_t v = 0; v < n; ++v) {
      for (Letter x = 0; x < letters_; x += 2) {
        auto t = next_[v][x];
        if (t < 0) {
          continue;
        }
        bool tree = (parent[t] == static_cast<std::int32_t>(v) && via[t] == x)
                    || (parent[v] == t && via[v] == inverse_letter(x));
        if (!tree) {
          out.push_back(path[v] * Word{x} * path[t].inverse());
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void SubgroupGraph::for_each_loop(
      std::size_t                                            max_len,
      std::function<bool(Word const&)> const&                visit,
      std::function<bool(std::vector<Letter> const&)> const& keep_going) const {
    std::vector<Letter> buf;
    bool                stop = false;
    auto rec = [&](auto&& self, std::size_t v) -> void {
      for (Letter x = 0; x < letters_ && !stop; ++x) {
        if (!buf.empty() && buf.back() == inverse_letter(x)) {
          continue;
        }
        auto t = next_[v][x];
        if (t < 0) {
          continue;
        }
        buf.push_back(x);
        if (!keep_going || keep_going(buf)) {
          if (t == 0 && !visit(Word(buf))) {
            stop = true;
          } else if (buf.size() < max_len) {
            self(self, static_cast<std::size_t>(t));
          }
        }
        buf.pop_back();
      }
    };
    if (max_len > 0) {
      rec(rec, 0);
    }
  }

  std::vector<std::pair<std::size_t, bool>> weight_factors(Word const& weight) {
    std::vector<std::pair<std::size_t, bool>> out;
    out.reserve(weight.size());
    for (Letter s : weight) {
      out.emplace_back(generator_of(s), is_inverse(s));
    }
    return out;
  }

}  // namespace conjint
