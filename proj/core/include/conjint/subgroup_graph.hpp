// Finite labelled graphs over the letter codes of an alphabet: Stallings
// folding with generator-word edge weights, trimming, fibre products and
// free bases.
//
// Edge weights are words over generator symbols: symbol 2i stands for the
// i-th subgroup generator, 2i+1 for its inverse. Along any loop at the base
// the product of the weights evaluates, after substituting generators, to
// the loop label. This is what turns graph acceptance into a witness.

#ifndef CONJINT_SUBGROUP_GRAPH_HPP_
#define CONJINT_SUBGROUP_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "conjint/words.hpp"

namespace conjint {

  struct RawEdge {
    std::size_t from;
    Letter      label;
    std::size_t to;
    Word        weight;
  };

  class SubgroupGraph {
   public:
    static constexpr std::int32_t none = -1;

    SubgroupGraph() = default;

    // Folded graph of the subgroup generated by `generators`, vertex 0 the
    // base. Non-base vertices of degree one are trimmed.
    static SubgroupGraph from_generators(std::vector<Word> const& generators,
                                         std::size_t              letter_count);

    // Folds an arbitrary labelled graph whose base is vertex 0. Entries of
    // `tracked` are rewritten to the ids of the folded graph. No trimming.
    static SubgroupGraph fold(std::size_t               vertex_count,
                              std::vector<RawEdge>      edges,
                              std::size_t               letter_count,
                              std::vector<std::size_t>* tracked = nullptr);

    // Component of (0,0) in the synchronised product, trimmed. Weights are
    // taken from the first factor.
    static SubgroupGraph product(SubgroupGraph const& a, SubgroupGraph const& b);

    std::size_t vertex_count() const noexcept {
      return next_.size();
    }
    std::size_t letter_count() const noexcept {
      return letters_;
    }
    // Number of geometric edges (each counted once).
    std::size_t edge_count() const;
    std::size_t degree(std::size_t v) const;

    std::int32_t target(std::size_t v, Letter x) const {
      return next_[v][x];
    }
    Word const& weight(std::size_t v, Letter x) const {
      return weight_[v][x];
    }

    struct ReadResult {
      std::size_t vertex;
      std::size_t consumed;
    };
    // Follows w from `from` as far as edges exist.
    ReadResult read(Word const& w, std::size_t from = 0) const;
    bool       accepts(Word const& w) const;
    // Product of weights along the loop labelled w, or nullopt if w does not
    // label a loop at the base.
    std::optional<Word> witness(Word const& w) const;

    // Shortlex-least shortest label from the base to each vertex.
    std::vector<Word> shortest_paths() const;
    // Largest distance of a vertex from the base.
    std::size_t radius() const;

    SubgroupGraph     trimmed() const;
    // Labels of the spanning-tree complement, a free basis of the subgroup.
    std::vector<Word> basis() const;
    std::size_t       rank() const {
      return edge_count() + 1 - vertex_count();
    }

    // Graphs from fold() and product() are numbered in breadth-first order,
    // so equal subgroups give identical transition tables.
    bool same_subgroup(SubgroupGraph const& other) const {
      return next_ == other.next_;
    }

    // Visits every reduced loop label at the base of length 1..max_len in
    // depth-first lexicographic order. `keep_going` prunes a prefix when it
    // returns false; the visitor returns false to stop the walk.
    void for_each_loop(std::size_t                                  max_len,
                       std::function<bool(Word const&)> const&      visit,
                       std::function<bool(std::vector<Letter> const&)> const& keep_going
                       = nullptr) const;

   private:
    std::size_t                            letters_ = 0;
    std::vector<std::vector<std::int32_t>> next_;
    std::vector<std::vector<Word>>         weight_;
  };

  // Converts a weight word into (generator index, inverted) factors.
  std::vector<std::pair<std::size_t, bool>> weight_factors(Word const& weight);

}  // namespace conjint

#endif  // CONJINT_SUBGROUP_GRAPH_HPP_
