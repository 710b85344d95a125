// Slow reference computations by direct product expansion. Nothing here
// calls into the folded-graph or saturation code.

#ifndef CONJINT_ORACLE_HPP_
#define CONJINT_ORACLE_HPP_

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "conjint/coset_geometry.hpp"
#include "conjint/group.hpp"

namespace conjint {

  struct EnumeratedSubgroupBall {
    std::size_t radius = 0;
    std::size_t depth = 0;
    // Element -> product of generators (and inverses) evaluating to it.
    std::unordered_map<Element, std::vector<Factor>, ElementHash> elements;
    // The radius-filtered set did not change between depth-1 and depth.
    bool stable = false;

    bool contains(Element const& e) const {
      return elements.count(e) != 0;
    }
    // Canonical words, shortlex-sorted.
    std::vector<Word> words(Group const& G) const;
  };

  // Products of at most `depth` generators whose value lies in ball(radius).
  EnumeratedSubgroupBall oracle_subgroup_ball(SubgroupHandle const& h,
                                              std::size_t           radius,
                                              std::size_t           depth,
                                              std::size_t max_elements = 2'000'000);

  struct OracleIntersection {
    std::vector<Word> elements;  // shortlex, identity included
    bool              stable = false;
  };

  // Elements e of the oracle ball with g e g^-1 in the oracle ball of
  // radius radius + 2|g|.
  OracleIntersection oracle_intersection(SubgroupHandle const& h,
                                         Word const&           g,
                                         std::size_t           radius,
                                         std::size_t           depth);

  struct OracleDoubleCosets {
    // Each class shortlex-sorted, classes ordered by their first word.
    std::vector<std::vector<Word>> classes;
    bool                           stable = false;
  };

  // Partitions ball(radius) into double cosets: g1 ~ g2 when
  // g1 s g2^-1 lies in H for some s in H with |s| <= 2 radius + 2K + 2.
  OracleDoubleCosets oracle_double_cosets(SubgroupHandle const& h,
                                          std::size_t           radius,
                                          std::size_t           depth);

  // w in H, found by expansion.
  bool oracle_member(SubgroupHandle const& h, Word const& w, std::size_t depth);

}  // namespace conjint

#endif  // CONJINT_ORACLE_HPP_
