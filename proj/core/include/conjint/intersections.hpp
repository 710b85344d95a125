// Intersections of conjugates H ∩ g^-1 H g: generating sets by length
// filter, loop splitting, fibre products and finiteness verdicts.

#ifndef CONJINT_INTERSECTIONS_HPP_
#define CONJINT_INTERSECTIONS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conjint/coset_geometry.hpp"

namespace conjint {

  enum class Finiteness { finite, infinite, finite_bounded };
  std::string_view finiteness_name(Finiteness f);

  struct FinitenessVerdict {
    Finiteness  kind = Finiteness::finite;
    std::size_t order = 1;  // meaningful for `finite`

    bool infinite() const noexcept {
      return kind == Finiteness::infinite;
    }
    bool bounded() const noexcept {
      return kind == Finiteness::finite_bounded;
    }
  };

  struct IntersectionReport {
    std::vector<Word> generating_set;
    std::size_t       elements_found = 0;
    // Enumeration cutoff actually used; every generator is at most this long.
    std::size_t length_bound = 0;
    // 2|g| + 2M^2 + 1 in decimal, with M the neighbourhood size.
    std::string theoretical_bound;
    bool        theoretical_bound_swept = false;
    std::size_t M = 0;
    FinitenessVerdict finiteness;
    // Exact strategy: the generating set spans the fibre-product subgroup.
    std::optional<bool>              fiber_product_agrees;
    std::optional<std::vector<Word>> basis;
    std::optional<std::size_t>       rank;
    bool                             bounded = false;
  };

  // Throws InvalidConjugator when g lies in H.
  IntersectionReport conjugate_intersection_generators(SubgroupHandle const& h,
                                                       Word const&           g,
                                                       SearchBudget const&   budget = {});

  // Elements s of H with |s| <= radius and g s g^-1 in H, shortlex-sorted,
  // identity included.
  ElementSet intersection_elements(SubgroupHandle const& h,
                                   Word const&           g,
                                   std::size_t           radius,
                                   SearchBudget const&   budget = {});

  struct SplitResult {
    Word        h1;
    Word        h2;
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t M = 0;
  };

  // Splits w in H with g w g^-1 in H and |w| > M^2 into w = h1 h2 with both
  // factors in H and in g^-1 H g, |h1| < 2M^2+1 and |h2| < |w|. The loop
  // for w is traced at H.1 and in parallel at Hg.
  SplitResult split_long_loop(SubgroupHandle const& h,
                              Word const&           g,
                              Word const&           w,
                              SearchBudget const&   budget = {});

  // A ∩ B from the product of the folded graphs (exact handles only).
  IntersectionReport fiber_product_intersection(SubgroupHandle const& a,
                                                SubgroupHandle const& b);

  FinitenessVerdict is_intersection_infinite(SubgroupHandle const& h,
                                             Word const&           g,
                                             SearchBudget const&   budget = {});

  // Finiteness of H ∩ g_1^-1 H g_1 ∩ ... ∩ g_n^-1 H g_n. The conjugators
  // and 1 must lie in pairwise distinct cosets of H.
  FinitenessVerdict multi_intersection_infinite(SubgroupHandle const&    h,
                                                std::vector<Word> const& conjugators,
                                                SearchBudget const&      budget = {});

  // g^-1 H g with constant K + 2 delta + 2|g|.
  SubgroupHandle conjugate_handle(SubgroupHandle const& h, Word const& g);

  struct IntersectionConstant {
    std::size_t K0 = 0;
    std::size_t M_A = 0;
    std::size_t M_B = 0;
    std::size_t K = 0;
    bool        bounded = false;
  };
  IntersectionConstant intersection_quasiconvexity_constant(SubgroupHandle const& a,
                                                            SubgroupHandle const& b,
                                                            SearchBudget const&   budget = {});

  // Nontrivial elements of H of length <= 2K+1, shortlex-sorted.
  std::vector<Word> short_generator_set(SubgroupHandle const& h,
                                        SearchBudget const&   budget = {});

  // Closure test on the subgroup generated by `generators`: more than
  // C = group.finite_order_bound() elements, or a generator without a
  // relation g^j = 1 for j <= C, means infinite.
  FinitenessVerdict subgroup_finiteness(Group const&             group,
                                        std::vector<Word> const& generators,
                                        SearchBudget const&      budget = {});

}  // namespace conjint

#endif  // CONJINT_INTERSECTIONS_HPP_
