// Weak width, width and height of a quasiconvex subgroup, almost
// malnormality, width candidate sets and the constants that drive them.

#ifndef CONJINT_INVARIANTS_HPP_
#define CONJINT_INVARIANTS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conjint/coset_geometry.hpp"
#include "conjint/intersections.hpp"

namespace conjint {

  enum class Mode { paper_greedy, exact_search };
  std::string_view mode_name(Mode m);

  // Verdict on the intersection of the conjugates g^-1 H g, g in family.
  struct FamilyCertificate {
    std::vector<Word> family;
    FinitenessVerdict verdict;
  };

  struct CandidateSet {
    Word              g_i;
    std::vector<Word> candidates;
    std::size_t       radius = 0;       // enumeration radius used
    std::size_t       full_radius = 0;  // |g_i| + 8K + 24 delta
    bool              truncated = false;
  };

  struct InvariantReport {
    Mode        mode = Mode::exact_search;
    bool        finite_subgroup = false;
    std::size_t ball_radius = 0;      // 2K + 2 delta
    std::size_t ball_size = 0;        // |L'|
    std::vector<Word> double_cosets;  // L''
    std::vector<Word> L;
    std::vector<Word> L1;
    std::vector<CandidateSet> A;
    std::vector<Word>         universe;  // exact width search
    std::vector<Word>         L_w;
    std::vector<Word>         L_h;
    std::size_t               weak_width = 0;
    std::optional<std::size_t> width;
    std::optional<std::size_t> height;
    bool                       bounded = false;
    bool                       candidate_radius_truncated = false;
    std::vector<FamilyCertificate> certificates;
  };

  InvariantReport weak_width(SubgroupHandle const& h, SearchBudget const& budget = {});
  InvariantReport width(SubgroupHandle const& h, Mode mode, SearchBudget const& budget = {});
  InvariantReport height(SubgroupHandle const& h, Mode mode, SearchBudget const& budget = {});

  // Coset representatives g in H g_i H with Hg != Hg_i, g shortest in Hg and
  // g^-1 H g ∩ g_i^-1 H g_i infinite. The search radius is
  // min(|g_i| + 8K + 24 delta, budget.candidate_radius).
  CandidateSet candidate_set(SubgroupHandle const& h,
                             Word const&           g_i,
                             SearchBudget const&   budget = {});

  struct WidthDecomposition {
    Word h_i;
    Word s_i;
    Word k_i;
    Word target;  // g_i g^-1
  };
  // Throws PreconditionError when a hypothesis fails and
  // InternalConsistencyError when no decomposition exists within the bounds.
  WidthDecomposition check_width_decomposition(SubgroupHandle const& h,
                                               Word const&           g_i,
                                               Word const&           g,
                                               SearchBudget const&   budget = {});

  Decision almost_malnormal(SubgroupHandle const& h, SearchBudget const& budget = {});

  struct MalnormalityResult {
    bool                malnormal_up_to_budget = true;
    std::optional<Word> witness;
    std::vector<Word>   witness_elements;  // nontrivial elements of H ∩ g^-1 H g
    std::size_t         swept_radius = 0;
    std::size_t         double_cosets_checked = 0;
    bool                bounded = false;
  };
  // Sweeps double-coset representatives of length <= radius in shortlex
  // order and looks for a nontrivial element of H ∩ g^-1 H g shorter than
  // 2K + 8 delta + 2.
  MalnormalityResult malnormality_semidecision(SubgroupHandle const& h,
                                               std::size_t           radius,
                                               SearchBudget const&   budget = {});

  struct ConstantsReport {
    long        K = 0;
    HalfInteger delta;
    std::size_t g_length = 0;
    long        K_g = 0;
    std::size_t M_radius = 0;  // 2 delta + K + |g|
    std::size_t M = 0;
    std::string crude_M_bound;  // 2l (2l-1)^(M_radius - 1), decimal
    std::size_t short_generator_bound = 0;  // 2K + 1
    HalfInteger weak_width_radius;          // 2K + 2 delta
    HalfInteger small_intersection_bound;   // 2K + 8 delta + 2
    HalfInteger s_bound;                    // 2K + 3 delta
    HalfInteger k_bound;                    // 6K + 21 delta
    HalfInteger candidate_radius;           // 8K + 24 delta
    bool        bounded = false;
  };
  ConstantsReport constants_report(SubgroupHandle const& h,
                                   Word const&           g,
                                   SearchBudget const&   budget = {});

}  // namespace conjint

#endif  // CONJINT_INVARIANTS_HPP_
