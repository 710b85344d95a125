// Subgroup handles, membership with certificates, coset and double-coset
// equality, bounded neighbourhoods of H.1 in the coset graph and the
// geodesic core.
//
// Cosets are right cosets Hg. A path labelled w from Hg ends at Hgw, and w
// labels a loop at Hg iff g w g^-1 lies in H.
//
// Two strategies sit behind every operation:
//   * exact: free backend, or semidirect backend with every generator in
//     the free kernel. The subgroup is represented by its folded graph.
//   * saturation: everything else. Elements of H inside a ball are found by
//     closure; "in" answers carry witnesses, "out" answers are bounded.

#ifndef CONJINT_COSET_GEOMETRY_HPP_
#define CONJINT_COSET_GEOMETRY_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "conjint/group.hpp"
#include "conjint/subgroup_graph.hpp"
#include "conjint/words.hpp"

namespace conjint {

  struct SearchBudget {
    std::size_t radius_cap = 24;
    std::size_t depth_cap = 8;
    std::size_t max_gen_length = 12;
    std::size_t candidate_radius = 4;
    std::size_t max_elements = 2'000'000;
  };

  // One letter of a witness: generator index of H0, possibly inverted.
  struct Factor {
    std::size_t generator;
    bool        inverse;

    bool operator==(Factor const&) const = default;
  };

  struct SaturationCache;

  class SubgroupHandle {
   public:
    // Throws PreconditionError if a generator is trivial in G or K < 0.
    SubgroupHandle(std::shared_ptr<Group const> group,
                   std::vector<Word>            generators,
                   long                         K);

    Group const& group() const noexcept {
      return *group_;
    }
    std::shared_ptr<Group const> const& group_ptr() const noexcept {
      return group_;
    }
    std::vector<Word> const& generators() const noexcept {
      return generators_;
    }
    long K() const noexcept {
      return K_;
    }
    bool trivial() const noexcept {
      return generators_.empty();
    }
    // True when membership is decided on a folded graph.
    bool exact() const noexcept {
      return graph_ != nullptr;
    }
    // Folded graph over the kernel words of the generators (exact only).
    SubgroupGraph const& graph() const;
    // Shortlex-least shortest label from the base to each graph vertex.
    std::vector<Word> const& graph_paths() const {
      return *paths_;
    }
    SaturationCache&     saturation() const {
      return *cache_;
    }

    // Word of the product of witness factors.
    Word expand(std::vector<Factor> const& witness) const;

   private:
    std::shared_ptr<Group const>   group_;
    std::vector<Word>              generators_;
    long                           K_;
    std::shared_ptr<SubgroupGraph> graph_;
    std::shared_ptr<std::vector<Word>> paths_;
    std::shared_ptr<SaturationCache> cache_;
  };

  enum class Verdict { in, out, out_bounded };
  std::string_view verdict_name(Verdict v);

  struct MembershipCertificate {
    Verdict             verdict = Verdict::out;
    std::vector<Factor> witness;
    // Radius of the explored region for bounded answers.
    std::size_t explored_radius = 0;

    bool in() const noexcept {
      return verdict == Verdict::in;
    }
    bool bounded() const noexcept {
      return verdict == Verdict::out_bounded;
    }
  };

  // A yes/no answer that may rest on a bounded search.
  struct Decision {
    bool value = false;
    bool bounded = false;
  };

  // Every "in" witness is re-evaluated in G; a mismatch throws
  // InternalConsistencyError.
  MembershipCertificate membership(SubgroupHandle const& h,
                                   Word const&           w,
                                   SearchBudget const&   budget = {});

  // Hg1 = Hg2, decided as g1 g2^-1 in H.
  Decision coset_equal(SubgroupHandle const& h,
                       Word const&           g1,
                       Word const&           g2,
                       SearchBudget const&   budget = {});

  // Hg1H = Hg2H. Exact handles compare canonical double-coset
  // representatives and ignore `bound`; otherwise some h' in H with
  // |h'| <= bound and Hg1 = Hg2h' is searched for.
  Decision double_coset_equal(SubgroupHandle const& h,
                              Word const&           g1,
                              Word const&           g2,
                              std::size_t           bound,
                              SearchBudget const&   budget = {});

  // Shortlex-least geodesic word among the shortest elements of Hg.
  Word canonical_coset_rep(SubgroupHandle const& h,
                           Word const&           g,
                           SearchBudget const&   budget = {});
  // Same for HgH (exact handles only).
  Word canonical_double_coset_rep(SubgroupHandle const& h, Word const& g);

  struct CosetNeighborhood {
    std::size_t                            radius = 0;
    std::vector<Word>                      representatives;
    std::vector<std::vector<std::int32_t>> edges;  // [vertex][letter], -1 if absent
    bool                                   bounded = false;

    std::size_t vertex_count() const noexcept {
      return representatives.size();
    }
    std::size_t base() const noexcept {
      return 0;
    }
    std::int32_t target(std::size_t v, Letter x) const {
      return edges[v][x];
    }
  };

  // Ball of the given radius around H.1 in the coset graph.
  CosetNeighborhood build_neighborhood(SubgroupHandle const& h,
                                       std::size_t           radius,
                                       SearchBudget const&   budget = {});

  struct CoreAutomaton {
    std::vector<Word>                      states;  // canonical representatives
    std::vector<std::vector<std::int32_t>> transitions;
    bool                                   bounded = false;
    // A traced geodesic loop left N_{K+1}(H.1) (saturation strategy).
    bool escaped = false;

    std::size_t state_count() const noexcept {
      return states.size();
    }
    bool accepts(Word const& w) const;
  };

  CoreAutomaton geodesic_core(SubgroupHandle const& h, SearchBudget const& budget = {});

  // Every core state lies within distance K of the base.
  Decision check_quasiconvexity(SubgroupHandle const& h, SearchBudget const& budget = {});

  // w labels a loop at Hg, i.e. g w g^-1 in H.
  Decision loop_label_conjugation_test(SubgroupHandle const& h,
                                       Word const&           g,
                                       Word const&           w,
                                       SearchBudget const&   budget = {});

  // Canonical words of all elements of H with geodesic length <= radius,
  // shortlex-sorted. `complete` is false when the saturation strategy did
  // not stabilise.
  struct ElementSet {
    std::vector<Word> elements;
    bool              complete = true;
  };
  ElementSet subgroup_elements(SubgroupHandle const& h,
                               std::size_t           radius,
                               SearchBudget const&   budget = {});

}  // namespace conjint

#endif  // CONJINT_COSET_GEOMETRY_HPP_
