// Exact arithmetic for the ambient group G behind one interface.
//
// Three backends share the contract that equal elements have identical
// normal forms:
//   * free        reduced word in F(X)
//   * semidirect  F_n x| Z/m, normal form w t^k with w a reduced word over
//                 the free generators and 0 <= k < m
//   * dehn        finite presentation in Dehn form; normal form is the
//                 shortlex-least geodesic word

#ifndef CONJINT_GROUP_HPP_
#define CONJINT_GROUP_HPP_

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "conjint/words.hpp"

namespace conjint {

  enum class Backend { free, semidirect, dehn };

  std::string_view backend_name(Backend b);

  // Non-negative half-integer, stored as twice its value.
  class HalfInteger {
   public:
    constexpr HalfInteger() = default;
    static constexpr HalfInteger from_twice(long twice) {
      HalfInteger h;
      h.twice_ = twice;
      return h;
    }
    static constexpr HalfInteger from_int(long v) {
      return from_twice(2 * v);
    }
    constexpr long twice() const noexcept {
      return twice_;
    }
    constexpr bool integral() const noexcept {
      return twice_ % 2 == 0;
    }
    // floor(a * value) for a non-negative integer coefficient a
    constexpr long floor_times(long a) const noexcept {
      return (a * twice_) / 2;
    }
    constexpr long ceil_times(long a) const noexcept {
      return (a * twice_ + 1) / 2;
    }
    std::string to_string() const;

    constexpr bool operator==(HalfInteger const&) const = default;

   private:
    long twice_ = 0;
  };

  struct GroupDescriptor {
    Backend                  backend = Backend::free;
    std::vector<std::string> generators;
    HalfInteger              delta;
    // semidirect
    std::size_t       free_rank = 0;
    std::size_t       torsion_order = 0;
    std::string       torsion_letter = "t";
    std::vector<long> automorphism;  // 1-based; t^-1 x_i t = x_{automorphism[i-1]}
    // dehn
    std::vector<std::string> relators;
    std::size_t              dehn_check_length = 3;
    // Bound C on orders of finite subgroups; 0 selects the backend default.
    std::size_t finite_order_bound = 0;
    // Radius cap for breadth-first geodesic searches.
    std::size_t radius_cap = 24;
  };

  // Element normal form. `torsion` is the Z/m coordinate for the semidirect
  // backend and always 0 otherwise.
  struct Element {
    Word word;
    long torsion = 0;

    bool operator==(Element const&) const = default;
    auto operator<=>(Element const& other) const {
      if (auto c = word <=> other.word; c != 0) {
        return c;
      }
      return torsion <=> other.torsion;
    }
  };

  struct ElementHash {
    std::size_t operator()(Element const& e) const noexcept {
      return WordHash{}(e.word) * 31U + static_cast<std::size_t>(e.torsion);
    }
  };

  struct BallEntry {
    Element element;
    Word    representative;  // shortlex-least geodesic word
  };

  class Group {
   public:
    virtual ~Group() = default;

    Backend backend() const noexcept {
      return backend_;
    }
    Alphabet const& alphabet() const noexcept {
      return alphabet_;
    }
    HalfInteger delta() const noexcept {
      return delta_;
    }
    std::size_t finite_order_bound() const noexcept {
      return finite_order_bound_;
    }
    std::size_t radius_cap() const noexcept {
      return radius_cap_;
    }
    void set_radius_cap(std::size_t cap) noexcept {
      radius_cap_ = cap;
    }

    Element identity() const {
      return Element{};
    }
    virtual Element multiply_letter(Element const& e, Letter x) const = 0;
    virtual Element multiply(Element const& a, Element const& b) const;
    virtual Element inverse(Element const& e) const;
    // Throws MalformedWord for letters outside the alphabet.
    Element evaluate(Word const& w) const;
    virtual bool is_identity(Word const& w) const;
    bool         equal(Word const& u, Word const& v) const {
      return is_identity(u * v.inverse());
    }

    // Shortlex-least geodesic word representing e.
    virtual Word representative(Element const& e) const = 0;
    // Minimal word length of e. Backends with a closed form override this;
    // the default is the breadth-first search below.
    virtual std::size_t geodesic_length(Element const& e) const;
    std::size_t         geodesic_length(Word const& w) const {
      return geodesic_length(evaluate(w));
    }
    // Bidirectional breadth-first search over the Cayley graph, independent
    // of any closed form. Throws RadiusCapExceeded beyond radius_cap().
    std::size_t bfs_geodesic_length(Element const& e) const;

    // All geodesic words for e, shortlex-sorted. Throws ResourceCapExceeded
    // when more than `cap` words exist.
    std::vector<Word> geodesic_representatives(Element const& e,
                                               std::size_t    cap = 100'000) const;
    // All elements of length <= radius with their canonical representatives,
    // in shortlex order of the representatives.
    std::vector<BallEntry> ball(std::size_t radius,
                                std::size_t max_elements = 5'000'000) const;

   protected:
    // Value of a word whose letters are already validated. The default
    // multiplies letter by letter.
    virtual Element evaluate_checked(Word const& w) const;

    Group(Backend backend, Alphabet alphabet, HalfInteger delta, std::size_t c)
        : backend_(backend),
          alphabet_(std::move(alphabet)),
          delta_(delta),
          finite_order_bound_(c) {}

   private:
    Backend     backend_;
    Alphabet    alphabet_;
    HalfInteger delta_;
    std::size_t finite_order_bound_;
    std::size_t radius_cap_ = 24;
  };

  class FreeGroup final : public Group {
   public:
    FreeGroup(Alphabet alphabet, HalfInteger delta, std::size_t c = 1);
    Element     evaluate_checked(Word const& w) const override;
    Element     multiply_letter(Element const& e, Letter x) const override;
    Element     multiply(Element const& a, Element const& b) const override;
    Element     inverse(Element const& e) const override;
    Word        representative(Element const& e) const override;
    std::size_t geodesic_length(Element const& e) const override;
  };

  class SemidirectGroup final : public Group {
   public:
    // `automorphism` is 1-based over the free generators in alphabet order:
    // t^-1 x_i t = x_{automorphism[i-1]}.
    SemidirectGroup(Alphabet          alphabet,
                    HalfInteger       delta,
                    std::size_t       torsion_generator,
                    std::size_t       torsion_order,
                    std::vector<long> automorphism,
                    std::size_t       c = 0);

    Element     evaluate_checked(Word const& w) const override;
    Element     multiply_letter(Element const& e, Letter x) const override;
    Element     multiply(Element const& a, Element const& b) const override;
    Element     inverse(Element const& e) const override;
    Word        representative(Element const& e) const override;
    std::size_t geodesic_length(Element const& e) const override;

    std::size_t torsion_generator() const noexcept {
      return torsion_gen_;
    }
    std::size_t torsion_order() const noexcept {
      return m_;
    }
    bool is_torsion_letter(Letter x) const noexcept {
      return generator_of(x) == torsion_gen_;
    }
    // Conjugation w -> t^k w t^-k on words over the free generators.
    Word twist(Word const& w, long k) const;
    Letter twist(Letter x, long k) const;

   private:
    std::size_t torsion_gen_;
    std::size_t m_;
    // psi_[k][gen] = generator index of t^k x_gen t^-k
    std::vector<std::vector<std::size_t>> psi_;
  };

  class DehnGroup final : public Group {
   public:
    // Relators are symmetrized (closed under inversion and cyclic
    // permutation). The Dehn property is checked on all conjugates of
    // relators by words of length <= check_length and on products of two
    // such conjugates; failure throws UnsupportedPresentation.
    DehnGroup(Alphabet          alphabet,
              HalfInteger       delta,
              std::vector<Word> relators,
              std::size_t       check_length,
              std::size_t       c = 0);

    Element     evaluate_checked(Word const& w) const override;
    Element     multiply_letter(Element const& e, Letter x) const override;
    Element     multiply(Element const& a, Element const& b) const override;
    Element     inverse(Element const& e) const override;
    bool        is_identity(Word const& w) const override;
    Word        representative(Element const& e) const override;
    std::size_t geodesic_length(Element const& e) const override;

    // Greedy Dehn reduction: replace any subword that is more than half of a
    // cyclic relator by the inverse of the complement, then freely reduce.
    Word dehn_reduce(Word const& w) const;
    std::vector<Word> const& symmetrized_relators() const noexcept {
      return symmetrized_;
    }

   private:
    Word canonical(Word const& w) const;

    std::vector<Word>                                  symmetrized_;
    mutable std::mutex                                 cache_mutex_;
    mutable std::unordered_map<Word, Word, WordHash>   canonical_cache_;
  };

  std::shared_ptr<Group const> make_group(GroupDescriptor const& descriptor);

}  // namespace conjint

#endif  // CONJINT_GROUP_HPP_
