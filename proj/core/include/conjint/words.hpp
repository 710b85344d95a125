// Alphabets, freely reduced words, shortlex order and bounded enumeration.
//
// A letter is encoded as 2 * generator + (inverse ? 1 : 0), so the natural
// integer order on letters is the shortlex letter order: generators in
// declaration order, each generator immediately before its own inverse.

#ifndef CONJINT_WORDS_HPP_
#define CONJINT_WORDS_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace conjint {

  using Letter = std::uint16_t;

  constexpr Letter make_letter(std::size_t generator, bool inverse) noexcept {
    return static_cast<Letter>(2 * generator + (inverse ? 1 : 0));
  }
  constexpr Letter inverse_letter(Letter x) noexcept {
    return static_cast<Letter>(x ^ 1U);
  }
  constexpr std::size_t generator_of(Letter x) noexcept {
    return x >> 1U;
  }
  constexpr bool is_inverse(Letter x) noexcept {
    return (x & 1U) != 0;
  }

  class Alphabet {
   public:
    Alphabet() = default;
    // Throws MalformedWord on empty, duplicate or syntactically unusable names.
    explicit Alphabet(std::vector<std::string> generator_names);

    std::size_t rank() const noexcept {
      return names_.size();
    }
    std::size_t letter_count() const noexcept {
      return 2 * names_.size();
    }
    std::string const& name(std::size_t generator) const {
      return names_.at(generator);
    }
    std::vector<std::string> const& names() const noexcept {
      return names_;
    }
    std::optional<std::size_t> find(std::string_view name) const;
    std::string letter_name(Letter x) const;

    bool operator==(Alphabet const&) const = default;

   private:
    std::vector<std::string> names_;
  };

  // A freely reduced word. Every constructor reduces, so a Word never holds
  // an adjacent pair x x^-1.
  class Word {
   public:
    using const_iterator = std::vector<Letter>::const_iterator;

    Word() = default;
    explicit Word(std::vector<Letter> letters);
    Word(std::initializer_list<Letter> letters)
        : Word(std::vector<Letter>(letters)) {}

    // Validates every letter against the alphabet before reducing.
    static Word from_letters(std::span<Letter const> letters,
                             Alphabet const&           alphabet);

    std::size_t size() const noexcept {
      return letters_.size();
    }
    bool empty() const noexcept {
      return letters_.empty();
    }
    Letter operator[](std::size_t i) const {
      return letters_[i];
    }
    Letter back() const {
      return letters_.back();
    }
    const_iterator begin() const noexcept {
      return letters_.begin();
    }
    const_iterator end() const noexcept {
      return letters_.end();
    }
    std::vector<Letter> const& letters() const noexcept {
      return letters_;
    }

    Word inverse() const;
    // Subword of a reduced word; reduced by construction.
    Word subword(std::size_t pos, std::size_t len) const;
    Word prefix(std::size_t len) const {
      return subword(0, len);
    }
    Word suffix(std::size_t pos) const {
      return subword(pos, letters_.size() - pos);
    }
    // Free product in F(X): concatenation followed by reduction.
    Word operator*(Word const& other) const;
    Word& operator*=(Word const& other);
    Word& push_back(Letter x);

    bool operator==(Word const&) const = default;
    // Shortlex: shorter first, then lexicographic by letter code.
    std::strong_ordering operator<=>(Word const& other) const;

   private:
    struct already_reduced {};
    Word(std::vector<Letter> letters, already_reduced)
        : letters_(std::move(letters)) {}
    std::vector<Letter> letters_;
  };

  struct WordHash {
    std::size_t operator()(Word const& w) const noexcept;
  };

  Word reduce(std::span<Letter const> letters);
  Word invert(Word const& w);
  bool shortlex_less(Word const& u, Word const& v);
  Word power(Word const& w, long exponent);

  // Text syntax: whitespace separated tokens `name`, `name^-1` or `name^k`
  // (k a nonzero integer, expanded to |k| letters). Empty text is the identity.
  Word        parse_word(std::string_view text, Alphabet const& alphabet);
  std::string format_word(Word const& w, Alphabet const& alphabet);

  // 1 + sum_{k=1..max_len} 2l (2l-1)^{k-1}, saturating at UINT64_MAX.
  std::uint64_t reduced_word_count(std::size_t rank, std::size_t max_len);

  // All reduced words of length <= max_len in shortlex order. Throws
  // ResourceCapExceeded when the closed-form count is above cap.
  std::vector<Word> enumerate_reduced(Alphabet const& alphabet,
                                      std::size_t     max_len,
                                      std::size_t     cap = 5'000'000);

  // Visits reduced words of exactly `length` letters in lexicographic order.
  void for_each_reduced_of_length(std::size_t                     letter_count,
                                  std::size_t                     length,
                                  std::function<void(Word const&)> const& visit);

}  // namespace conjint

#endif  // CONJINT_WORDS_HPP_
