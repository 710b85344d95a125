#include "conjint/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "conjint/errors.hpp"

namespace conjint {

  namespace {
    bool valid_name(std::string const& name) {
      if (name.empty()) {
        return false;
      }
      return std::none_of(name.begin(), name.end(), [](char c) {
        return c == '^' || std::isspace(static_cast<unsigned char>(c)) != 0;
      });
    }
  }  // namespace

  Alphabet::Alphabet(std::vector<std::string> generator_names)
      : names_(std::move(generator_names)) {
    std::unordered_set<std::string> seen;
    for (auto const& n : names_) {
      if (!valid_name(n)) {
        throw MalformedWord("invalid generator name '" + n + "'");
      }
      if (!seen.insert(n).second) {
        throw MalformedWord("duplicate generator name '" + n + "'");
      }
    }
  }

  std::optional<std::size_t> Alphabet::find(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - names_.begin());
  }

  std::string Alphabet::letter_name(Letter x) const {
    std::string s = names_.at(generator_of(x));
    if (is_inverse(x)) {
      s += "^-1";
    }
    return s;
  }

  Word reduce(std::span<Letter const> letters) {
    std::vector<Letter> stack;
    stack.reserve(letters.size());
    for (Letter x : letters) {
      if (!stack.empty() && stack.back() == inverse_letter(x)) {
        stack.pop_back();
      } else {
        stack.push_back(x);
      }
    }
    return Word(std::move(stack));
  }

  Word::Word(std::vector<Letter> letters) {
    letters_.reserve(letters.size());
    for (Letter x : letters) {
      if (!letters_.empty() && letters_.back() == inverse_letter(x)) {
        letters_.pop_back();
      } else {
        letters_.push_back(x);
      }
    }
  }

  Word Word::from_letters(std::span<Letter const> letters,
                          Alphabet const&           alphabet) {
    for (Letter x : letters) {
      if (x >= alphabet.letter_count()) {
        throw MalformedWord("letter index " + std::to_string(x)
                            + " out of alphabet range");
      }
    }
    return reduce(letters);
  }

  Word Word::inverse() const {
    std::vector<Letter> out(letters_.size());
    std::transform(letters_.rbegin(),
                   letters_.rend(),
                   out.begin(),
                   [](Letter x) { return inverse_letter(x); });
    return Word(std::move(out), already_reduced{});
  }

  Word Word::subword(std::size_t pos, std::size_t len) const {
    return Word(std::vector<Letter>(letters_.begin() + pos,
                                    letters_.begin() + pos + len),
                already_reduced{});
  }

  Word& Word::push_back(Letter x) {
    if (!letters_.empty() && letters_.back() == inverse_letter(x)) {
      letters_.pop_back();
    } else {
      letters_.push_back(x);
    }
    return *this;
  }

  Word& Word::operator*=(Word const& other) {
    std::size_t k = 0;
    while (k < other.size() && !letters_.empty()
           && letters_.back() == inverse_letter(other[k])) {
      letters_.pop_back();
      ++k;
    }
    letters_.insert(letters_.end(), other.letters_.begin() + k, other.letters_.end());
    return *this;
  }

  Word Word::operator*(Word const& other) const {
    Word result = *this;
    result *= other;
    return result;
  }

  std::strong_ordering Word::operator<=>(Word const& other) const {
    if (auto c = letters_.size() <=> other.letters_.size(); c != 0) {
      return c;
    }
    return std::lexicographical_compare_three_way(letters_.begin(),
                                                  letters_.end(),
                                                  other.letters_.begin(),
                                                  other.letters_.end());
  }

  std::size_t WordHash::operator()(Word const& w) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (Letter x : w) {
      h ^= x + 1U;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }

  Word invert(Word const& w) {
    return w.inverse();
  }

  bool shortlex_less(Word const& u, Word const& v) {
    return u < v;
  }

  Word power(Word const& w, long exponent) {
    Word base = exponent < 0 ? w.inverse() : w;
    Word result;
    for (long i = 0; i < std::abs(exponent); ++i) {
      result *= base;
    }
    return result;
  }

  Word parse_word(std::string_view text, Alphabet const& alphabet) {
    std::vector<Letter> letters;
    std::istringstream  in{std::string(text)};
    std::string         token;
    while (in >> token) {
      std::string_view name = token;
      long             exponent = 1;
      if (auto caret = token.find('^'); caret != std::string::npos) {
        name = std::string_view(token).substr(0, caret);
        auto digits = std::string_view(token).substr(caret + 1);
        auto [ptr, ec]
            = std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || exponent == 0
            || digits.empty()) {
          throw MalformedWord("bad exponent in token '" + token + "'");
        }
      }
      auto gen = alphabet.find(name);
      if (!gen) {
        throw MalformedWord("unknown generator '" + std::string(name) + "' in word '"
                            + std::string(text) + "'");
      }
      Letter x = make_letter(*gen, exponent < 0);
      for (long i = 0; i < std::abs(exponent); ++i) {
        letters.push_back(x);
      }
    }
    return reduce(letters);
  }

  std::string format_word(Word const& w, Alphabet const& alphabet) {
    std::string out;
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) {
        ++j;
      }
      long run = static_cast<long>(j - i);
      if (!out.empty()) {
        out += ' ';
      }
      out += alphabet.name(generator_of(w[i]));
      long exponent = is_inverse(w[i]) ? -run : run;
      if (exponent != 1) {
        out += '^';
        out += std::to_string(exponent);
      }
      i = j;
    }
    return out;
  }

  std::uint64_t reduced_word_count(std::size_t rank, std::size_t max_len) {
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t  total = 1;
    std::uint64_t  layer = 2 * rank;
    for (std::size_t k = 1; k <= max_len && layer != 0; ++k) {
      if (total > max - layer) {
        return max;
      }
      total += layer;
      std::uint64_t branching = 2 * rank - 1;
      if (branching != 0 && layer > max / branching) {
        layer = max;
      } else {
        layer *= branching;
      }
    }
    return total;
  }

  void for_each_reduced_of_length(std::size_t                      letter_count,
                                  std::size_t                      length,
                                  std::function<void(Word const&)> const& visit) {
    std::vector<Letter> buf(length);
    // Depth-first in lexicographic order.
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
      if (pos == length) {
        visit(reduce(buf));
        return;
      }
      for (Letter x = 0; x < letter_count; ++x) {
        if (pos > 0 && buf[pos - 1] == inverse_letter(x)) {
          continue;
        }
        buf[pos] = x;
        rec(pos + 1);
      }
    };
    rec(0);
  }

  std::vector<Word> enumerate_reduced(Alphabet const& alphabet,
                                      std::size_t     max_len,
                                      std::size_t     cap) {
    auto count = reduced_word_count(alphabet.rank(), max_len);
    if (count > cap) {
      throw ResourceCapExceeded("enumeration of " + std::to_string(count)
                                + " reduced words exceeds cap "
                                + std::to_string(cap));
    }
    std::vector<Word> out;
    out.reserve(count);
    for (std::size_t len = 0; len <= max_len; ++len) {
      for_each_reduced_of_length(
          alphabet.letter_count(), len, [&](Word const& w) { out.push_back(w); });
    }
    return out;
  }

}  // namespace conjint
