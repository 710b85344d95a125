#ifndef CONJINT_TESTS_SUPPORT_HPP_
#define CONJINT_TESTS_SUPPORT_HPP_

#include <memory>
#include <string>
#include <vector>

#include "conjint/config.hpp"
#include "conjint/coset_geometry.hpp"
#include "conjint/group.hpp"

namespace testing {

  inline std::string fixture(std::string const& name) {
    return std::string(CONJINT_FIXTURE_DIR) + "/" + name;
  }

  inline std::shared_ptr<conjint::Group const> free_group(std::size_t rank, long twice_delta = 0) {
    conjint::GroupDescriptor d;
    d.backend = conjint::Backend::free;
    static char const* names[] = {"a", "b", "c", "d"};
    for (std::size_t i = 0; i < rank; ++i) {
      d.generators.push_back(names[i]);
    }
    d.delta = conjint::HalfInteger::from_twice(twice_delta);
    return conjint::make_group(d);
  }

  // F_4 ⋊ Z/4 with t^-1 x_i t = x_{i+1 mod 4}.
  inline std::shared_ptr<conjint::Group const> g6(long delta = 1) {
    auto d = conjint::load_group_config(fixture("g6.json"));
    d.delta = conjint::HalfInteger::from_int(delta);
    return conjint::make_group(d);
  }

  inline conjint::Word W(conjint::Group const& G, std::string const& text) {
    return conjint::parse_word(text, G.alphabet());
  }

  inline std::string S(conjint::Group const& G, conjint::Word const& w) {
    return conjint::format_word(w, G.alphabet());
  }

  inline std::vector<std::string> S(conjint::Group const& G, std::vector<conjint::Word> const& ws) {
    std::vector<std::string> out;
    for (auto const& w : ws) {
      out.push_back(conjint::format_word(w, G.alphabet()));
    }
    return out;
  }

  inline conjint::SubgroupHandle subgroup(std::shared_ptr<conjint::Group const> const& G,
                                          std::vector<std::string> const&             gens,
                                          long                                        K) {
    std::vector<conjint::Word> words;
    for (auto const& s : gens) {
      words.push_back(conjint::parse_word(s, G->alphabet()));
    }
    return conjint::SubgroupHandle(G, std::move(words), K);
  }

}  // namespace testing

#endif
