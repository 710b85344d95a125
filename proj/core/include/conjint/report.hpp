// JSON rendering of results. Keys keep insertion order and every word list
// is emitted in shortlex order, so equal results give identical bytes.

#ifndef CONJINT_REPORT_HPP_
#define CONJINT_REPORT_HPP_

#include <vector>

#include <nlohmann/json.hpp>

#include "conjint/coset_geometry.hpp"
#include "conjint/intersections.hpp"
#include "conjint/invariants.hpp"

namespace conjint {

  using Json = nlohmann::ordered_json;

  Json to_json(Word const& w, Alphabet const& a);
  Json to_json(std::vector<Word> words, Alphabet const& a);
  Json to_json(HalfInteger h);
  Json to_json(FinitenessVerdict const& v);

  Json to_json(MembershipCertificate const& c, SubgroupHandle const& h);
  Json to_json(CosetNeighborhood const& n, Alphabet const& a);
  Json to_json(CoreAutomaton const& c, Alphabet const& a);
  Json to_json(IntersectionReport const& r, Alphabet const& a);
  Json to_json(SplitResult const& r, Alphabet const& a);
  Json to_json(InvariantReport const& r, Alphabet const& a);
  Json to_json(WidthDecomposition const& d, Alphabet const& a);
  Json to_json(MalnormalityResult const& r, Alphabet const& a);
  Json to_json(ConstantsReport const& r);

}  // namespace conjint

#endif  // CONJINT_REPORT_HPP_
