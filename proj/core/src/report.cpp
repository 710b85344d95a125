#include "conjint/report.hpp"

#include <algorithm>

namespace conjint {

  Json to_json(Word const& w, Alphabet const& a) {
    return format_word(w, a);
  }

  Json to_json(std::vector<Word> words, Alphabet const& a) {
    std::sort(words.begin(), words.end());
    Json out = Json::array();
    for (auto const& w : words) {
      out.push_back(format_word(w, a));
    }
    return out;
  }

  Json to_json(HalfInteger h) {
    if (h.integral()) {
      return h.twice() / 2;
    }
    return h.to_string();
  }

  Json to_json(FinitenessVerdict const& v) {
    Json out;
    out["kind"] = finiteness_name(v.kind);
    if (v.kind == Finiteness::finite) {
      out["order"] = v.order;
    }
    return out;
  }

  Json to_json(MembershipCertificate const& c, SubgroupHandle const& h) {
    Alphabet const& a = h.group().alphabet();
    Json            witness = Json::array();
    for (auto const& f : c.witness) {
      Word s = h.generators().at(f.generator);
      witness.push_back(format_word(f.inverse ? s.inverse() : s, a));
    }
    Json out;
    out["verdict"] = verdict_name(c.verdict);
    out["witness"] = std::move(witness);
    out["witness_word"] = format_word(h.expand(c.witness), a);
    out["bounded"] = c.bounded();
    if (c.bounded()) {
      out["explored_radius"] = c.explored_radius;
    }
    return out;
  }

  Json to_json(CosetNeighborhood const& n, Alphabet const& a) {
    Json out;
    out["radius"] = n.radius;
    out["M"] = n.vertex_count();
    out["representatives"] = to_json(n.representatives, a);
    out["bounded"] = n.bounded;
    return out;
  }

  Json to_json(CoreAutomaton const& c, Alphabet const& a) {
    std::size_t edges = 0;
    for (auto const& row : c.transitions) {
      edges += static_cast<std::size_t>(
          std::count_if(row.begin(), row.end(), [](std::int32_t t) { return t >= 0; }));
    }
    Json out;
    out["states"] = c.state_count();
    out["transitions"] = edges;
    out["state_words"] = to_json(c.states, a);
    out["escaped"] = c.escaped;
    out["bounded"] = c.bounded;
    return out;
  }

  Json to_json(IntersectionReport const& r, Alphabet const& a) {
    Json out;
    out["generating_set"] = to_json(r.generating_set, a);
    out["elements_found"] = r.elements_found;
    out["length_bound"] = r.length_bound;
    out["theoretical_bound"] = r.theoretical_bound;
    out["theoretical_bound_swept"] = r.theoretical_bound_swept;
    out["M"] = r.M;
    out["finiteness"] = to_json(r.finiteness);
    if (r.fiber_product_agrees) {
      out["fiber_product_agrees"] = *r.fiber_product_agrees;
    }
    if (r.basis) {
      out["basis"] = to_json(*r.basis, a);
    }
    if (r.rank) {
      out["rank"] = *r.rank;
    }
    out["bounded"] = r.bounded;
    return out;
  }

  Json to_json(SplitResult const& r, Alphabet const& a) {
    Json out;
    out["h1"] = to_json(r.h1, a);
    out["h2"] = to_json(r.h2, a);
    out["i"] = r.i;
    out["j"] = r.j;
    out["M"] = r.M;
    return out;
  }

  Json to_json(InvariantReport const& r, Alphabet const& a) {
    Json out;
    out["weak_width"] = r.weak_width;
    out["width"] = r.width ? Json(*r.width) : Json(nullptr);
    out["height"] = r.height ? Json(*r.height) : Json(nullptr);
    out["L"] = to_json(r.L, a);
    out["mode"] = mode_name(r.mode);
    out["bounded"] = r.bounded;
    out["finite_subgroup"] = r.finite_subgroup;
    out["ball_radius"] = r.ball_radius;
    out["ball_size"] = r.ball_size;
    out["double_cosets"] = to_json(r.double_cosets, a);
    out["L1"] = to_json(r.L1, a);
    Json A = Json::array();
    for (auto const& c : r.A) {
      Json entry;
      entry["g_i"] = to_json(c.g_i, a);
      entry["candidates"] = to_json(c.candidates, a);
      entry["radius"] = c.radius;
      entry["full_radius"] = c.full_radius;
      entry["truncated"] = c.truncated;
      A.push_back(std::move(entry));
    }
    out["A"] = std::move(A);
    out["candidate_radius_truncated"] = r.candidate_radius_truncated;
    out["universe"] = to_json(r.universe, a);
    out["L_w"] = to_json(r.L_w, a);
    out["L_h"] = to_json(r.L_h, a);
    Json certs = Json::array();
    for (auto const& c : r.certificates) {
      Json entry;
      entry["family"] = to_json(c.family, a);
      entry["verdict"] = finiteness_name(c.verdict.kind);
      certs.push_back(std::move(entry));
    }
    out["certificates"] = std::move(certs);
    return out;
  }

  Json to_json(WidthDecomposition const& d, Alphabet const& a) {
    Json out;
    out["target"] = to_json(d.target, a);
    out["h_i"] = to_json(d.h_i, a);
    out["s_i"] = to_json(d.s_i, a);
    out["k_i"] = to_json(d.k_i, a);
    return out;
  }

  Json to_json(MalnormalityResult const& r, Alphabet const& a) {
    Json out;
    out["verdict"] = r.malnormal_up_to_budget ? "malnormal_up_to_budget" : "not_malnormal";
    out["witness"] = r.witness ? to_json(*r.witness, a) : Json(nullptr);
    out["witness_elements"] = to_json(r.witness_elements, a);
    out["swept_radius"] = r.swept_radius;
    out["double_cosets_checked"] = r.double_cosets_checked;
    out["bounded"] = r.bounded;
    return out;
  }

  Json to_json(ConstantsReport const& r) {
    Json out;
    out["K"] = r.K;
    out["delta"] = to_json(r.delta);
    out["g_length"] = r.g_length;
    out["K_g"] = r.K_g;
    out["M_radius"] = r.M_radius;
    out["M"] = r.M;
    out["crude_M_bound"] = r.crude_M_bound;
    out["short_generator_bound"] = r.short_generator_bound;
    out["weak_width_radius"] = to_json(r.weak_width_radius);
    out["small_intersection_bound"] = to_json(r.small_intersection_bound);
    out["s_bound"] = to_json(r.s_bound);
    out["k_bound"] = to_json(r.k_bound);
    out["candidate_radius"] = to_json(r.candidate_radius);
    out["bounded"] = r.bounded;
    return out;
  }

}  // namespace conjint
