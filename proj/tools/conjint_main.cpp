// conjint: command-line front end.
//
// Exit status: 0 for a definitive result, 2 when any part of the answer
// rests on a bounded search, 1 on error or oracle mismatch.

#include <algorithm>
#include <fstream>
#include <map>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conjint/config.hpp"
#include "conjint/coset_geometry.hpp"
#include "conjint/errors.hpp"
#include "conjint/intersections.hpp"
#include "conjint/invariants.hpp"
#include "conjint/oracle.hpp"
#include "conjint/report.hpp"

namespace {

  using namespace conjint;

  struct Options {
    std::string              group_path;
    std::string              subgroup_path;
    std::vector<std::string> g;
    std::string              mode = "exact";
    std::size_t              radius_cap = 24;
    std::size_t              depth_cap = 8;
    std::size_t              max_gen_length = 12;
    std::size_t              candidate_radius = 4;
    std::size_t              max_elements = 2'000'000;
    std::size_t              radius = 2;
    std::string              report_path;
    std::uint64_t            seed = 1;
    std::size_t              samples = 50;
    bool                     oracle = false;
  };

  struct Outcome {
    Json json;
    bool bounded = false;
    bool mismatch = false;
  };

  struct Context {
    std::shared_ptr<Group const>  group;
    std::optional<SubgroupHandle> h;
    SearchBudget                  budget;
    Alphabet const&               alphabet() const {
      return group->alphabet();
    }
  };

  Context load(Options const& o, bool need_subgroup) {
    Context ctx;
    auto    desc = load_group_config(o.group_path);
    desc.radius_cap = o.radius_cap;
    ctx.group = make_group(desc);
    ctx.budget.radius_cap = o.radius_cap;
    ctx.budget.depth_cap = o.depth_cap;
    ctx.budget.max_gen_length = o.max_gen_length;
    ctx.budget.candidate_radius = o.candidate_radius;
    ctx.budget.max_elements = o.max_elements;
    if (need_subgroup) {
      if (o.subgroup_path.empty()) {
        throw InvalidConfig("--subgroup is required");
      }
      ctx.h.emplace(make_subgroup(ctx.group, load_subgroup_config(o.subgroup_path)));
    }
    return ctx;
  }

  Word single_g(Context const& ctx, Options const& o, bool required = true) {
    if (o.g.empty()) {
      if (required) {
        throw InvalidConfig("--g is required");
      }
      return {};
    }
    return parse_word(o.g.front(), ctx.alphabet());
  }

  Mode parse_mode(std::string const& m) {
    if (m == "exact") {
      return Mode::exact_search;
    }
    if (m == "paper") {
      return Mode::paper_greedy;
    }
    throw InvalidConfig("--mode must be paper or exact");
  }

  Json header(std::string const& command, Context const& ctx) {
    Json out;
    out["command"] = command;
    if (ctx.h) {
      Json gens = Json::array();
      for (auto const& s : ctx.h->generators()) {
        gens.push_back(format_word(s, ctx.alphabet()));
      }
      out["subgroup"] = {{"generators", gens}, {"K", ctx.h->K()}};
      out["strategy"] = ctx.h->exact() ? "folded" : "saturation";
    }
    out["delta"] = to_json(ctx.group->delta());
    return out;
  }

  void merge(Json& into, Json const& from) {
    for (auto const& [k, v] : from.items()) {
      into[k] = v;
    }
  }

  ////////////////////////////////////////////////////////////////////////

  Outcome cmd_member(Options const& o) {
    auto ctx = load(o, true);
    Word w = single_g(ctx, o);
    auto c = membership(*ctx.h, w, ctx.budget);
    Outcome out{header("member", ctx)};
    out.json["word"] = format_word(w, ctx.alphabet());
    merge(out.json, to_json(c, *ctx.h));
    out.bounded = c.bounded();
    return out;
  }

  Outcome cmd_core(Options const& o) {
    auto ctx = load(o, true);
    auto core = geodesic_core(*ctx.h, ctx.budget);
    auto qc = check_quasiconvexity(*ctx.h, ctx.budget);
    Outcome out{header("core", ctx)};
    merge(out.json, to_json(core, ctx.alphabet()));
    out.json["quasiconvex"] = qc.value;
    out.bounded = core.bounded || qc.bounded;
    out.json["bounded"] = out.bounded;
    return out;
  }

  Outcome cmd_neighborhood(Options const& o) {
    auto ctx = load(o, true);
    auto N = build_neighborhood(*ctx.h, o.radius, ctx.budget);
    Outcome out{header("neighborhood", ctx)};
    merge(out.json, to_json(N, ctx.alphabet()));
    out.bounded = N.bounded;
    return out;
  }

  // Intersection elements up to `radius` from the fast path and from the
  // expansion oracle.
  Json intersection_oracle_check(Context const& ctx,
                                 Word const&    g,
                                 std::size_t    radius,
                                 std::size_t    depth,
                                 bool&          mismatch) {
    auto fast = intersection_elements(*ctx.h, g, radius, ctx.budget);
    auto slow = oracle_intersection(*ctx.h, g, radius, depth);
    std::set<Word> f(fast.elements.begin(), fast.elements.end());
    std::set<Word> s(slow.elements.begin(), slow.elements.end());
    // the oracle under-approximates until its expansion is stable
    bool agrees = slow.stable && fast.complete ? f == s
                                               : std::includes(f.begin(), f.end(),
                                                               s.begin(), s.end());
    mismatch = mismatch || !agrees;
    Json out;
    out["radius"] = radius;
    out["depth"] = depth;
    out["oracle_elements"] = to_json(slow.elements, ctx.alphabet());
    out["fast_elements"] = fast.elements.size();
    out["stable"] = slow.stable;
    out["agrees"] = agrees;
    return out;
  }

  Outcome cmd_intersect(Options const& o) {
    auto    ctx = load(o, true);
    Word    g = single_g(ctx, o);
    auto    r = conjugate_intersection_generators(*ctx.h, g, ctx.budget);
    Outcome out{header("intersect", ctx)};
    out.json["g"] = format_word(g, ctx.alphabet());
    merge(out.json, to_json(r, ctx.alphabet()));
    if (ctx.h->exact()) {
      auto fp = fiber_product_intersection(*ctx.h, conjugate_handle(*ctx.h, g));
      out.json["fiber_product"]
          = {{"basis", to_json(*fp.basis, ctx.alphabet())}, {"rank", *fp.rank}};
    }
    out.bounded = r.bounded;
    if (o.oracle) {
      std::size_t radius = std::min<std::size_t>(r.length_bound, 6);
      out.json["oracle"]
          = intersection_oracle_check(ctx, g, radius, o.depth_cap, out.mismatch);
    }
    return out;
  }

  Outcome cmd_finite(Options const& o) {
    auto              ctx = load(o, true);
    std::vector<Word> conj;
    for (auto const& text : o.g) {
      conj.push_back(parse_word(text, ctx.alphabet()));
    }
    auto    v = multi_intersection_infinite(*ctx.h, conj, ctx.budget);
    Outcome out{header("finite", ctx)};
    out.json["conjugators"] = to_json(conj, ctx.alphabet());
    out.json["finiteness"] = to_json(v);
    out.bounded = v.bounded();
    out.json["bounded"] = out.bounded;
    return out;
  }

  Outcome cmd_invariant(Options const& o, std::string const& which) {
    auto            ctx = load(o, true);
    Mode            mode = parse_mode(o.mode);
    InvariantReport r;
    if (which == "weakwidth") {
      r = weak_width(*ctx.h, ctx.budget);
      r.mode = mode;
    } else if (which == "width") {
      r = width(*ctx.h, mode, ctx.budget);
    } else {
      r = height(*ctx.h, mode, ctx.budget);
    }
    Outcome out{header(which, ctx)};
    merge(out.json, to_json(r, ctx.alphabet()));
    out.bounded = r.bounded;
    return out;
  }

  Outcome cmd_malnormal(Options const& o) {
    auto    ctx = load(o, true);
    auto    am = almost_malnormal(*ctx.h, ctx.budget);
    auto    semi = malnormality_semidecision(*ctx.h, o.radius, ctx.budget);
    Outcome out{header("malnormal", ctx)};
    out.json["almost_malnormal"] = am.value;
    out.json["almost_malnormal_bounded"] = am.bounded;
    out.json["semidecision"] = to_json(semi, ctx.alphabet());
    out.bounded = am.bounded;
    out.json["bounded"] = out.bounded;
    return out;
  }

  Outcome cmd_constants(Options const& o) {
    auto    ctx = load(o, true);
    Word    g = single_g(ctx, o, false);
    auto    r = constants_report(*ctx.h, g, ctx.budget);
    Outcome out{header("constants", ctx)};
    out.json["g"] = format_word(g, ctx.alphabet());
    merge(out.json, to_json(r));
    out.bounded = r.bounded;
    return out;
  }

  // Membership, coset and double-coset equality on ball(radius) plus random
  // words, and intersection finiteness for --g.
  Outcome cmd_oracle_check(Options const& o) {
    auto         ctx = load(o, true);
    auto const&  h = *ctx.h;
    Group const& G = *ctx.group;
    Outcome      out{header("oracle-check", ctx)};
    std::size_t  disagreements = 0;

    std::vector<Word> words;
    for (auto const& e : G.ball(o.radius)) {
      words.push_back(e.representative);
    }
    std::mt19937_64 rng(o.seed);
    std::size_t const L = G.alphabet().letter_count();
    std::vector<Element> gens;
    for (auto const& s : h.generators()) {
      gens.push_back(G.evaluate(s));
    }
    for (std::size_t i = 0; i < o.samples; ++i) {
      // half random words, half random products of generators
      if (i % 2 == 0 || gens.empty()) {
        std::vector<Letter> letters(1 + rng() % 6);
        for (auto& x : letters) {
          x = static_cast<Letter>(rng() % L);
        }
        words.push_back(Word(reduce(letters)));
      } else {
        Element e = G.identity();
        for (std::size_t k = 0, n = 1 + rng() % 3; k < n; ++k) {
          Element s = gens[rng() % gens.size()];
          e = G.multiply(e, rng() % 2 == 0 ? s : G.inverse(s));
        }
        words.push_back(G.representative(e));
      }
    }

    // one expansion serves every membership question
    std::size_t longest = 0;
    for (auto const& w : words) {
      longest = std::max(longest, G.geodesic_length(w));
    }
    longest = std::max(longest, 2 * o.radius);
    auto members = oracle_subgroup_ball(h, longest, o.depth_cap, o.max_elements);
    auto slow_member = [&](Word const& w) { return members.contains(G.evaluate(w)); };

    std::size_t member_checks = 0;
    for (auto const& w : words) {
      auto fast = membership(h, w, ctx.budget);
      ++member_checks;
      if (slow_member(w) != fast.in()) {
        ++disagreements;
      }
      out.bounded = out.bounded || fast.bounded();
    }

    auto classes = oracle_double_cosets(h, o.radius, o.depth_cap);
    std::map<Word, std::size_t> cls;
    for (std::size_t c = 0; c < classes.classes.size(); ++c) {
      for (auto const& w : classes.classes[c]) {
        cls[w] = c;
      }
    }
    std::size_t dc_checks = 0;
    for (auto i = cls.begin(); i != cls.end(); ++i) {
      for (auto j = std::next(i); j != cls.end(); ++j) {
        Word const& a = i->first;
        Word const& b = j->first;
        std::size_t bound = 4 * o.radius + 2 * static_cast<std::size_t>(h.K()) + 2;
        auto        fast = double_coset_equal(h, a, b, bound, ctx.budget);
        ++dc_checks;
        if ((i->second == j->second) != fast.value) {
          ++disagreements;
        }
        if (slow_member(a * b.inverse()) != coset_equal(h, a, b, ctx.budget).value) {
          ++disagreements;
        }
        out.bounded = out.bounded || fast.bounded;
      }
    }

    Json checks;
    checks["membership"] = member_checks;
    checks["double_coset_pairs"] = dc_checks;
    checks["double_coset_classes"] = classes.classes.size();
    checks["oracle_stable"] = classes.stable && members.stable;
    if (!o.g.empty()) {
      Word g = single_g(ctx, o);
      auto v = is_intersection_infinite(h, g, ctx.budget);
      std::size_t radius = std::min<std::size_t>(2 * G.geodesic_length(g) + 6, 8);
      checks["intersection"] = intersection_oracle_check(ctx, g, radius, o.depth_cap, out.mismatch);
      auto slow = oracle_intersection(h, g, radius, o.depth_cap);
      // torsion-free kernel: a nontrivial common element means infinite
      if (h.exact() && slow.elements.size() > 1 && !v.infinite()) {
        ++disagreements;
        out.mismatch = true;
      }
      checks["finiteness"] = finiteness_name(v.kind);
      out.bounded = out.bounded || v.bounded();
    }
    out.json["checks"] = std::move(checks);
    out.json["disagreements"] = disagreements;
    out.mismatch = out.mismatch || disagreements != 0;
    out.json["agrees"] = !out.mismatch;
    return out;
  }

  void add_shared(CLI::App* app, Options& o) {
    app->add_option("--group", o.group_path, "group config (JSON)")->required();
    app->add_option("--subgroup", o.subgroup_path, "subgroup config (JSON)");
    app->add_option("--g", o.g, "word; repeat for several conjugators");
    app->add_option("--mode", o.mode, "paper or exact")->capture_default_str();
    app->add_option("--radius-cap", o.radius_cap)->capture_default_str();
    app->add_option("--depth-cap", o.depth_cap)->capture_default_str();
    app->add_option("--max-gen-length", o.max_gen_length)->capture_default_str();
    app->add_option("--candidate-radius", o.candidate_radius)->capture_default_str();
    app->add_option("--max-elements", o.max_elements)->capture_default_str();
    app->add_option("--radius", o.radius, "neighbourhood / sweep radius")
        ->capture_default_str();
    app->add_option("--report", o.report_path, "also write the JSON report here");
    app->add_option("--seed", o.seed)->capture_default_str();
    app->add_option("--samples", o.samples, "random words for oracle-check")
        ->capture_default_str();
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intersections of conjugate subgroups: width, height, weak width"};
  app.require_subcommand(1);
  Options o;

  std::vector<std::pair<std::string, std::string>> const commands{
      {"member", "decide g in H"},
      {"core", "geodesic core and quasiconvexity check"},
      {"neighborhood", "ball around H.1 in the coset graph"},
      {"intersect", "generators of H ∩ g^-1 H g"},
      {"finite", "finiteness of H or of an intersection of conjugates"},
      {"weakwidth", "weak width"},
      {"width", "width"},
      {"height", "height"},
      {"malnormal", "almost malnormality and the malnormality sweep"},
      {"constants", "constants driving the bounds"},
      {"oracle-check", "compare fast paths against brute force"},
  };
  for (auto const& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_shared(sub, o);
    if (name == "intersect") {
      sub->add_flag("--oracle", o.oracle, "cross-check against the expansion oracle");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::string const name = app.get_subcommands().front()->get_name();
  try {
    Outcome out;
    if (name == "member") {
      out = cmd_member(o);
    } else if (name == "core") {
      out = cmd_core(o);
    } else if (name == "neighborhood") {
      out = cmd_neighborhood(o);
    } else if (name == "intersect") {
      out = cmd_intersect(o);
    } else if (name == "finite") {
      out = cmd_finite(o);
    } else if (name == "weakwidth" || name == "width" || name == "height") {
      out = cmd_invariant(o, name);
    } else if (name == "malnormal") {
      out = cmd_malnormal(o);
    } else if (name == "constants") {
      out = cmd_constants(o);
    } else {
      out = cmd_oracle_check(o);
    }
    std::string text = out.json.dump(2) + "\n";
    std::cout << text;
    if (!o.report_path.empty()) {
      std::ofstream file(o.report_path);
      if (!file) {
        throw InvalidConfig("cannot write report '" + o.report_path + "'");
      }
      file << text;
    }
    if (out.mismatch) {
      std::cerr << "conjint: oracle mismatch\n";
      return 1;
    }
    return out.bounded ? 2 : 0;
  } catch (std::exception const& e) {
    std::cerr << "conjint: " << e.what() << "\n";
    return 1;
  }
}
