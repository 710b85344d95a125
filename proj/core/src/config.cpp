#include "conjint/config.hpp"

#include <fstream>
#include <set>

#include "conjint/errors.hpp"

namespace conjint {

  namespace {
    using nlohmann::json;

    void reject_unknown(json const& j, std::set<std::string> const& known, char const* what) {
      if (!j.is_object()) {
        throw InvalidConfig(std::string(what) + " config must be a JSON object");
      }
      for (auto const& [key, value] : j.items()) {
        if (known.count(key) == 0) {
          throw InvalidConfig("unknown key '" + key + "' in " + what + " config");
        }
      }
    }

    template <class T>
    T get(json const& j, std::string const& key, T fallback) {
      auto it = j.find(key);
      if (it == j.end()) {
        return fallback;
      }
      try {
        return it->get<T>();
      } catch (json::exception const&) {
        throw InvalidConfig("key '" + key + "' has the wrong type");
      }
    }

    std::size_t get_count(json const& j, std::string const& key, std::size_t fallback) {
      auto it = j.find(key);
      if (it == j.end()) {
        return fallback;
      }
      if (!it->is_number_integer() || it->get<long long>() < 0) {
        throw InvalidConfig("key '" + key + "' must be a non-negative integer");
      }
      return it->get<std::size_t>();
    }

    json read_json(std::filesystem::path const& path) {
      std::ifstream in(path);
      if (!in) {
        throw InvalidConfig("cannot read '" + path.string() + "'");
      }
      try {
        return json::parse(in);
      } catch (json::parse_error const& e) {
        throw InvalidConfig("'" + path.string() + "' is not valid JSON: " + e.what());
      }
    }
  }  // namespace

  HalfInteger parse_half_integer(std::string const& text) {
    try {
      std::size_t pos = 0;
      long        v = std::stol(text, &pos);
      if (pos == text.size()) {
        return HalfInteger::from_int(v);
      }
      if (text.substr(pos) == "/2") {
        return HalfInteger::from_twice(v);
      }
    } catch (std::exception const&) {
    }
    throw InvalidConfig("key 'delta' must be an integer or 'k/2', got '" + text + "'");
  }

  GroupDescriptor parse_group_config(json const& j) {
    reject_unknown(j,
                   {"backend",
                    "generators",
                    "delta",
                    "free_rank",
                    "torsion_order",
                    "torsion_letter",
                    "automorphism",
                    "relators",
                    "dehn_check_length",
                    "finite_order_bound",
                    "radius_cap"},
                   "group");
    GroupDescriptor d;
    auto            backend = get<std::string>(j, "backend", "");
    if (backend == "free") {
      d.backend = Backend::free;
    } else if (backend == "semidirect") {
      d.backend = Backend::semidirect;
    } else if (backend == "dehn") {
      d.backend = Backend::dehn;
    } else {
      throw InvalidConfig("key 'backend' must be free, semidirect or dehn");
    }

    if (auto it = j.find("delta"); it != j.end()) {
      if (it->is_number_integer()) {
        d.delta = HalfInteger::from_int(it->get<long>());
      } else if (it->is_string()) {
        d.delta = parse_half_integer(it->get<std::string>());
      } else {
        throw InvalidConfig("key 'delta' must be an integer or 'k/2'");
      }
      if (d.delta.twice() < 0) {
        throw InvalidConfig("key 'delta' must be non-negative");
      }
    } else {
      throw InvalidConfig("missing key 'delta'");
    }

    d.free_rank = get_count(j, "free_rank", 0);
    d.torsion_order = get_count(j, "torsion_order", 0);
    d.torsion_letter = get<std::string>(j, "torsion_letter", "t");
    d.automorphism = get<std::vector<long>>(j, "automorphism", {});
    d.relators = get<std::vector<std::string>>(j, "relators", {});
    d.dehn_check_length = get_count(j, "dehn_check_length", d.dehn_check_length);
    d.finite_order_bound = get_count(j, "finite_order_bound", 0);
    d.radius_cap = get_count(j, "radius_cap", d.radius_cap);
    d.generators = get<std::vector<std::string>>(j, "generators", {});

    if (d.backend == Backend::semidirect) {
      if (d.free_rank == 0 || d.torsion_order == 0) {
        throw InvalidConfig("semidirect backend needs 'free_rank' and 'torsion_order'");
      }
      if (d.generators.empty()) {
        for (std::size_t i = 1; i <= d.free_rank; ++i) {
          d.generators.push_back("x" + std::to_string(i));
        }
        d.generators.push_back(d.torsion_letter);
      }
    } else if (j.contains("free_rank") || j.contains("torsion_order")
               || j.contains("automorphism") || j.contains("torsion_letter")) {
      throw InvalidConfig("semidirect keys given for backend '" + backend + "'");
    }
    if (d.backend != Backend::dehn && j.contains("relators")) {
      throw InvalidConfig("key 'relators' is only valid for the dehn backend");
    }
    if (d.generators.empty()) {
      throw InvalidConfig("missing key 'generators'");
    }
    return d;
  }

  GroupDescriptor load_group_config(std::filesystem::path const& path) {
    return parse_group_config(read_json(path));
  }

  SubgroupConfig parse_subgroup_config(json const& j) {
    reject_unknown(j, {"generators", "K"}, "subgroup");
    SubgroupConfig cfg;
    if (!j.contains("generators")) {
      throw InvalidConfig("missing key 'generators'");
    }
    cfg.generators = get<std::vector<std::string>>(j, "generators", {});
    if (auto it = j.find("K"); it != j.end()) {
      if (!it->is_number_integer() || it->get<long>() < 0) {
        throw InvalidConfig("key 'K' must be a non-negative integer");
      }
      cfg.K = it->get<long>();
    } else {
      throw InvalidConfig("missing key 'K'");
    }
    return cfg;
  }

  SubgroupConfig load_subgroup_config(std::filesystem::path const& path) {
    return parse_subgroup_config(read_json(path));
  }

  SubgroupHandle make_subgroup(std::shared_ptr<Group const> group, SubgroupConfig const& cfg) {
    std::vector<Word> gens;
    for (auto const& text : cfg.generators) {
      gens.push_back(parse_word(text, group->alphabet()));
    }
    return SubgroupHandle(std::move(group), std::move(gens), cfg.K);
  }

}  // namespace conjint
