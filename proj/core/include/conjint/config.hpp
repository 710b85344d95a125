// JSON configuration files for groups and subgroups. Unknown keys are
// rejected and every error names the offending key.

#ifndef CONJINT_CONFIG_HPP_
#define CONJINT_CONFIG_HPP_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "conjint/coset_geometry.hpp"
#include "conjint/group.hpp"

namespace conjint {

  // {"backend", "generators", "delta", "free_rank", "torsion_order",
  //  "torsion_letter", "automorphism", "relators", "dehn_check_length",
  //  "finite_order_bound", "radius_cap"}
  // delta is an integer or a string "k/2".
  GroupDescriptor parse_group_config(nlohmann::json const& j);
  GroupDescriptor load_group_config(std::filesystem::path const& path);

  struct SubgroupConfig {
    std::vector<std::string> generators;
    long                     K = 0;
  };

  // {"generators": [...], "K": k}
  SubgroupConfig parse_subgroup_config(nlohmann::json const& j);
  SubgroupConfig load_subgroup_config(std::filesystem::path const& path);

  SubgroupHandle make_subgroup(std::shared_ptr<Group const> group, SubgroupConfig const& cfg);

  HalfInteger parse_half_integer(std::string const& text);

}  // namespace conjint

#endif  // CONJINT_CONFIG_HPP_
