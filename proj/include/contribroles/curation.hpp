#pragma once

#include <string>
#include <vector>

#include "contribroles/coclustering.hpp"

namespace contribroles {

// A role cluster: the mentions shared by one action and one object cluster,
// i.e. one edge of the role graph. Ids number the edges in (action, object)
// order.
struct RoleCluster {
  int id = 0;
  int action_cluster = 0;
  int object_cluster = 0;
  std::vector<std::size_t> members;
};

std::vector<RoleCluster> role_clusters(const ClusterState& cs, const RoleGraph& g);

struct Edit {
  enum class Op { Merge, Remove, Rename };
  Op op = Op::Rename;
  // Merge: all ids, the first survives. Remove/Rename: one id.
  std::vector<int> ids;
  std::string name;
};

using EditScript = std::vector<Edit>;

struct Role {
  std::string name;
  std::vector<CanonicalTuple> members;
  std::size_t count = 0;
  // count over all input mentions, removed ones included.
  double fraction = 0.0;
};

struct RoleTaxonomy {
  std::vector<Role> roles;
  std::size_t total_mentions = 0;
  std::size_t removed_mentions = 0;
};

// Applies the edits in order to the role clusters of cs. Roles come out in
// the order their final name was assigned. Throws InputError naming the edit
// index for an unknown id, a duplicate role name, or a surviving cluster
// that was never named.
RoleTaxonomy apply_edits(const ClusterState& cs, const RoleGraph& g, const EditScript& script);

struct LabeledMention {
  RoleMention mention;
  CanonicalTuple canonical;
  std::string label;
};

// One labeled mention per role member. Throws InputError on an empty
// taxonomy.
std::vector<LabeledMention> generate_training_set(const RoleTaxonomy& tax);

}  // namespace contribroles
