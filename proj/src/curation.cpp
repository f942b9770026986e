#include "contribroles/curation.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "contribroles/errors.hpp"

namespace contribroles {

std::vector<RoleCluster> role_clusters(const ClusterState& cs, const RoleGraph& g) {
  std::vector<RoleCluster> out;
  std::map<std::pair<int, int>, int> ids;
  for (const auto& [edge, w] : g.edges()) {
    ids[edge] = static_cast<int>(out.size());
    out.push_back({static_cast<int>(out.size()), edge.first, edge.second, {}});
  }
  for (std::size_t m = 0; m < cs.num_mentions(); ++m) {
    out[ids.at({cs.assign_a[m], cs.assign_o[m]})].members.push_back(m);
  }
  return out;
}

namespace {

struct Working {
  std::vector<std::size_t> members;
  std::optional<std::string> name;
  std::size_t named_at = 0;
};

std::string describe(std::size_t index, const Edit& e) {
  static const char* kOps[] = {"merge", "remove", "rename"};
  return "edit #" + std::to_string(index) + " (" + kOps[static_cast<int>(e.op)] + ")";
}

}  // namespace

RoleTaxonomy apply_edits(const ClusterState& cs, const RoleGraph& g, const EditScript& script) {
  std::map<int, Working> live;
  for (auto& rc : role_clusters(cs, g)) live[rc.id].members = std::move(rc.members);

  RoleTaxonomy tax;
  tax.total_mentions = cs.num_mentions();
  for (std::size_t i = 0; i < script.size(); ++i) {
    const Edit& e = script[i];
    if (e.ids.empty()) throw InputError(describe(i, e) + ": no cluster id given");
    for (int id : e.ids) {
      if (!live.contains(id)) {
        throw InputError(describe(i, e) + ": unknown cluster id " + std::to_string(id));
      }
    }
    switch (e.op) {
      case Edit::Op::Merge: {
        std::set<int> distinct(e.ids.begin(), e.ids.end());
        if (distinct.size() != e.ids.size()) {
          throw InputError(describe(i, e) + ": cluster id listed twice");
        }
        Working& survivor = live.at(e.ids.front());
        for (std::size_t k = 1; k < e.ids.size(); ++k) {
          auto& other = live.at(e.ids[k]).members;
          survivor.members.insert(survivor.members.end(), other.begin(), other.end());
          live.erase(e.ids[k]);
        }
        std::sort(survivor.members.begin(), survivor.members.end());
        break;
      }
      case Edit::Op::Remove:
        for (int id : e.ids) {
          tax.removed_mentions += live.at(id).members.size();
          live.erase(id);
        }
        break;
      case Edit::Op::Rename: {
        if (e.ids.size() != 1) throw InputError(describe(i, e) + ": rename takes one id");
        if (e.name.empty()) throw InputError(describe(i, e) + ": empty role name");
        for (const auto& [id, w] : live) {
          if (id != e.ids.front() && w.name == e.name) {
            throw InputError(describe(i, e) + ": duplicate role name \"" + e.name + "\"");
          }
        }
        Working& w = live.at(e.ids.front());
        w.name = e.name;
        w.named_at = i;
        break;
      }
    }
  }

  std::vector<std::pair<std::size_t, const Working*>> named;
  for (const auto& [id, w] : live) {
    if (!w.name) {
      throw InputError("cluster " + std::to_string(id) + " survives the edit script unnamed");
    }
    named.emplace_back(w.named_at, &w);
  }
  std::sort(named.begin(), named.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [at, w] : named) {
    Role r;
    r.name = *w->name;
    for (std::size_t m : w->members) r.members.push_back(cs.tuples[m]);
    r.count = r.members.size();
    r.fraction = tax.total_mentions ? static_cast<double>(r.count) / tax.total_mentions : 0.0;
    tax.roles.push_back(std::move(r));
  }
  return tax;
}

std::vector<LabeledMention> generate_training_set(const RoleTaxonomy& tax) {
  if (tax.roles.empty()) throw InputError("cannot build a training set from an empty taxonomy");
  std::vector<LabeledMention> out;
  for (const Role& r : tax.roles) {
    for (const CanonicalTuple& t : r.members) out.push_back({t.origin, t, r.name});
  }
  return out;
}

}  // namespace contribroles
