#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "contribroles/preprocess.hpp"

namespace contribroles {

enum class ClusterKind { Action, Object };

std::string_view to_string(ClusterKind kind);

// A set of mentions grouped along one dimension. Members are indices into
// ClusterState::tuples.
struct Cluster {
  int id = 0;
  ClusterKind kind = ClusterKind::Action;
  std::vector<std::string> label;
  std::vector<std::size_t> members;

  std::size_t size() const { return members.size(); }
};

// Space-joined label terms; the tie-break key for labels.
std::string label_key(const std::vector<std::string>& label);

// Two partitions of the same mentions, one by action and one by object.
struct ClusterState {
  std::vector<CanonicalTuple> tuples;
  std::map<int, Cluster> action_clusters;
  std::map<int, Cluster> object_clusters;
  // Per tuple, the id of its action / object cluster.
  std::vector<int> assign_a;
  std::vector<int> assign_o;

  std::size_t num_mentions() const { return tuples.size(); }
  const std::map<int, Cluster>& clusters(ClusterKind kind) const {
    return kind == ClusterKind::Action ? action_clusters : object_clusters;
  }

  // Throws InvariantError if assignments and member lists disagree or do not
  // partition the mentions.
  void check_invariants() const;
};

// Weighted bipartite relation between action and object clusters: the
// weight of (a, o) is the number of mentions in both.
class RoleGraph {
 public:
  RoleGraph() = default;

  static RoleGraph build(const ClusterState& cs);

  const std::map<std::pair<int, int>, int>& edges() const { return edges_; }
  int weight(int action_id, int object_id) const;

  // Neighbouring clusters of the other kind, with weights.
  const std::map<int, int>& neighbours(ClusterKind kind, int id) const;
  std::size_t num_clusters(ClusterKind kind) const {
    return kind == ClusterKind::Action ? by_action_.size() : by_object_.size();
  }
  long total_weight() const;

 private:
  std::map<std::pair<int, int>, int> edges_;
  std::map<int, std::map<int, int>> by_action_;
  std::map<int, std::map<int, int>> by_object_;
};

// Groups tuples by identical canonical action (and object) keyword sets.
// Cluster ids follow first appearance. Throws InputError on empty input.
ClusterState init_clusters(std::vector<CanonicalTuple> tuples);

inline RoleGraph build_role_graph(const ClusterState& cs) { return RoleGraph::build(cs); }

enum class MergeStage { Label, Similarity };

struct MergeRecord {
  std::size_t step = 0;
  MergeStage stage = MergeStage::Label;
  ClusterKind kind = ClusterKind::Action;
  int survivor = 0;
  int absorbed = 0;
  std::vector<std::string> survivor_label;
  std::vector<std::string> absorbed_label;
  int survivor_size = 0;
  int absorbed_size = 0;
  // Similarity of the pair for similarity merges.
  std::optional<double> score;

  bool operator==(const MergeRecord&) const = default;
};

// Merges cluster b into cluster a, or a into b: the larger cluster (by
// member count) survives and keeps its label; on equal sizes the
// lexicographically smaller label survives, then the smaller id.
MergeRecord merge_clusters(ClusterState& cs, ClusterKind kind, int a, int b);

// Called after every merge with the updated state and rebuilt graph.
using MergeObserver =
    std::function<void(const ClusterState&, const RoleGraph&, const MergeRecord&)>;

// For every pair of role clusters (edges of the graph) where one's action
// label and object label both contain the other's, merges the action
// clusters and the object clusters. Pairs are taken smallest combined label
// first; repeats until no such pair remains.
ClusterState label_merge_pass(ClusterState cs, std::vector<MergeRecord>* log = nullptr,
                              const MergeObserver& observer = {});

// Similarity between two same-kind clusters. Throws InputError when the
// kinds differ.
using SimilarityFn = std::function<double(const Cluster&, const Cluster&, const RoleGraph&)>;

// Cosine of idf-damped co-occurrence vectors. For action clusters component
// o is r(a, o) * ln(|A| / deg(o)), deg(o) being the number of action
// clusters adjacent to o; object clusters symmetrically. 0 when either
// vector vanishes.
double similarity(const Cluster& c1, const Cluster& c2, const RoleGraph& g);

// Like similarity() but the idf weight, normalised to [0, 1] by ln |A|,
// multiplies each product term instead of each vector component. Clusters
// linked only through an object shared by every cluster score 0 even when
// their vectors are collinear.
double damped_similarity(const Cluster& c1, const Cluster& c2, const RoleGraph& g);

struct ClusteringOptions {
  double threshold = 0.35;
  SimilarityFn similarity_fn = similarity;
  MergeObserver observer;
};

struct ClusteringResult {
  ClusterState state;
  RoleGraph graph;
  std::vector<MergeRecord> log;
};

// Alternates label_merge_pass with a single merge of the most similar pair
// of action or object clusters, until the best similarity is at most the
// threshold. Equal similarities prefer the pair with the smaller combined
// label. Threshold must lie in (0, 1].
ClusteringResult run_clustering(ClusterState cs, const ClusteringOptions& options = {});

}  // namespace contribroles
