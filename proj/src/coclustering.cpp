#include "contribroles/coclustering.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "contribroles/errors.hpp"

namespace contribroles {

std::string_view to_string(ClusterKind kind) {
  return kind == ClusterKind::Action ? "action" : "object";
}

std::string label_key(const std::vector<std::string>& label) {
  std::string out;
  for (const auto& t : label) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

void ClusterState::check_invariants() const {
  const std::size_t n = tuples.size();
  if (assign_a.size() != n || assign_o.size() != n) {
    throw InvariantError("cluster assignment is not total");
  }
  for (ClusterKind kind : {ClusterKind::Action, ClusterKind::Object}) {
    const auto& assign = kind == ClusterKind::Action ? assign_a : assign_o;
    std::vector<int> owner(n, -1);
    for (const auto& [id, c] : clusters(kind)) {
      if (c.id != id || c.kind != kind) throw InvariantError("cluster id/kind mismatch");
      if (c.members.empty()) throw InvariantError("empty cluster");
      for (std::size_t m : c.members) {
        if (m >= n || owner[m] != -1) throw InvariantError("clusters do not partition mentions");
        owner[m] = id;
      }
    }
    for (std::size_t m = 0; m < n; ++m) {
      if (owner[m] != assign[m]) throw InvariantError("assignment disagrees with members");
    }
  }
}

RoleGraph RoleGraph::build(const ClusterState& cs) {
  RoleGraph g;
  for (std::size_t m = 0; m < cs.num_mentions(); ++m) {
    int a = cs.assign_a[m];
    int o = cs.assign_o[m];
    ++g.edges_[{a, o}];
    ++g.by_action_[a][o];
    ++g.by_object_[o][a];
  }
  return g;
}

int RoleGraph::weight(int action_id, int object_id) const {
  auto it = edges_.find({action_id, object_id});
  return it == edges_.end() ? 0 : it->second;
}

const std::map<int, int>& RoleGraph::neighbours(ClusterKind kind, int id) const {
  static const std::map<int, int> kEmpty;
  const auto& side = kind == ClusterKind::Action ? by_action_ : by_object_;
  auto it = side.find(id);
  return it == side.end() ? kEmpty : it->second;
}

long RoleGraph::total_weight() const {
  long total = 0;
  for (const auto& [key, w] : edges_) total += w;
  return total;
}

ClusterState init_clusters(std::vector<CanonicalTuple> tuples) {
  if (tuples.empty()) throw InputError("cannot cluster an empty mention set");
  ClusterState cs;
  cs.tuples = std::move(tuples);
  std::map<std::string, int> action_ids;
  std::map<std::string, int> object_ids;
  auto place = [](std::map<std::string, int>& ids, std::map<int, Cluster>& clusters,
                  ClusterKind kind, const std::vector<std::string>& label, std::size_t m) {
    auto [it, inserted] = ids.emplace(label_key(label), static_cast<int>(ids.size()));
    if (inserted) clusters[it->second] = Cluster{it->second, kind, label, {}};
    clusters[it->second].members.push_back(m);
    return it->second;
  };
  for (std::size_t m = 0; m < cs.tuples.size(); ++m) {
    const auto& t = cs.tuples[m];
    cs.assign_a.push_back(place(action_ids, cs.action_clusters, ClusterKind::Action, t.action, m));
    cs.assign_o.push_back(place(object_ids, cs.object_clusters, ClusterKind::Object, t.object, m));
  }
  return cs;
}

MergeRecord merge_clusters(ClusterState& cs, ClusterKind kind, int a, int b) {
  auto& clusters = kind == ClusterKind::Action ? cs.action_clusters : cs.object_clusters;
  auto& assign = kind == ClusterKind::Action ? cs.assign_a : cs.assign_o;
  auto ia = clusters.find(a);
  auto ib = clusters.find(b);
  if (a == b || ia == clusters.end() || ib == clusters.end()) {
    throw InvariantError("merge of unknown or identical clusters");
  }
  const Cluster* x = &ia->second;
  const Cluster* y = &ib->second;
  auto rank = [](const Cluster& c) {
    return std::make_tuple(-static_cast<long>(c.size()), label_key(c.label), c.id);
  };
  if (rank(*y) < rank(*x)) std::swap(x, y);
  Cluster& survivor = clusters.at(x->id);
  Cluster absorbed = std::move(clusters.at(y->id));
  clusters.erase(absorbed.id);

  MergeRecord rec;
  rec.kind = kind;
  rec.survivor = survivor.id;
  rec.absorbed = absorbed.id;
  rec.survivor_label = survivor.label;
  rec.absorbed_label = absorbed.label;
  rec.survivor_size = static_cast<int>(survivor.size());
  rec.absorbed_size = static_cast<int>(absorbed.size());

  for (std::size_t m : absorbed.members) assign[m] = survivor.id;
  survivor.members.insert(survivor.members.end(), absorbed.members.begin(),
                          absorbed.members.end());
  std::sort(survivor.members.begin(), survivor.members.end());
  return rec;
}

namespace {

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool contains(const std::vector<std::string>& big, const std::vector<std::string>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

void record(ClusterState& cs, MergeRecord rec, std::vector<MergeRecord>* log,
            std::size_t& step, const MergeObserver& observer) {
  rec.step = step++;
  if (observer) observer(cs, RoleGraph::build(cs), rec);
  if (log) log->push_back(std::move(rec));
}

struct RoleNode {
  int a;
  int o;
  std::string key;
  std::vector<std::string> action_terms;
  std::vector<std::string> object_terms;
};

ClusterState label_pass_impl(ClusterState cs, std::vector<MergeRecord>* log, std::size_t& step,
                             const MergeObserver& observer) {
  while (true) {
    RoleGraph g = RoleGraph::build(cs);
    std::vector<RoleNode> roles;
    for (const auto& [edge, w] : g.edges()) {
      const auto& ac = cs.action_clusters.at(edge.first);
      const auto& oc = cs.object_clusters.at(edge.second);
      roles.push_back({edge.first, edge.second, label_key(ac.label) + "|" + label_key(oc.label),
                       sorted(ac.label), sorted(oc.label)});
    }
    std::optional<std::tuple<std::string, int, int, int, int>> best;
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = 0; i < roles.size(); ++i) {
      for (std::size_t j = i + 1; j < roles.size(); ++j) {
        const RoleNode& x = roles[i];
        const RoleNode& y = roles[j];
        bool x_has_y = contains(x.action_terms, y.action_terms) &&
                       contains(x.object_terms, y.object_terms);
        bool y_has_x = contains(y.action_terms, x.action_terms) &&
                       contains(y.object_terms, x.object_terms);
        if (!x_has_y && !y_has_x) continue;
        const RoleNode& lo = x.key <= y.key ? x : y;
        const RoleNode& hi = x.key <= y.key ? y : x;
        auto cand = std::make_tuple(lo.key + "||" + hi.key, lo.a, lo.o, hi.a, hi.o);
        if (!best || cand < *best) {
          best = std::move(cand);
          bi = i;
          bj = j;
        }
      }
    }
    if (!best) return cs;
    int a1 = roles[bi].a, o1 = roles[bi].o, a2 = roles[bj].a, o2 = roles[bj].o;
    if (a1 != a2) {
      MergeRecord rec = merge_clusters(cs, ClusterKind::Action, a1, a2);
      rec.stage = MergeStage::Label;
      record(cs, std::move(rec), log, step, observer);
    }
    if (o1 != o2) {
      MergeRecord rec = merge_clusters(cs, ClusterKind::Object, o1, o2);
      rec.stage = MergeStage::Label;
      record(cs, std::move(rec), log, step, observer);
    }
  }
}

// idf-weighted neighbour vector of a cluster, keyed by neighbour id.
std::map<int, double> weighted_vector(const Cluster& c, const RoleGraph& g, bool weight_terms) {
  ClusterKind other = c.kind == ClusterKind::Action ? ClusterKind::Object : ClusterKind::Action;
  const double n = static_cast<double>(g.num_clusters(c.kind));
  std::map<int, double> v;
  for (const auto& [nb, w] : g.neighbours(c.kind, c.id)) {
    double deg = static_cast<double>(g.neighbours(other, nb).size());
    double idf = deg > 0 ? std::log(n / deg) : 0.0;
    v[nb] = weight_terms ? idf : w * idf;
  }
  return v;
}

void check_kinds(const Cluster& c1, const Cluster& c2) {
  if (c1.kind != c2.kind) throw InputError("similarity between clusters of different kinds");
}

}  // namespace

ClusterState label_merge_pass(ClusterState cs, std::vector<MergeRecord>* log,
                              const MergeObserver& observer) {
  std::size_t step = log ? log->size() : 0;
  return label_pass_impl(std::move(cs), log, step, observer);
}

double similarity(const Cluster& c1, const Cluster& c2, const RoleGraph& g) {
  check_kinds(c1, c2);
  auto v1 = weighted_vector(c1, g, false);
  auto v2 = weighted_vector(c2, g, false);
  double dot = 0, n1 = 0, n2 = 0;
  for (const auto& [k, x] : v1) {
    n1 += x * x;
    if (auto it = v2.find(k); it != v2.end()) dot += x * it->second;
  }
  for (const auto& [k, y] : v2) n2 += y * y;
  if (n1 <= 0 || n2 <= 0) return 0.0;
  return std::clamp(dot / (std::sqrt(n1) * std::sqrt(n2)), 0.0, 1.0);
}

double damped_similarity(const Cluster& c1, const Cluster& c2, const RoleGraph& g) {
  check_kinds(c1, c2);
  const double n = static_cast<double>(g.num_clusters(c1.kind));
  if (n <= 1) return 0.0;
  auto idf = weighted_vector(c1, g, true);
  const auto& r1 = g.neighbours(c1.kind, c1.id);
  const auto& r2 = g.neighbours(c2.kind, c2.id);
  double dot = 0, n1 = 0, n2 = 0;
  for (const auto& [k, x] : r1) {
    n1 += double(x) * x;
    if (auto it = r2.find(k); it != r2.end()) dot += double(x) * it->second * idf.at(k) / std::log(n);
  }
  for (const auto& [k, y] : r2) n2 += double(y) * y;
  if (n1 <= 0 || n2 <= 0) return 0.0;
  return std::clamp(dot / (std::sqrt(n1) * std::sqrt(n2)), 0.0, 1.0);
}

ClusteringResult run_clustering(ClusterState cs, const ClusteringOptions& options) {
  if (!(options.threshold > 0.0 && options.threshold <= 1.0)) {
    throw InputError("clustering threshold must lie in (0, 1]");
  }
  const SimilarityFn& sim = options.similarity_fn ? options.similarity_fn : SimilarityFn(similarity);
  ClusteringResult result;
  std::size_t step = 0;
  constexpr double kTieEps = 1e-12;
  while (true) {
    cs = label_pass_impl(std::move(cs), &result.log, step, options.observer);
    RoleGraph g = RoleGraph::build(cs);

    bool found = false;
    double best = 0;
    std::tuple<std::string, int, int, int> best_key;  // label key, kind, id, id
    ClusterKind best_kind = ClusterKind::Action;
    for (ClusterKind kind : {ClusterKind::Action, ClusterKind::Object}) {
      const auto& clusters = cs.clusters(kind);
      std::vector<const Cluster*> list;
      std::vector<std::string> keys;
      for (const auto& [id, c] : clusters) {
        list.push_back(&c);
        keys.push_back(label_key(c.label));
      }
      for (std::size_t i = 0; i < list.size(); ++i) {
        for (std::size_t j = i + 1; j < list.size(); ++j) {
          double s = sim(*list[i], *list[j], g);
          const bool lo_first = keys[i] <= keys[j];
          auto key = std::make_tuple((lo_first ? keys[i] : keys[j]) + "|" + (lo_first ? keys[j] : keys[i]),
                                     static_cast<int>(kind), list[i]->id, list[j]->id);
          bool better = !found || s > best + kTieEps ||
                        (std::abs(s - best) <= kTieEps && key < best_key);
          if (better) {
            found = true;
            best = s;
            best_key = std::move(key);
            best_kind = kind;
          }
        }
      }
    }
    if (!found || best <= options.threshold) break;
    MergeRecord rec = merge_clusters(cs, best_kind, std::get<2>(best_key), std::get<3>(best_key));
    rec.stage = MergeStage::Similarity;
    rec.score = best;
    record(cs, std::move(rec), &result.log, step, options.observer);
  }
  result.graph = RoleGraph::build(cs);
  result.state = std::move(cs);
  return result;
}

}  // namespace contribroles
