#include <cmath>

#include "doctest.h"

#include "contribroles/coclustering.hpp"
#include "contribroles/errors.hpp"
#include "test_util.hpp"

using namespace contribroles;
using testutil::tuple;

namespace {

using Terms = std::vector<std::string>;

// Builds a state whose action/object clusters are exactly the given
// (action, object, multiplicity) combinations.
ClusterState state(const std::vector<std::tuple<Terms, Terms, int>>& spec) {
  std::vector<CanonicalTuple> ts;
  for (const auto& [a, o, n] : spec) {
    for (int i = 0; i < n; ++i) ts.push_back(tuple(a, o));
  }
  return init_clusters(std::move(ts));
}

const Cluster& by_label(const ClusterState& cs, ClusterKind kind, const Terms& label) {
  for (const auto& [id, c] : cs.clusters(kind)) {
    if (c.label == label) return c;
  }
  throw std::runtime_error("no cluster " + label_key(label));
}

ClusteringOptions at(double threshold) {
  ClusteringOptions o;
  o.threshold = threshold;
  return o;
}

}  // namespace

TEST_CASE("init_clusters") {
  auto cs = state({{{"perform"}, {"data"}, 2}, {{"draft"}, {"data"}, 1}});
  CHECK(cs.action_clusters.size() == 2);
  CHECK(cs.action_clusters.at(0).size() == 2);
  CHECK(cs.action_clusters.at(1).size() == 1);
  CHECK(cs.object_clusters.size() == 1);
  CHECK(cs.assign_a == std::vector<int>{0, 0, 1});
  cs.check_invariants();

  auto one = state({{{"perform"}, {}, 1}});
  CHECK(one.action_clusters.size() == 1);
  CHECK(one.object_clusters.size() == 1);

  CHECK_THROWS_AS(init_clusters({}), InputError);
}

TEST_CASE("build_role_graph") {
  auto two = build_role_graph(state({{{"a"}, {"x"}, 1}, {{"a"}, {"y"}, 1}}));
  CHECK(two.edges().size() == 2);
  CHECK(two.weight(0, 0) == 1);
  CHECK(two.weight(0, 1) == 1);

  auto single = build_role_graph(state({{{"a"}, {"x"}, 5}}));
  CHECK(single.edges().size() == 1);
  CHECK(single.weight(0, 0) == 5);

  // Four mentions; compare against a direct count.
  auto cs = state({{{"a"}, {"x"}, 1}, {{"b"}, {"x"}, 1}, {{"a"}, {"y"}, 1}, {{"a"}, {"x"}, 1}});
  auto g = build_role_graph(cs);
  for (const auto& [aid, ac] : cs.action_clusters) {
    for (const auto& [oid, oc] : cs.object_clusters) {
      int count = 0;
      for (std::size_t m = 0; m < cs.num_mentions(); ++m) {
        count += cs.assign_a[m] == aid && cs.assign_o[m] == oid;
      }
      CHECK(g.weight(aid, oid) == count);
    }
  }
  CHECK(g.total_weight() == 4);
  CHECK(g.edges().size() == 3);
}

TEST_CASE("label_merge_pass") {
  // ({perform}, {analys, data}) contains ({perform}, {analys}); the larger wins.
  auto cs = state({{{"perform"}, {"analys", "data"}, 3}, {{"perform"}, {"analys"}, 1}});
  std::vector<MergeRecord> log;
  auto out = label_merge_pass(cs, &log);
  CHECK(out.object_clusters.size() == 1);
  CHECK(out.object_clusters.begin()->second.label == Terms{"analys", "data"});
  REQUIRE(log.size() == 1);
  CHECK(log[0].kind == ClusterKind::Object);
  CHECK(log[0].stage == MergeStage::Label);
  out.check_invariants();

  auto disjoint = state({{{"read"}, {"manuscript"}, 1}, {{"perform"}, {"data"}, 1}});
  auto same = label_merge_pass(disjoint, &log);
  CHECK(same.action_clusters.size() == 2);
  CHECK(same.object_clusters.size() == 2);

  // Equal sizes: the lexicographically smaller label key survives.
  auto tie = state({{{"perform"}, {"data"}, 2}, {{"perform"}, {"analys", "data"}, 2}});
  auto t = label_merge_pass(tie);
  REQUIRE(t.object_clusters.size() == 1);
  CHECK(t.object_clusters.begin()->second.label == Terms{"analys", "data"});

  // Merging both dimensions at once.
  auto both = state({{{"read", "approv"}, {"manuscript", "final"}, 1}, {{"read"}, {"manuscript"}, 4}});
  auto b = label_merge_pass(both);
  CHECK(b.action_clusters.size() == 1);
  CHECK(b.object_clusters.size() == 1);
  CHECK(b.action_clusters.begin()->second.label == Terms{"read"});
}

TEST_CASE("similarity") {
  // a1: o1 x2, o2 x1, o3 x1; a2: o1 x1, o3 x3; a3: o2 x1, o3 x1.
  // deg(o1) = deg(o2) = 2, deg(o3) = 3 = |A| so o3 carries no weight:
  // a1 ~ (2, 1, 0), a2 ~ (1, 0, 0), cosine = 2 / sqrt(5).
  auto cs = state({{{"a1"}, {"o1"}, 2}, {{"a1"}, {"o2"}, 1}, {{"a1"}, {"o3"}, 1},
                   {{"a2"}, {"o1"}, 1}, {{"a2"}, {"o3"}, 3}, {{"a3"}, {"o2"}, 1},
                   {{"a3"}, {"o3"}, 1}});
  auto g = build_role_graph(cs);
  const auto& a1 = by_label(cs, ClusterKind::Action, {"a1"});
  const auto& a2 = by_label(cs, ClusterKind::Action, {"a2"});
  const auto& a3 = by_label(cs, ClusterKind::Action, {"a3"});
  CHECK(similarity(a1, a2, g) == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-12));
  CHECK(similarity(a2, a1, g) == doctest::Approx(similarity(a1, a2, g)).epsilon(1e-12));
  // a2 ~ (1, 0, 0), a3 ~ (0, 1, 0)
  CHECK(similarity(a2, a3, g) == 0.0);
  CHECK(similarity(a1, a1, g) == doctest::Approx(1.0));

  // Object side: |O| = 3, deg(a1) = 3 -> idf 0, deg(a2) = deg(a3) = 2.
  // o1 ~ (0, 1, 0), o2 ~ (0, 0, 1), o3 ~ (0, 3, 1):
  // cos(o1, o3) = 3 / sqrt(10).
  const auto& o1 = by_label(cs, ClusterKind::Object, {"o1"});
  const auto& o3 = by_label(cs, ClusterKind::Object, {"o3"});
  CHECK(similarity(o1, o3, g) == doctest::Approx(3.0 / std::sqrt(10.0)).epsilon(1e-12));

  CHECK_THROWS_AS(similarity(a1, o1, g), InputError);
}

TEST_CASE("damped_similarity") {
  // a1 and a2 share only o_all, adjacent to every action cluster: cosine
  // cannot tell them apart from identical clusters, the damped score is 0.
  auto cs = state({{{"a1"}, {"oall"}, 1}, {{"a2"}, {"oall"}, 2}, {{"a3"}, {"oall"}, 1},
                   {{"a3"}, {"o3"}, 1}});
  auto g = build_role_graph(cs);
  const auto& a1 = by_label(cs, ClusterKind::Action, {"a1"});
  const auto& a2 = by_label(cs, ClusterKind::Action, {"a2"});
  CHECK(similarity(a1, a2, g) == 0.0);  // idf(oall) = 0: both vectors vanish

  // a1: x1 w2, x2 w1; a2: x1 w1; a3: x2 w1. |A| = 3, deg(x1) = deg(x2) = 2.
  // damped = (2 * 1 * ln(3/2) / ln 3) / (sqrt(5) * 1)
  auto cs2 = state({{{"a1"}, {"x1"}, 2}, {{"a1"}, {"x2"}, 1}, {{"a2"}, {"x1"}, 1},
                    {{"a3"}, {"x2"}, 1}});
  auto g2 = build_role_graph(cs2);
  const auto& b1 = by_label(cs2, ClusterKind::Action, {"a1"});
  const auto& b2 = by_label(cs2, ClusterKind::Action, {"a2"});
  double expected = 2 * std::log(1.5) / std::log(3.0) / std::sqrt(5.0);
  CHECK(damped_similarity(b1, b2, g2) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(damped_similarity(b2, b1, g2) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("run_clustering") {
  // Threshold 1.0 admits no similarity merge.
  auto cs = state({{{"a"}, {"x"}, 1}, {{"b"}, {"x"}, 1}, {{"c"}, {"y"}, 1}, {{"a"}, {"z"}, 1}});
  auto r = run_clustering(cs, at(1.0));
  for (const auto& rec : r.log) CHECK(rec.stage == MergeStage::Label);
  CHECK(r.state.action_clusters.size() == 3);

  // read/review and manuscript/paper both have collinear profiles; the tie
  // goes to the smaller combined label, "manuscript|paper".
  auto twins = state({{{"read"}, {"manuscript"}, 3}, {{"review"}, {"manuscript"}, 3},
                      {{"read"}, {"paper"}, 1},     {{"review"}, {"paper"}, 1},
                      {{"perform"}, {"data"}, 2},   {{"perform"}, {"sampl"}, 1},
                      {{"collect"}, {"sampl"}, 1}});
  auto t = run_clustering(twins, at(0.5));
  REQUIRE_FALSE(t.log.empty());
  const auto& first = t.log.front();
  CHECK(first.stage == MergeStage::Similarity);
  CHECK(first.kind == ClusterKind::Object);
  CHECK(first.survivor_label == Terms{"manuscript"});
  CHECK(first.absorbed_label == Terms{"paper"});
  REQUIRE(first.score);
  CHECK(*first.score == doctest::Approx(1.0));
  for (const auto& rec : t.log) {
    if (rec.score) CHECK(*rec.score > 0.5);
  }

  CHECK_THROWS_AS(run_clustering(cs, at(0.0)), InputError);
  CHECK_THROWS_AS(run_clustering(cs, at(1.5)), InputError);
}

TEST_CASE("run_clustering observer sees every merge") {
  auto cs = state({{{"read"}, {"manuscript"}, 3}, {{"review"}, {"manuscript"}, 2},
                   {{"perform"}, {"data", "analys"}, 2}, {{"perform"}, {"analys"}, 1}});
  std::size_t seen = 0;
  ClusteringOptions opts;
  opts.threshold = 0.1;
  opts.observer = [&](const ClusterState& s, const RoleGraph& g, const MergeRecord& rec) {
    CHECK(rec.step == seen++);
    s.check_invariants();
    CHECK(g.total_weight() == static_cast<long>(s.num_mentions()));
  };
  auto r = run_clustering(cs, opts);
  CHECK(seen == r.log.size());
  CHECK(seen > 0);
}
