#include <set>

#include "doctest.h"

#include "contribroles/curation.hpp"
#include "contribroles/errors.hpp"
#include "test_util.hpp"

using namespace contribroles;
using testutil::tuple;

namespace {

// Three role clusters: (perform, data) x2, (draft, manuscript) x3,
// (read, manuscript) x1.
struct Fixture {
  ClusterState cs;
  RoleGraph g;
  Fixture() {
    std::vector<CanonicalTuple> ts;
    for (int i = 0; i < 2; ++i) ts.push_back(tuple({"perform"}, {"data"}, "A" + std::to_string(i)));
    for (int i = 0; i < 3; ++i) ts.push_back(tuple({"draft"}, {"manuscript"}, "B" + std::to_string(i)));
    ts.push_back(tuple({"read"}, {"manuscript"}, "C"));
    cs = init_clusters(std::move(ts));
    g = build_role_graph(cs);
  }
  // Role cluster id holding the mention of the given subject.
  int id_of(const std::string& subject) const {
    for (const auto& rc : role_clusters(cs, g)) {
      for (std::size_t m : rc.members) {
        if (cs.tuples[m].subject == subject) return rc.id;
      }
    }
    throw std::runtime_error("no such subject");
  }
};

Edit merge(std::vector<int> ids) { return {Edit::Op::Merge, std::move(ids), ""}; }
Edit remove(int id) { return {Edit::Op::Remove, {id}, ""}; }
Edit rename(int id, std::string name) { return {Edit::Op::Rename, {id}, std::move(name)}; }

std::multiset<std::string> subjects(const RoleTaxonomy& tax) {
  std::multiset<std::string> out;
  for (const auto& r : tax.roles) {
    for (const auto& t : r.members) out.insert(t.subject);
  }
  return out;
}

}  // namespace

TEST_CASE("role_clusters numbers the edges") {
  Fixture f;
  auto rcs = role_clusters(f.cs, f.g);
  REQUIRE(rcs.size() == 3);
  std::size_t total = 0;
  for (std::size_t i = 0; i < rcs.size(); ++i) {
    CHECK(rcs[i].id == static_cast<int>(i));
    CHECK(static_cast<int>(rcs[i].members.size()) ==
          f.g.weight(rcs[i].action_cluster, rcs[i].object_cluster));
    total += rcs[i].members.size();
  }
  CHECK(total == f.cs.num_mentions());
}

TEST_CASE("empty script on no clusters") {
  ClusterState empty;
  auto tax = apply_edits(empty, build_role_graph(empty), {});
  CHECK(tax.roles.empty());
  CHECK(tax.total_mentions == 0);
}

TEST_CASE("merge then remove drops the merged mentions") {
  Fixture f;
  int a = f.id_of("A0"), b = f.id_of("B0"), c = f.id_of("C");
  auto tax = apply_edits(f.cs, f.g, {merge({a, c}), remove(a), rename(b, "paper drafting")});
  REQUIRE(tax.roles.size() == 1);
  CHECK(tax.roles[0].name == "paper drafting");
  CHECK(tax.roles[0].count == 3);
  CHECK(tax.roles[0].fraction == doctest::Approx(0.5));
  CHECK(tax.removed_mentions == 3);
  CHECK(subjects(tax) == std::multiset<std::string>{"B0", "B1", "B2"});
}

TEST_CASE("roles follow naming order and conserve mentions") {
  Fixture f;
  int a = f.id_of("A0"), b = f.id_of("B0"), c = f.id_of("C");
  EditScript script{rename(c, "paper reading"), rename(a, "experimenting"), remove(b)};
  auto tax = apply_edits(f.cs, f.g, script);
  REQUIRE(tax.roles.size() == 2);
  CHECK(tax.roles[0].name == "paper reading");
  CHECK(tax.roles[1].name == "experimenting");
  std::size_t kept = 0;
  for (const auto& r : tax.roles) kept += r.count;
  CHECK(kept + tax.removed_mentions == f.cs.num_mentions());

  // Renaming again moves the role to its new naming position.
  script.push_back(rename(c, "review"));
  auto again = apply_edits(f.cs, f.g, script);
  CHECK(again.roles[0].name == "experimenting");
  CHECK(again.roles[1].name == "review");

  // Deterministic.
  auto twice = apply_edits(f.cs, f.g, script);
  REQUIRE(twice.roles.size() == again.roles.size());
  for (std::size_t i = 0; i < twice.roles.size(); ++i) {
    CHECK(twice.roles[i].name == again.roles[i].name);
    CHECK(twice.roles[i].members == again.roles[i].members);
  }
}

TEST_CASE("edit script errors") {
  Fixture f;
  int a = f.id_of("A0"), b = f.id_of("B0"), c = f.id_of("C");
  auto message = [&](const EditScript& s) {
    try {
      apply_edits(f.cs, f.g, s);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  // Dangling id after a merge absorbed it.
  auto dangling = message({merge({a, c}), rename(c, "x")});
  CHECK(dangling.find("edit #1") != std::string::npos);
  CHECK(dangling.find("unknown cluster id") != std::string::npos);

  CHECK(message({rename(a, "x"), rename(b, "x"), rename(c, "y")}).find("duplicate role name") !=
        std::string::npos);
  CHECK(message({rename(a, "x"), rename(b, "y")}).find("unnamed") != std::string::npos);
  CHECK(message({merge({a, a})}).find("twice") != std::string::npos);
  CHECK(message({rename(a, "")}).find("empty role name") != std::string::npos);
  CHECK(message({remove(99)}).find("edit #0") != std::string::npos);
}

TEST_CASE("generate_training_set") {
  Fixture f;
  int a = f.id_of("A0"), b = f.id_of("B0"), c = f.id_of("C");
  auto tax = apply_edits(f.cs, f.g, {merge({b, c}), rename(b, "writing"), rename(a, "experimenting")});
  auto ts = generate_training_set(tax);
  std::size_t total = 0;
  for (const auto& r : tax.roles) total += r.count;
  CHECK(ts.size() == total);
  CHECK(ts.size() == 6);
  for (const auto& lm : ts) {
    if (lm.canonical.subject[0] == 'A') CHECK(lm.label == "experimenting");
    else CHECK(lm.label == "writing");
  }
  CHECK_THROWS_AS(generate_training_set(RoleTaxonomy{}), InputError);
}
