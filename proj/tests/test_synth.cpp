#include <set>

#include "doctest.h"

#include "contribroles/json_io.hpp"
#include "contribroles/preprocess.hpp"
#include "contribroles/synth.hpp"

using namespace contribroles;

TEST_CASE("role templates") {
  const auto& ts = synth::role_templates();
  REQUIRE(ts.size() == 13);
  CHECK(ts.front().role == "experimenting");
  CHECK(ts.back().role == "literature review");
  for (const auto& t : ts) {
    CHECK(t.weight > 0);
    CHECK_FALSE(t.prose.empty());
    CHECK_FALSE(t.phrases.empty());
  }
}

TEST_CASE("generation is deterministic per seed") {
  synth::Options o;
  o.sections = 20;
  o.perturbation = synth::Perturbation::standard();
  auto a = synth::generate(o), b = synth::generate(o);
  REQUIRE(a.size() == 20);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].section.text == b[i].section.text);
    CHECK(a[i].gold == b[i].gold);
  }
  o.seed = 2;
  auto c = synth::generate(o);
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i].section.text == c[i].section.text;
  CHECK(same < a.size());
  CHECK(a[0].section.doc_id == "synth-0000");
}

TEST_CASE("sections are consistent with their gold pairs") {
  synth::Options o;
  o.sections = 50;
  o.structured_fraction = 0.3;
  auto secs = synth::generate(o);
  std::size_t structured = 0;
  for (const auto& s : secs) {
    std::set<std::string> authors(s.section.author_hints.begin(), s.section.author_hints.end());
    CHECK(authors.size() >= o.min_authors);
    CHECK(authors.size() <= o.max_authors);
    CHECK_FALSE(s.gold.empty());
    for (const auto& [author, role] : s.gold) CHECK(authors.contains(author));
    structured += detect_format(s.section.text) == SectionFormat::StructuredList;
  }
  CHECK(structured > 0);
  CHECK(structured < secs.size());
  auto gold = synth::gold_pairs(secs);
  CHECK(gold.size() == secs.size());
}

TEST_CASE("labeled mentions carry template roles") {
  synth::Options o;
  o.sections = 30;
  auto secs = synth::generate(o);
  auto lms = synth::labeled_mentions(secs, full_lexicon());
  CHECK(lms.size() > secs.size());
  std::set<std::string> roles;
  for (const auto& t : synth::role_templates()) roles.insert(t.role);
  for (const auto& lm : lms) {
    CHECK(roles.contains(lm.label));
    CHECK_FALSE(lm.mention.doc_id.empty());
  }
}
