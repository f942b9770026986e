#pragma once

// Synthetic contributions sections with known author-role pairs, built from
// per-role sentence templates the rule extractor understands.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "contribroles/corpus_ingest.hpp"
#include "contribroles/curation.hpp"
#include "contribroles/eval.hpp"

namespace contribroles::synth {

struct RoleTemplates {
  std::string role;
  // Published mention count, used as the sampling weight.
  long weight = 0;
  // (verb group, object) pairs for prose.
  std::vector<std::pair<std::string, std::string>> prose;
  // Role phrases for "AB: phrase, phrase" lists.
  std::vector<std::string> phrases;
};

// The 13 discovered roles in published order.
const std::vector<RoleTemplates>& role_templates();

// Distractors. Probabilities are per sentence for the first three and per
// section for the last two.
struct Perturbation {
  double adverb = 0.0;         // "AB jointly designed the study."
  double trailing = 0.0;       // "... in the laboratory of Prof. Smith."
  double parenthetical = 0.0;  // "AB (senior author) designed ..."
  double unrelated = 0.0;      // "The authors declare no competing interests."
  double supervision = 0.0;    // "AB supervised the work." (role with no templates)

  static Perturbation none() { return {}; }
  // The bundled perturbed set used by the round-trip check.
  static Perturbation standard() { return {0.3, 0.3, 0.15, 0.5, 0.2}; }
};

struct Options {
  std::uint64_t seed = 1;
  std::size_t sections = 100;
  std::size_t min_authors = 2;
  std::size_t max_authors = 8;
  std::size_t max_roles_per_author = 3;
  // Share of sections written as "AB: role, role; CD: role" lists.
  double structured_fraction = 0.1;
  // Chance that every author gets "paper reading" via "All authors ...".
  double all_authors_reading = 0.7;
  std::string id_prefix = "synth";
  Perturbation perturbation;
};

// One generated clause: the sentence (prose) or segment (list) index, the
// object text the extractor will see, and the role it expresses.
struct Clause {
  std::size_t sentence_index = 0;
  std::string object;
  std::string role;
};

struct Section {
  ContribSection section;
  std::set<AuthorRole> gold;
  std::vector<Clause> clauses;
};

std::vector<Section> generate(const Options& options);

// Runs extract_mentions over the sections and labels each mention with the
// role of its generating clause. Mentions no clause accounts for are
// dropped.
std::vector<LabeledMention> labeled_mentions(const std::vector<Section>& sections,
                                             const Lexicon& lex);

PairSets gold_pairs(const std::vector<Section>& sections);

}  // namespace contribroles::synth
