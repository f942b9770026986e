#pragma once

#include <optional>
#include <string>
#include <vector>

#include "contribroles/classifier.hpp"
#include "contribroles/corpus_ingest.hpp"
#include "contribroles/mention_extraction.hpp"

namespace contribroles {

struct AuthorRolePair {
  std::string doc_id;
  std::string author;
  std::string role;
  double confidence = 0.0;
  // The mention the pair was classified from.
  RoleMention source;

  bool operator==(const AuthorRolePair&) const = default;
};

// detect_format -> structured or prose extraction -> split_subjects ->
// dedupe, with doc_id stamped on every mention. When the section carries no
// author hints, "All authors" expands to the individual subjects named
// elsewhere in the section.
MentionSet extract_mentions(const ContribSection& section,
                            std::vector<std::string>* warnings = nullptr);

// Hints used for "All authors": the section's own, or the distinct
// individual subjects of the raw mentions in order of appearance.
std::vector<std::string> effective_author_hints(const ContribSection& section,
                                                const MentionSet& raw);

// Splits an object of coordinated phrases ("study design and statistical
// analysis") into one mention per phrase when every phrase contains an
// object keyword; otherwise returns m alone.
std::vector<RoleMention> split_object_conjuncts(const RoleMention& m, const Lexicon& lex);

struct ExtractOptions {
  std::optional<double> unknown_margin;
};

// Classifies every mention, its object split into conjuncts, and collapses repeated (author, role) pairs,
// keeping the most confident. Pairs are ordered by first appearance. Throws
// InputError if the model was trained on a different keyword list.
std::vector<AuthorRolePair> extract_roles(const ContribSection& section, const NBModel& model,
                                          const Lexicon& lex, const ExtractOptions& options = {});

}  // namespace contribroles
