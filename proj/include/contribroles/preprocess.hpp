#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "contribroles/mention_extraction.hpp"

namespace contribroles {

// Porter (1980) stem of a lowercase token, followed by a small override
// table for forms that Porter leaves apart from their keyword
// (analysis -> analys, laboratory -> laborator).
std::string stem(std::string_view word);

// Plain Porter, without the overrides.
std::string porter_stem(std::string_view word);

// Lowercase ASCII, split on anything that is not a letter (bytes >= 0x80
// count as letters), drop tokens shorter than 2 and stopwords.
std::vector<std::string> raw_tokens(std::string_view text);

// raw_tokens() followed by stem().
std::vector<std::string> tokenize_normalize(std::string_view text);

bool is_stopword(std::string_view token);
const std::vector<std::string_view>& stopword_list();

enum class KeywordKind { Action, Object };

struct TermCounts {
  int in_actions = 0;
  int in_objects = 0;

  int total() const { return in_actions + in_objects; }
  bool operator==(const TermCounts&) const = default;
};

// Stemmed action and object keywords in definition order. Feature position
// k of a mention is keywords()[k]: actions first, then objects.
class Lexicon {
 public:
  Lexicon() = default;
  // Throws InputError if the two sets intersect or repeat a term.
  Lexicon(std::vector<std::string> action_keywords,
          std::vector<std::string> object_keywords,
          std::map<std::string, TermCounts> term_counts = {});

  const std::vector<std::string>& action_keywords() const { return actions_; }
  const std::vector<std::string>& object_keywords() const { return objects_; }
  const std::map<std::string, TermCounts>& term_counts() const { return counts_; }

  std::vector<std::string> keywords() const;
  std::size_t size() const { return actions_.size() + objects_.size(); }

  std::optional<KeywordKind> kind_of(std::string_view term) const;
  // Position in keywords(), if present.
  std::optional<std::size_t> index_of(std::string_view term) const;

  // Keyword index matched by a raw token: its stem, else the token itself
  // (so pre-stemmed text such as "analys" still matches).
  std::optional<std::size_t> match_token(std::string_view raw_token) const;

  // Sorted, unique keyword indices found anywhere in text.
  std::vector<std::size_t> match_text(std::string_view text) const;

  bool operator==(const Lexicon& other) const {
    return actions_ == other.actions_ && objects_ == other.objects_ &&
           counts_ == other.counts_;
  }

 private:
  std::vector<std::string> actions_;
  std::vector<std::string> objects_;
  std::map<std::string, TermCounts> counts_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Counts stemmed token occurrences in actions and in objects. Terms with a
// total of at least min_count become keywords: action keywords when strictly
// more common in actions, object keywords otherwise. Keywords are ordered by
// descending total, then alphabetically. term_counts keeps every term seen.
Lexicon build_lexicon(const MentionSet& ms, int min_count = 20);

// The 32 action and 43 object stems of the published keyword table, in
// printed order. No counts.
const Lexicon& full_lexicon();

// full_lexicon() minus the stems dropped with removed clusters: 64 terms.
const Lexicon& curated_lexicon();
const std::vector<std::string>& curated_dropped_stems();

inline constexpr std::string_view kPerformKeyword = "perform";

struct CanonicalTuple {
  std::string subject;
  std::vector<std::string> action;
  std::vector<std::string> object;
  RoleMention origin;

  bool operator==(const CanonicalTuple&) const = default;
};

// Keeps the subject; the new action is every action keyword found in the
// original action + object text, the new object every object keyword, both
// in lexicon order. An empty action becomes {"perform"}.
CanonicalTuple rewrite(const RoleMention& m, const Lexicon& lex);

}  // namespace contribroles
