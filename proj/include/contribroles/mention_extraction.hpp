#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace contribroles {

// One subject-action-object tuple. Either action or object may be empty,
// never both; subject is never empty.
struct RoleMention {
  std::string subject;
  std::string action;
  std::string object;
  std::size_t sentence_index = 0;
  std::string doc_id;

  bool operator==(const RoleMention&) const = default;
};

// Mentions of one section or corpus; duplicate-free once passed through
// dedupe().
using MentionSet = std::vector<RoleMention>;

enum class SectionFormat { Prose, StructuredList };

struct Extraction {
  MentionSet mentions;
  std::vector<std::string> warnings;
  // Sentences or segments that produced nothing.
  std::size_t skipped = 0;
};

// StructuredList when at least two ';'/newline segments look like
// "authors: roles", or when the text is a single such segment.
SectionFormat detect_format(std::string_view text);

// "AB, CD: design, analysis; EF: writing" -> one mention per (author, role)
// with action "perform". Segments without subjects or roles are skipped with
// a warning.
Extraction extract_structured(std::string_view text);

// Splits on '.', '!' and '?', guarding initials ("J.") and a small
// abbreviation list. The sentence terminator is not part of the sentence.
std::vector<std::string> split_sentences(std::string_view text);

// Rule-based subject/verb-group/object extraction for contribution prose.
//
// Subject: the leading run of author units joined by ',', "and" or '&'. A unit
// is an author hint (compared ignoring case, hyphens and periods), an
// initials token of 2-4 capitals with at most one internal hyphen ("AJ-M",
// "MPU"), or the phrase "all authors".
//
// Verb group: auxiliaries, adverbs in -ly, verb forms (-ed, common irregular
// pasts, stems that are action keywords) and particles, ending before the
// first determiner or object keyword. Verbs coordinated inside the group
// ("read and approved") each yield a mention sharing the object.
//
// Object: the rest of the clause. A new clause starts at "and" or ',' when it
// is followed by a fresh verb form (same subject) or by a fresh subject and a
// verb. ';' also starts a new clause, inheriting the subject if none is found.
Extraction extract_svo(std::string_view text,
                       std::span<const std::string> author_hints = {});

// Splits a compound subject into one mention per author. "All authors"
// expands to every hint, or stays verbatim when there are none.
std::vector<RoleMention> split_subjects(const RoleMention& m,
                                        std::span<const std::string> author_hints);

// Collapses identical (subject, action, object) triples, keeping the lowest
// sentence index at the position of the first occurrence.
MentionSet dedupe(MentionSet ms);

// True for initials tokens such as "AB", "AJ-M", "V-MK".
bool is_initials_token(std::string_view token);

// Uppercased with hyphens, periods and whitespace removed.
std::string loose_author_key(std::string_view name);

bool is_all_authors(std::string_view subject);

}  // namespace contribroles
