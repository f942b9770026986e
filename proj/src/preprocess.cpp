#include "contribroles/preprocess.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <unordered_set>

#include "contribroles/errors.hpp"

namespace contribroles {
namespace {

// Porter output -> stem used by the keyword table. Porter keeps the final
// "i" of "analysis" and "laboratory", and the American "-yze" spelling.
constexpr std::array<std::pair<std::string_view, std::string_view>, 3> kStemOverrides{{
    {"analysi", "analys"},
    {"analyz", "analys"},
    {"laboratori", "laborator"},
}};

bool is_letter(unsigned char c) { return std::isalpha(c) || c >= 0x80; }

}  // namespace

std::string stem(std::string_view word) {
  std::string s = porter_stem(word);
  for (const auto& [from, to] : kStemOverrides) {
    if (s == from) return std::string(to);
  }
  return s;
}

const std::vector<std::string_view>& stopword_list() {
  // English function words. Content words that appear in the keyword table
  // ("made", "first", "part", "help", ...) are deliberately absent.
  static const std::vector<std::string_view> kList{
      "about", "above", "after", "again", "against", "al", "all", "also", "am",
      "among", "an", "and", "any", "are", "as", "at", "be", "because", "been",
      "before", "being", "below", "between", "both", "but", "by", "can", "could",
      "did", "do", "does", "doing", "down", "during", "each", "et", "etc", "few",
      "for", "from", "further", "had", "has", "have", "having", "he", "her",
      "here", "hers", "herself", "him", "himself", "his", "how", "however", "if",
      "in", "into", "is", "it", "its", "itself", "me", "more", "most", "my",
      "myself", "no", "nor", "not", "of", "off", "on", "once", "only", "or",
      "other", "our", "ours", "out", "over", "own", "same", "she", "should", "so",
      "some", "such", "than", "that", "the", "their", "theirs", "them",
      "themselves", "then", "there", "these", "they", "this", "those", "through",
      "to", "too", "under", "until", "up", "upon", "very", "via", "was", "we",
      "were", "what", "when", "where", "which", "while", "who", "whom", "whose",
      "why", "will", "with", "within", "without", "would", "you", "your"};
  return kList;
}

bool is_stopword(std::string_view token) {
  static const std::unordered_set<std::string_view> kSet(stopword_list().begin(),
                                                          stopword_list().end());
  return kSet.contains(token);
}

std::vector<std::string> raw_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.size() >= 2 && !is_stopword(cur)) out.push_back(cur);
    cur.clear();
  };
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (is_letter(c)) {
      cur.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : ch);
    } else {
      flush();
    }
  }
  flush();
  return out;
}

std::vector<std::string> tokenize_normalize(std::string_view text) {
  std::vector<std::string> out = raw_tokens(text);
  for (auto& t : out) t = stem(t);
  return out;
}

Lexicon::Lexicon(std::vector<std::string> action_keywords,
                 std::vector<std::string> object_keywords,
                 std::map<std::string, TermCounts> term_counts)
    : actions_(std::move(action_keywords)),
      objects_(std::move(object_keywords)),
      counts_(std::move(term_counts)) {
  std::size_t i = 0;
  for (const auto* list : {&actions_, &objects_}) {
    for (const auto& term : *list) {
      if (!index_.emplace(term, i++).second) {
        throw InputError("lexicon term listed twice: " + term);
      }
    }
  }
}

std::vector<std::string> Lexicon::keywords() const {
  std::vector<std::string> out = actions_;
  out.insert(out.end(), objects_.begin(), objects_.end());
  return out;
}

std::optional<KeywordKind> Lexicon::kind_of(std::string_view term) const {
  auto idx = index_of(term);
  if (!idx) return std::nullopt;
  return *idx < actions_.size() ? KeywordKind::Action : KeywordKind::Object;
}

std::optional<std::size_t> Lexicon::index_of(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Lexicon::match_token(std::string_view raw_token) const {
  if (auto idx = index_of(stem(raw_token))) return idx;
  return index_of(raw_token);
}

std::vector<std::size_t> Lexicon::match_text(std::string_view text) const {
  std::set<std::size_t> hits;
  for (const auto& tok : raw_tokens(text)) {
    if (auto idx = match_token(tok)) hits.insert(*idx);
  }
  return {hits.begin(), hits.end()};
}

Lexicon build_lexicon(const MentionSet& ms, int min_count) {
  std::map<std::string, TermCounts> counts;
  for (const RoleMention& m : ms) {
    for (const auto& t : tokenize_normalize(m.action)) ++counts[t].in_actions;
    for (const auto& t : tokenize_normalize(m.object)) ++counts[t].in_objects;
  }
  std::vector<std::pair<std::string, TermCounts>> kept;
  for (const auto& [term, c] : counts) {
    if (c.total() >= min_count) kept.emplace_back(term, c);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second.total() > b.second.total();
  });
  std::vector<std::string> actions;
  std::vector<std::string> objects;
  for (const auto& [term, c] : kept) {
    (c.in_actions > c.in_objects ? actions : objects).push_back(term);
  }
  return Lexicon(std::move(actions), std::move(objects), std::move(counts));
}

CanonicalTuple rewrite(const RoleMention& m, const Lexicon& lex) {
  CanonicalTuple t;
  t.subject = m.subject;
  t.origin = m;
  const auto& actions = lex.action_keywords();
  const auto& objects = lex.object_keywords();
  for (std::size_t idx : lex.match_text(m.action + " " + m.object)) {
    if (idx < actions.size()) t.action.push_back(actions[idx]);
    else t.object.push_back(objects[idx - actions.size()]);
  }
  if (t.action.empty()) t.action.emplace_back(kPerformKeyword);
  return t;
}

}  // namespace contribroles
