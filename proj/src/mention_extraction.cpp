#include "contribroles/mention_extraction.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <tuple>

#include "contribroles/preprocess.hpp"

namespace contribroles {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && lower_ascii(a) == lower_ascii(b);
}

// Split on any of the delimiter characters, keeping empty pieces.
std::vector<std::string_view> split_any(std::string_view s, std::string_view delims) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || delims.find(s[i]) != std::string_view::npos) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

// Splits an author list on ',', '&', ';' and the word "and".
std::vector<std::string_view> split_author_list(std::string_view s) {
  std::vector<std::string_view> out;
  for (std::string_view piece : split_any(s, ",&;")) {
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < piece.size()) {
      // " and " as a whole word
      if ((i == 0 || is_space(piece[i - 1])) && i + 3 <= piece.size() &&
          iequals(piece.substr(i, 3), "and") &&
          (i + 3 == piece.size() || is_space(piece[i + 3]))) {
        out.push_back(piece.substr(start, i - start));
        i += 3;
        start = i;
        continue;
      }
      ++i;
    }
    out.push_back(piece.substr(start));
  }
  std::vector<std::string_view> trimmed;
  for (auto p : out) {
    p = trim(p);
    if (!p.empty()) trimmed.push_back(p);
  }
  return trimmed;
}

// ---------------------------------------------------------------------------
// Sentence tokens

struct Token {
  std::string_view text;
  std::size_t begin = 0;
  bool word = false;
};

bool word_char(unsigned char c) {
  return std::isalnum(c) || c == '-' || c == '\'' || c == '.' || c >= 0x80;
}

std::vector<Token> tokenize_sentence(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (is_space(s[i])) {
      ++i;
    } else if (word_char(c) && c != '.' && c != '-' && c != '\'') {
      std::size_t j = i;
      while (j < s.size() && word_char(static_cast<unsigned char>(s[j]))) ++j;
      // A trailing period belongs to the word only for initials ("J.").
      while (j > i + 1 && (s[j - 1] == '-' || s[j - 1] == '\'')) --j;
      out.push_back({s.substr(i, j - i), i, true});
      i = j;
    } else {
      out.push_back({s.substr(i, 1), i, false});
      ++i;
    }
  }
  return out;
}

std::string_view span_text(std::string_view s, const std::vector<Token>& toks,
                           std::size_t first, std::size_t last) {
  std::size_t b = toks[first].begin;
  std::size_t e = toks[last].begin + toks[last].text.size();
  return s.substr(b, e - b);
}

// ---------------------------------------------------------------------------
// Word classes

bool in_list(std::string_view w, std::span<const std::string_view> list) {
  return std::find(list.begin(), list.end(), w) != list.end();
}

constexpr std::array<std::string_view, 20> kDeterminers{
    "the", "a", "an", "this", "that", "these", "those", "its", "their", "his",
    "her", "our", "all", "each", "every", "some", "several", "many", "any", "most"};

constexpr std::array<std::string_view, 16> kAuxiliaries{
    "was", "were", "is", "are", "has", "have", "had", "been", "be",
    "also", "both", "further", "then", "together", "actively", "jointly"};

constexpr std::array<std::string_view, 14> kParticles{
    "in", "out", "to", "for", "on", "with", "of", "as", "at", "up", "from",
    "into", "toward", "towards"};

constexpr std::array<std::string_view, 22> kIrregularPasts{
    "read",  "wrote", "made",  "took", "undertook", "gave",  "did",  "drew",
    "led",   "ran",   "oversaw", "saw", "put",      "set",   "built", "found",
    "got",   "brought", "held", "sought", "undertake", "overseen"};

bool is_adverb(std::string_view w) { return w.size() > 4 && w.ends_with("ly"); }

// Past-tense or irregular verb forms: strong evidence of a new predicate.
bool is_past_verb(std::string_view w) {
  if (in_list(w, kIrregularPasts)) return true;
  return w.size() >= 5 && w.ends_with("ed") && !w.ends_with("eed");
}

bool is_action_stem(std::string_view w) {
  return full_lexicon().kind_of(stem(w)) == KeywordKind::Action;
}

bool is_object_stem(std::string_view w) {
  auto kind = full_lexicon().kind_of(stem(w));
  if (!kind) kind = full_lexicon().kind_of(w);
  return kind == KeywordKind::Object;
}

bool is_verbish(std::string_view w) { return is_past_verb(w) || is_action_stem(w); }

// ---------------------------------------------------------------------------
// Subjects

class SubjectMatcher {
 public:
  explicit SubjectMatcher(std::span<const std::string> hints) {
    for (const auto& h : hints) {
      std::size_t words = 0;
      for (auto piece : split_any(h, " \t")) {
        if (!piece.empty()) ++words;
      }
      if (words == 0) continue;
      hints_.emplace_back(loose_author_key(h), words);
      max_words_ = std::max(max_words_, words);
    }
  }

  // Number of tokens forming one author unit starting at i, or 0.
  std::size_t unit_at(const std::vector<Token>& toks, std::size_t i) const {
    if (i >= toks.size() || !toks[i].word) return 0;
    if (i + 1 < toks.size() && iequals(toks[i].text, "all") &&
        iequals(toks[i + 1].text, "authors")) {
      return 2;
    }
    // Longest hint match over consecutive word tokens.
    for (std::size_t n = std::min(max_words_, toks.size() - i); n >= 1; --n) {
      std::string key;
      bool all_words = true;
      for (std::size_t k = 0; k < n; ++k) {
        if (!toks[i + k].word) {
          all_words = false;
          break;
        }
        key += loose_author_key(toks[i + k].text);
      }
      if (!all_words) continue;
      for (const auto& [hint_key, words] : hints_) {
        if (words == n && hint_key == key && !key.empty()) return n;
      }
    }
    return is_initials_token(toks[i].text) ? 1 : 0;
  }

  bool is_connector(const Token& t) const {
    return t.text == "," || t.text == "&" || iequals(t.text, "and");
  }

  // End (exclusive) of the subject span starting at i, or i if none.
  std::size_t span_end(const std::vector<Token>& toks, std::size_t i) const {
    std::size_t n = unit_at(toks, i);
    if (n == 0) return i;
    std::size_t end = i + n;
    while (end < toks.size()) {
      std::size_t j = end;
      while (j < toks.size() && is_connector(toks[j])) ++j;
      if (j == end) break;
      std::size_t next = unit_at(toks, j);
      if (next == 0) break;
      end = j + next;
    }
    return end;
  }

 private:
  std::vector<std::pair<std::string, std::size_t>> hints_;
  std::size_t max_words_ = 0;
};

// ---------------------------------------------------------------------------
// Clauses

struct Clause {
  std::string subject;
  std::vector<std::string> verbs;
  std::string object;
};

class SentenceParser {
 public:
  SentenceParser(std::string_view sentence, const SubjectMatcher& subjects)
      : s_(sentence), subjects_(subjects), toks_(tokenize_sentence(sentence)) {}

  std::vector<Clause> parse() {
    std::vector<Clause> out;
    std::string subject;
    std::size_t i = 0;
    while (i < toks_.size()) {
      std::size_t chunk_end = i;
      while (chunk_end < toks_.size() && toks_[chunk_end].text != ";") ++chunk_end;
      std::size_t end = subjects_.span_end(toks_, i);
      if (end > i) {
        subject = std::string(span_text(s_, toks_, i, end - 1));
        i = end;
      }
      if (!subject.empty()) parse_predicates(subject, i, chunk_end, out);
      i = chunk_end + 1;
    }
    return out;
  }

 private:
  std::string lw(std::size_t i) const { return lower_ascii(toks_[i].text); }

  bool word_at(std::size_t i, std::size_t end) const { return i < end && toks_[i].word; }

  // "and"/","/", and" at i followed by a token satisfying pred; returns the
  // index of that token.
  template <typename Pred>
  std::optional<std::size_t> coordinated(std::size_t i, std::size_t end, Pred pred) const {
    std::size_t j = i;
    bool saw = false;
    while (j < end && (toks_[j].text == "," || lw(j) == "and" || lw(j) == "or")) {
      ++j;
      saw = true;
    }
    if (!saw) return std::nullopt;
    std::size_t k = j;
    while (word_at(k, end) && (is_adverb(lw(k)) || in_list(lw(k), kAuxiliaries))) ++k;
    if (word_at(k, end) && pred(k)) return j;
    return std::nullopt;
  }

  void parse_predicates(const std::string& first_subject, std::size_t i,
                        std::size_t end, std::vector<Clause>& out) {
    std::string subject = first_subject;
    while (i < end) {
      Clause c;
      c.subject = subject;
      std::size_t obj_begin = parse_verb_group(i, end, c.verbs);
      std::size_t j = obj_begin;
      std::size_t next_clause = end;
      std::string next_subject = subject;
      for (; j < end; ++j) {
        if (toks_[j].text != "," && lw(j) != "and") continue;
        if (auto k = coordinated(j, end, [&](std::size_t t) { return is_past_verb(lw(t)); })) {
          next_clause = *k;
          break;
        }
        std::size_t after = j;
        while (after < end && subjects_.is_connector(toks_[after])) ++after;
        std::size_t subj_end = subjects_.span_end(toks_, after);
        if (subj_end > after && word_at(subj_end, end) && is_verbish(lw(subj_end))) {
          next_subject = std::string(span_text(s_, toks_, after, subj_end - 1));
          next_clause = subj_end;
          break;
        }
      }
      std::size_t obj_end = std::min(j, end);
      while (obj_end > obj_begin &&
             (toks_[obj_end - 1].text == "," || lw(obj_end - 1) == "and")) {
        --obj_end;
      }
      if (obj_end > obj_begin) c.object = std::string(span_text(s_, toks_, obj_begin, obj_end - 1));
      if (!c.verbs.empty() || !c.object.empty()) out.push_back(std::move(c));
      subject = next_subject;
      i = next_clause;
    }
  }

  // Consumes the verb group from i; returns the index where the object starts.
  std::size_t parse_verb_group(std::size_t i, std::size_t end, std::vector<std::string>& verbs) {
    std::size_t group_begin = i;
    std::size_t last = i;  // one past the last token of the current verb
    auto close_group = [&](std::size_t upto) {
      if (upto > group_begin) verbs.emplace_back(span_text(s_, toks_, group_begin, upto - 1));
    };
    bool any_verb = false;
    while (i < end) {
      const Token& t = toks_[i];
      std::string w = lw(i);
      if (!t.word || w == "and" || w == "or") {
        if (any_verb) {
          auto k = coordinated(i, end, [&](std::size_t x) { return is_verbish(lw(x)); });
          if (k) {
            close_group(last);
            group_begin = *k;
            i = *k;
            last = i;
            continue;
          }
        }
        break;
      }
      if (in_list(w, kAuxiliaries) || is_adverb(w)) {
        ++i;
        last = i;
        continue;
      }
      if (in_list(w, kDeterminers)) break;
      if (is_past_verb(w)) {
        any_verb = true;
        ++i;
        last = i;
        continue;
      }
      if (in_list(w, kParticles)) {
        if (!any_verb) break;
        ++i;
        last = i;
        continue;
      }
      if (is_object_stem(w)) break;
      if (is_action_stem(w)) {
        any_verb = true;
        ++i;
        last = i;
        continue;
      }
      break;
    }
    close_group(last);
    return last;
  }

  std::string_view s_;
  const SubjectMatcher& subjects_;
  std::vector<Token> toks_;
};

constexpr std::array<std::string_view, 20> kAbbreviations{
    "e.g", "i.e", "et al", "al", "dr", "prof", "fig", "figs", "vs", "approx",
    "dept", "univ", "mr", "mrs", "ms", "st", "no", "ph.d", "resp", "cf"};

bool guarded_period(std::string_view text, std::size_t dot) {
  if (dot + 1 < text.size() && !is_space(text[dot + 1])) return true;
  std::size_t b = dot;
  while (b > 0 && !is_space(text[b - 1]) && text[b - 1] != '(' && text[b - 1] != ',') --b;
  std::string_view word = text.substr(b, dot - b);
  // Initials: "J." or the last part of "A.J.-M."
  std::string_view last_part = word.substr(word.find_last_of(".-") == std::string_view::npos
                                               ? 0
                                               : word.find_last_of(".-") + 1);
  if (last_part.size() == 1 && std::isupper(static_cast<unsigned char>(last_part[0]))) {
    return true;
  }
  std::string lw = lower_ascii(word);
  if (in_list(lw, kAbbreviations)) return true;
  // "et al."
  if (lw == "al" && b >= 3 && lower_ascii(text.substr(b - 3, 2)) == "et") return true;
  return false;
}

bool segment_matches(std::string_view segment) {
  auto colon = segment.find(':');
  if (colon == std::string_view::npos) return false;
  std::string_view head = trim(segment.substr(0, colon));
  if (head.empty()) return false;
  std::size_t words = 0;
  for (auto piece : split_any(head, " \t,&")) {
    if (piece.empty()) continue;
    ++words;
    std::string lw = lower_ascii(piece);
    if (lw == "and" || lw == "all" || lw == "authors") continue;
    unsigned char c = static_cast<unsigned char>(piece[0]);
    if (!(std::isupper(c) || c >= 0x80)) return false;
  }
  return words > 0 && words <= 12;
}

std::vector<std::string_view> nonblank_segments(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto seg : split_any(text, ";\n")) {
    if (!trim(seg).empty()) out.push_back(seg);
  }
  return out;
}

}  // namespace

bool is_initials_token(std::string_view token) {
  std::size_t letters = 0;
  std::size_t hyphens = 0;
  for (std::size_t i = 0; i < token.size(); ++i) {
    char c = token[i];
    if (c >= 'A' && c <= 'Z') {
      ++letters;
    } else if (c == '-' && i > 0 && i + 1 < token.size()) {
      if (token[i - 1] == '-') return false;
      ++hyphens;
    } else {
      return false;
    }
  }
  return letters >= 2 && letters <= 4 && hyphens <= 1;
}

std::string loose_author_key(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == '-' || c == '.' || is_space(c)) continue;
    out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

bool is_all_authors(std::string_view subject) {
  std::string lw = lower_ascii(trim(subject));
  return lw == "all authors";
}

SectionFormat detect_format(std::string_view text) {
  auto segments = nonblank_segments(text);
  std::size_t matching = 0;
  for (auto seg : segments) {
    if (segment_matches(seg)) ++matching;
  }
  if (matching >= 2 || (segments.size() == 1 && matching == 1)) {
    return SectionFormat::StructuredList;
  }
  return SectionFormat::Prose;
}

Extraction extract_structured(std::string_view text) {
  Extraction out;
  std::size_t index = 0;
  for (auto raw : nonblank_segments(text)) {
    std::string_view seg = trim(raw);
    std::size_t seg_index = index++;
    auto colon = seg.find(':');
    if (colon == std::string_view::npos) {
      out.warnings.push_back("segment " + std::to_string(seg_index) + ": no ':' in \"" +
                             std::string(seg) + "\"");
      ++out.skipped;
      continue;
    }
    auto subjects = split_author_list(seg.substr(0, colon));
    std::vector<std::string_view> roles;
    for (auto r : split_any(seg.substr(colon + 1), ",")) {
      r = trim(r);
      while (!r.empty() && (r.back() == '.' || r.back() == ',')) r = trim(r.substr(0, r.size() - 1));
      if (!r.empty()) roles.push_back(r);
    }
    if (subjects.empty() || roles.empty()) {
      out.warnings.push_back("segment " + std::to_string(seg_index) + ": empty " +
                             (subjects.empty() ? "subject" : "role list") + " in \"" +
                             std::string(seg) + "\"");
      ++out.skipped;
      continue;
    }
    // Space-separated initials ("AB CD") are separate authors.
    std::vector<std::string_view> authors;
    for (auto s : subjects) {
      auto parts = split_any(s, " ");
      bool all_initials = parts.size() > 1 && std::all_of(parts.begin(), parts.end(), [](auto p) {
                            return is_initials_token(p);
                          });
      if (all_initials) authors.insert(authors.end(), parts.begin(), parts.end());
      else authors.push_back(s);
    }
    for (auto a : authors) {
      for (auto r : roles) {
        out.mentions.push_back(
            {std::string(a), std::string(kPerformKeyword), std::string(r), seg_index, {}});
      }
    }
  }
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    std::string_view s = trim(text.substr(start, end - start));
    if (!s.empty()) out.emplace_back(s);
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '!' || c == '?' || (c == '.' && !guarded_period(text, i))) {
      emit(i);
      start = i + 1;
    } else if (c == '\n' && i + 1 < text.size() && text[i + 1] == '\n') {
      emit(i);
      start = i + 1;
    }
  }
  emit(text.size());
  return out;
}

Extraction extract_svo(std::string_view text, std::span<const std::string> author_hints) {
  Extraction out;
  SubjectMatcher matcher(author_hints);
  auto sentences = split_sentences(text);
  for (std::size_t si = 0; si < sentences.size(); ++si) {
    SentenceParser parser(sentences[si], matcher);
    auto clauses = parser.parse();
    std::size_t before = out.mentions.size();
    for (auto& c : clauses) {
      if (c.verbs.empty()) {
        out.mentions.push_back({c.subject, "", c.object, si, {}});
      }
      for (auto& v : c.verbs) out.mentions.push_back({c.subject, v, c.object, si, {}});
    }
    if (out.mentions.size() == before) ++out.skipped;
  }
  return out;
}

std::vector<RoleMention> split_subjects(const RoleMention& m,
                                        std::span<const std::string> author_hints) {
  std::vector<RoleMention> out;
  for (auto s : split_author_list(m.subject)) {
    if (is_all_authors(s) && !author_hints.empty()) {
      for (const auto& h : author_hints) {
        RoleMention copy = m;
        copy.subject = h;
        out.push_back(std::move(copy));
      }
    } else {
      RoleMention copy = m;
      copy.subject = std::string(s);
      out.push_back(std::move(copy));
    }
  }
  if (out.empty()) out.push_back(m);
  return out;
}

MentionSet dedupe(MentionSet ms) {
  MentionSet out;
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> seen;
  for (auto& m : ms) {
    auto key = std::make_tuple(m.subject, m.action, m.object);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(std::move(key), out.size());
      out.push_back(std::move(m));
    } else {
      auto& kept = out[it->second];
      kept.sentence_index = std::min(kept.sentence_index, m.sentence_index);
    }
  }
  return out;
}

}  // namespace contribroles
