// Porter, "An algorithm for suffix stripping" (1980), rule for rule.
#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "contribroles/preprocess.hpp"

namespace contribroles {
namespace {

class PorterWord {
 public:
  explicit PorterWord(std::string_view w) : b_(w) {}

  std::string take() { return std::move(b_); }

  bool consonant(std::size_t i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 || !consonant(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b_[0, len).
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && consonant(i)) ++i;
    while (i < len) {
      while (i < len && !consonant(i)) ++i;
      if (i >= len) break;
      while (i < len && consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) {
      if (!consonant(i)) return true;
    }
    return false;
  }

  bool double_consonant(std::size_t len) const {
    return len >= 2 && b_[len - 1] == b_[len - 2] && consonant(len - 1);
  }

  // consonant-vowel-consonant ending, last consonant not w, x or y.
  bool cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!consonant(len - 1) || consonant(len - 2) || !consonant(len - 3)) return false;
    char c = b_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends(std::string_view suffix) const {
    return b_.size() >= suffix.size() &&
           std::string_view(b_).substr(b_.size() - suffix.size()) == suffix;
  }

  std::size_t stem_len(std::string_view suffix) const { return b_.size() - suffix.size(); }

  void replace_suffix(std::string_view suffix, std::string_view repl) {
    b_.resize(b_.size() - suffix.size());
    b_ += repl;
  }

  std::size_t size() const { return b_.size(); }
  char back() const { return b_.back(); }
  char at(std::size_t i) const { return b_[i]; }
  void pop() { b_.pop_back(); }
  void push(char c) { b_.push_back(c); }

 private:
  std::string b_;
};

struct Rule {
  std::string_view suffix;
  std::string_view repl;
};

// Applies the first rule whose suffix matches, if the stem measure exceeds
// min_m. Later rules are not tried once a suffix matches.
void apply_first(PorterWord& w, std::span<const Rule> rules, int min_m) {
  for (const Rule& r : rules) {
    if (w.ends(r.suffix)) {
      if (w.measure(w.stem_len(r.suffix)) > min_m) w.replace_suffix(r.suffix, r.repl);
      return;
    }
  }
}

void step1a(PorterWord& w) {
  if (w.ends("sses")) w.replace_suffix("sses", "ss");
  else if (w.ends("ies")) w.replace_suffix("ies", "i");
  else if (w.ends("ss")) return;
  else if (w.ends("s")) w.replace_suffix("s", "");
}

void step1b(PorterWord& w) {
  if (w.ends("eed")) {
    if (w.measure(w.stem_len("eed")) > 0) w.replace_suffix("eed", "ee");
    return;
  }
  std::string_view removed;
  if (w.ends("ed") && w.has_vowel(w.stem_len("ed"))) removed = "ed";
  else if (w.ends("ing") && w.has_vowel(w.stem_len("ing"))) removed = "ing";
  if (removed.empty()) return;
  w.replace_suffix(removed, "");

  if (w.ends("at")) w.replace_suffix("at", "ate");
  else if (w.ends("bl")) w.replace_suffix("bl", "ble");
  else if (w.ends("iz")) w.replace_suffix("iz", "ize");
  else if (w.double_consonant(w.size())) {
    char c = w.back();
    if (c != 'l' && c != 's' && c != 'z') w.pop();
  } else if (w.measure(w.size()) == 1 && w.cvc(w.size())) {
    w.push('e');
  }
}

void step1c(PorterWord& w) {
  if (w.ends("y") && w.has_vowel(w.stem_len("y"))) w.replace_suffix("y", "i");
}

constexpr std::array<Rule, 20> kStep2{{
    {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},  {"anci", "ance"},
    {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},    {"entli", "ent"},
    {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
    {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
    {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},  {"biliti", "ble"},
}};

constexpr std::array<Rule, 7> kStep3{{
    {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
    {"ical", "ic"},  {"ful", ""},   {"ness", ""},
}};

void step4(PorterWord& w) {
  // Longer suffixes precede the shorter ones they end with.
  static constexpr std::array<std::string_view, 19> kSuffixes{
      "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
      "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize"};
  for (std::string_view s : kSuffixes) {
    if (!w.ends(s)) continue;
    std::size_t len = w.stem_len(s);
    if (w.measure(len) <= 1) return;
    if (s == "ion" && (len == 0 || (w.at(len - 1) != 's' && w.at(len - 1) != 't'))) return;
    w.replace_suffix(s, "");
    return;
  }
}

void step5(PorterWord& w) {
  if (w.ends("e")) {
    std::size_t len = w.stem_len("e");
    int m = w.measure(len);
    if (m > 1 || (m == 1 && !w.cvc(len))) w.pop();
  }
  if (w.ends("ll") && w.measure(w.size()) > 1) w.pop();
}

}  // namespace

std::string porter_stem(std::string_view word) {
  if (word.size() <= 2) return std::string(word);
  PorterWord w(word);
  step1a(w);
  step1b(w);
  step1c(w);
  apply_first(w, kStep2, 0);
  apply_first(w, kStep3, 0);
  step4(w);
  step5(w);
  return w.take();
}

}  // namespace contribroles
