#include "contribroles/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "contribroles/extractor.hpp"

namespace contribroles::synth {

const std::vector<RoleTemplates>& role_templates() {
  static const std::vector<RoleTemplates> kTemplates{
      {"experimenting",
       1743,
       {{"performed", "the experiments"},
        {"carried out", "the experiments"},
        {"carried out", "the laboratory work"},
        {"performed", "the molecular genetic studies"},
        {"conducted", "the experiments"},
        {"performed", "the sequencing"}},
       {"experiments", "laboratory work", "sequencing"}},
      {"analysis",
       1343,
       {{"performed", "the statistical analysis"},
        {"analyzed", "the data"},
        {"carried out", "the data analysis"},
        {"participated in", "the statistical analysis"}},
       {"statistical analysis", "data analysis", "analysis of data"}},
      {"study design",
       1132,
       {{"designed", "the study"},
        {"participated in", "the design of the study"},
        {"developed", "the study protocol"},
        {"designed", "the research protocol"}},
       {"study design", "design of the study", "protocol development"}},
      {"interpretation",
       879,
       {{"interpreted", "the results"},
        {"participated in", "the interpretation of the results"},
        {"contributed to", "the interpretation of data"}},
       {"interpretation of data", "interpretation of results"}},
      {"conceptualization",
       865,
       {{"conceived", "the study"},
        {"conceived", "the idea"},
        {"conceived", "the project"},
        {"developed", "the concept of the study"}},
       {"conception of the study", "study concept", "original idea"}},
      {"paper reading",
       823,
       {{"read and approved", "the final manuscript"},
        {"read and approved", "the final version of the manuscript"},
        {"have read and approved", "the final manuscript"}},
       {"read and approved the final manuscript"}},
      {"paper writing",
       724,
       {{"contributed to writing", "the manuscript"},
        {"participated in writing", "the paper"},
        {"helped to write", "the manuscript"}},
       {"writing the paper", "manuscript writing"}},
      {"paper review",
       501,
       {{"critically reviewed", "the manuscript"},
        {"reviewed", "the paper"},
        {"reviewed and commented on", "the manuscript"}},
       {"critical review of the manuscript", "manuscript review"}},
      {"paper drafting",
       351,
       {{"drafted", "the manuscript"},
        {"drafted", "the paper"},
        {"prepared", "the draft of the manuscript"}},
       {"drafting the manuscript", "manuscript drafting"}},
      {"coordination",
       319,
       {{"coordinated", "the study"},
        {"coordinated", "the project"},
        {"participated in", "the coordination of the study"}},
       {"study coordination", "project coordination"}},
      {"data collection",
       76,
       {{"collected", "the data"},
        {"participated in", "the data collection"},
        {"collected", "the patient samples"},
        {"participated in", "the acquisition of data"}},
       {"data collection", "sample collection", "acquisition of data"}},
      {"paper revision",
       41,
       {{"revised", "the manuscript critically for important intellectual content"},
        {"revised", "the manuscript"},
        {"critically revised", "the manuscript"}},
       {"manuscript revision", "critical revision of the manuscript"}},
      {"literature review",
       41,
       {{"performed", "the literature review"},
        {"reviewed", "the literature"},
        {"carried out", "the literature search"}},
       {"literature review", "literature search"}},
  };
  return kTemplates;
}

namespace {

constexpr const char* kAdverbs[] = {"jointly", "substantially", "actively", "equally",
                                    "significantly"};
constexpr const char* kTrailing[] = {
    " in the laboratory of Prof. Smith", " at the Department of Pathology",
    " in close collaboration with the clinical team", " during the second phase",
    " under the guidance of the steering committee"};
constexpr const char* kParentheticals[] = {"corresponding author", "senior author",
                                           "who joined later"};
constexpr const char* kUnrelated[] = {
    "This work was supported by the National Science Foundation.",
    "The authors declare that they have no competing interests.",
    "We thank the technical staff for their help.",
    "Funding was provided by the institutional budget."};
constexpr const char* kSupervised[] = {"the work", "the project"};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  bool chance(double p) { return static_cast<double>(gen_() >> 11) * 0x1.0p-53 < p; }

  template <class T, std::size_t N>
  const T& pick(const T (&arr)[N]) {
    return arr[below(N)];
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 gen_;
};

std::vector<std::string> make_authors(Rng& rng, std::size_t n) {
  static const std::set<std::string> kReserved{"AND", "OR", "ALL", "AN"};
  std::set<std::string> used;
  std::vector<std::string> out;
  while (out.size() < n) {
    std::size_t len = rng.chance(0.6) ? 2 : 3;
    std::string a;
    for (std::size_t i = 0; i < len; ++i) a.push_back(static_cast<char>('A' + rng.below(26)));
    if (rng.chance(0.1)) a.insert(rng.chance(0.5) ? 1 : len - 1, "-");
    if (kReserved.contains(a) || !used.insert(a).second) continue;
    out.push_back(std::move(a));
  }
  return out;
}

std::string join_subjects(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += i + 1 == names.size() ? " and " : ", ";
    out += names[i];
  }
  return out;
}

std::size_t pick_role(Rng& rng, const std::vector<std::size_t>& excluded) {
  const auto& roles = role_templates();
  long total = 0;
  for (std::size_t r = 0; r < roles.size(); ++r) {
    if (std::find(excluded.begin(), excluded.end(), r) == excluded.end()) total += roles[r].weight;
  }
  long x = static_cast<long>(rng.below(static_cast<std::size_t>(total)));
  for (std::size_t r = 0; r < roles.size(); ++r) {
    if (std::find(excluded.begin(), excluded.end(), r) != excluded.end()) continue;
    x -= roles[r].weight;
    if (x < 0) return r;
  }
  return roles.size() - 1;
}

Section generate_one(Rng& rng, const Options& opt, std::size_t index) {
  const auto& roles = role_templates();
  const std::size_t reading =
      static_cast<std::size_t>(std::find_if(roles.begin(), roles.end(),
                                            [](const auto& r) { return r.role == "paper reading"; }) -
                               roles.begin());
  Section out;
  char id[64];
  std::snprintf(id, sizeof id, "%s-%04zu", opt.id_prefix.c_str(), index);
  out.section.doc_id = id;

  std::size_t n = opt.min_authors + rng.below(opt.max_authors - opt.min_authors + 1);
  auto authors = make_authors(rng, n);
  out.section.author_hints = authors;
  bool structured = rng.chance(opt.structured_fraction);
  bool all_read = !structured && rng.chance(opt.all_authors_reading);

  // role index -> authors, in author order
  std::map<std::size_t, std::vector<std::string>> by_role;
  std::map<std::string, std::vector<std::size_t>> by_author;
  for (const auto& a : authors) {
    std::vector<std::size_t> mine;
    if (all_read) mine.push_back(reading);
    std::size_t k = 1 + rng.below(opt.max_roles_per_author);
    for (std::size_t i = 0; i < k; ++i) mine.push_back(pick_role(rng, mine));
    if (all_read) mine.erase(mine.begin());
    for (std::size_t r : mine) {
      by_role[r].push_back(a);
      out.gold.emplace(a, roles[r].role);
    }
    by_author[a] = mine;
  }
  if (all_read) {
    for (const auto& a : authors) out.gold.emplace(a, roles[reading].role);
  }

  std::string text;
  const Perturbation& p = opt.perturbation;
  if (structured) {
    std::size_t seg = 0;
    for (const auto& a : authors) {
      if (!text.empty()) text += "; ";
      text += a + ": ";
      bool first = true;
      for (std::size_t r : by_author[a]) {
        const std::string& phrase = rng.pick(roles[r].phrases);
        if (!first) text += ", ";
        first = false;
        text += phrase;
        out.clauses.push_back({seg, phrase, roles[r].role});
      }
      ++seg;
    }
    text += ".";
    out.section.text = std::move(text);
    return out;
  }

  std::vector<std::size_t> order;
  for (const auto& [r, names] : by_role) order.push_back(r);
  rng.shuffle(order);
  std::vector<std::string> sentences;
  auto add_sentence = [&](const std::string& subject, std::size_t r) {
    const auto& [verb, object] = rng.pick(roles[r].prose);
    std::string s = subject;
    if (rng.chance(p.parenthetical)) s += std::string(" (") + rng.pick(kParentheticals) + ")";
    s += " ";
    if (rng.chance(p.adverb)) s += std::string(rng.pick(kAdverbs)) + " ";
    s += verb + " " + object;
    if (rng.chance(p.trailing)) s += rng.pick(kTrailing);
    s += ".";
    out.clauses.push_back({sentences.size(), object, roles[r].role});
    sentences.push_back(std::move(s));
  };
  for (std::size_t r : order) {
    const auto& names = by_role[r];
    bool everyone = names.size() == authors.size() && names.size() >= 2 && rng.chance(0.5);
    add_sentence(everyone ? "All authors" : join_subjects(names), r);
  }
  if (rng.chance(p.supervision)) {
    const std::string& a = rng.pick(authors);
    sentences.push_back(a + " supervised " + rng.pick(kSupervised) + ".");
    out.gold.emplace(a, "supervision");
  }
  if (rng.chance(p.unrelated)) {
    std::size_t at = rng.below(sentences.size() + 1);
    sentences.insert(sentences.begin() + static_cast<std::ptrdiff_t>(at), rng.pick(kUnrelated));
    for (auto& c : out.clauses) {
      if (c.sentence_index >= at) ++c.sentence_index;
    }
  }
  if (all_read) {
    out.clauses.push_back({sentences.size(), "", roles[reading].role});
    const auto& [verb, object] = rng.pick(roles[reading].prose);
    out.clauses.back().object = object;
    sentences.push_back("All authors " + verb + " " + object + ".");
  }
  for (const auto& s : sentences) {
    if (!text.empty()) text += " ";
    text += s;
  }
  out.section.text = std::move(text);
  return out;
}

}  // namespace

std::vector<Section> generate(const Options& options) {
  Rng rng(options.seed);
  std::vector<Section> out;
  out.reserve(options.sections);
  for (std::size_t i = 0; i < options.sections; ++i) out.push_back(generate_one(rng, options, i));
  return out;
}

std::vector<LabeledMention> labeled_mentions(const std::vector<Section>& sections,
                                             const Lexicon& lex) {
  std::vector<LabeledMention> out;
  for (const auto& s : sections) {
    for (const auto& m : extract_mentions(s.section)) {
      const Clause* exact = nullptr;
      std::set<std::string> sentence_roles;
      for (const auto& c : s.clauses) {
        if (c.sentence_index != m.sentence_index) continue;
        sentence_roles.insert(c.role);
        if (c.object == m.object) exact = &c;
      }
      std::string label;
      if (exact) label = exact->role;
      else if (sentence_roles.size() == 1) label = *sentence_roles.begin();
      else continue;
      out.push_back({m, rewrite(m, lex), label});
    }
  }
  return out;
}

PairSets gold_pairs(const std::vector<Section>& sections) {
  PairSets out;
  for (const auto& s : sections) out[s.section.doc_id] = s.gold;
  return out;
}

}  // namespace contribroles::synth
