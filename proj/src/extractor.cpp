#include "contribroles/extractor.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "contribroles/errors.hpp"

namespace contribroles {

std::vector<std::string> effective_author_hints(const ContribSection& section,
                                                const MentionSet& raw) {
  if (!section.author_hints.empty()) return section.author_hints;
  std::vector<std::string> hints;
  std::set<std::string> seen;
  for (const auto& m : raw) {
    for (const auto& single : split_subjects(m, {})) {
      if (is_all_authors(single.subject)) continue;
      if (seen.insert(single.subject).second) hints.push_back(single.subject);
    }
  }
  return hints;
}

MentionSet extract_mentions(const ContribSection& section, std::vector<std::string>* warnings) {
  if (section.text.find_first_not_of(" \t\r\n") == std::string::npos) return {};
  Extraction ex = detect_format(section.text) == SectionFormat::StructuredList
                      ? extract_structured(section.text)
                      : extract_svo(section.text, section.author_hints);
  if (warnings) warnings->insert(warnings->end(), ex.warnings.begin(), ex.warnings.end());
  auto hints = effective_author_hints(section, ex.mentions);
  MentionSet split;
  for (const auto& m : ex.mentions) {
    for (auto& s : split_subjects(m, hints)) {
      s.doc_id = section.doc_id;
      split.push_back(std::move(s));
    }
  }
  return dedupe(std::move(split));
}

std::vector<RoleMention> split_object_conjuncts(const RoleMention& m, const Lexicon& lex) {
  std::vector<std::string> parts;
  std::string cur;
  auto flush = [&] {
    auto b = cur.find_first_not_of(' ');
    if (b != std::string::npos) parts.push_back(cur.substr(b, cur.find_last_not_of(' ') - b + 1));
    cur.clear();
  };
  std::size_t i = 0;
  while (i < m.object.size()) {
    if (m.object[i] == ',') {
      flush();
      ++i;
      continue;
    }
    // " and " as a whole word
    if (m.object.compare(i, 5, " and ") == 0) {
      flush();
      i += 4;
      continue;
    }
    cur.push_back(m.object[i++]);
  }
  flush();
  if (parts.size() < 2) return {m};
  for (const auto& p : parts) {
    auto hits = lex.match_text(p);
    bool names_object = std::any_of(hits.begin(), hits.end(), [&](std::size_t k) {
      return k >= lex.action_keywords().size();
    });
    if (!names_object) return {m};
  }
  std::vector<RoleMention> out;
  for (auto& p : parts) {
    RoleMention c = m;
    c.object = std::move(p);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<AuthorRolePair> extract_roles(const ContribSection& section, const NBModel& model,
                                          const Lexicon& lex, const ExtractOptions& options) {
  if (model.feature_names() != lex.keywords()) {
    throw InputError("model and lexicon disagree on the keyword list");
  }
  std::vector<AuthorRolePair> out;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (const auto& whole : extract_mentions(section)) {
    for (const auto& m : split_object_conjuncts(whole, lex)) {
      Classification c = model.classify(featurize(m, lex), options.unknown_margin);
      auto key = std::make_pair(m.subject, c.role);
      auto it = index.find(key);
      if (it == index.end()) {
        index.emplace(key, out.size());
        out.push_back({section.doc_id, m.subject, c.role, c.confidence, m});
      } else if (c.confidence > out[it->second].confidence) {
        out[it->second].confidence = c.confidence;
        out[it->second].source = m;
      }
    }
  }
  return out;
}

}  // namespace contribroles
