#include <algorithm>

#include "contribroles/preprocess.hpp"

namespace contribroles {

const Lexicon& full_lexicon() {
  static const Lexicon kLexicon(
      {"read",    "particip", "draft",   "contribut", "conceiv", "perform",
       "write",   "revis",    "carri",   "critic",    "approv",  "made",
       "prepar",  "conduct",  "provid",  "review",    "supervis", "equal",
       "develop", "edit",     "plan",    "initi",     "acquir",  "assist",
       "coordin", "help",     "took",    "undertook", "gave",    "comment",
       "take",    "recruit"},
      {"manuscript", "studi",    "data",      "final",    "design",   "analys",
       "experi",     "collect",  "interpret", "statist",  "respons",  "involv",
       "paper",      "concept",  "result",    "version",  "substanti", "acquisit",
       "project",    "patient",  "research",  "work",     "content",  "intellectu",
       "import",     "articl",   "discuss",   "first",    "protocol", "molecular",
       "investig",   "sequenc",  "literatur", "idea",     "part",     "princip",
       "clinic",     "trial",    "sampl",     "genet",    "laborator", "advic",
       "tool"});
  return kLexicon;
}

const std::vector<std::string>& curated_dropped_stems() {
  // Generic verbs and modifiers whose clusters were removed during curation.
  static const std::vector<std::string> kDropped{
      "made", "equal", "help", "assist", "took", "undertook",
      "gave", "take", "substanti", "first", "part"};
  return kDropped;
}

const Lexicon& curated_lexicon() {
  static const Lexicon kLexicon = [] {
    const auto& dropped = curated_dropped_stems();
    auto keep = [&](const std::vector<std::string>& in) {
      std::vector<std::string> out;
      for (const auto& t : in) {
        if (std::find(dropped.begin(), dropped.end(), t) == dropped.end()) out.push_back(t);
      }
      return out;
    };
    return Lexicon(keep(full_lexicon().action_keywords()),
                   keep(full_lexicon().object_keywords()));
  }();
  return kLexicon;
}

}  // namespace contribroles
