#pragma once

// JSON and JSON Lines formats for every pipeline artifact. Objects are
// written with sorted keys and no whitespace so output is byte-stable.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "contribroles/classifier.hpp"
#include "contribroles/coclustering.hpp"
#include "contribroles/corpus_ingest.hpp"
#include "contribroles/curation.hpp"
#include "contribroles/errors.hpp"
#include "contribroles/eval.hpp"
#include "contribroles/extractor.hpp"
#include "contribroles/mention_extraction.hpp"
#include "contribroles/preprocess.hpp"

namespace contribroles {

using nlohmann::json;

void to_json(json& j, const Section& s);
void from_json(const json& j, Section& s);
void to_json(json& j, const Author& a);
void from_json(const json& j, Author& a);
void to_json(json& j, const Document& d);
void from_json(const json& j, Document& d);
void to_json(json& j, const ContribSection& s);
void from_json(const json& j, ContribSection& s);
void to_json(json& j, const RoleMention& m);
void from_json(const json& j, RoleMention& m);
void to_json(json& j, const CanonicalTuple& t);
void from_json(const json& j, CanonicalTuple& t);
void to_json(json& j, const MergeRecord& r);
void to_json(json& j, const Edit& e);
void from_json(const json& j, Edit& e);
void to_json(json& j, const Role& r);
void from_json(const json& j, Role& r);
void to_json(json& j, const LabeledMention& m);
void from_json(const json& j, LabeledMention& m);
void to_json(json& j, const AuthorRolePair& p);
void to_json(json& j, const EvalReport& r);

json lexicon_to_json(const Lexicon& lex);
Lexicon lexicon_from_json(const json& j);

json model_to_json(const NBModel& m);
NBModel model_from_json(const json& j);

// {"mentions": [...], "clusters": [...], "edges": [...]}; cluster members
// and edge members index "mentions".
json clusters_to_json(const ClusterState& cs, const RoleGraph& g);
// Rebuilds the state from a dump; throws InputError when it is not a
// partition.
ClusterState clusters_from_json(const json& j);

// Parses text, turning parse failures into ParseError with a byte offset.
json parse_json(std::string_view text);
json load_json(const std::filesystem::path& path);

// One value per non-blank line. Errors name the line.
std::vector<json> parse_jsonl(std::string_view text);
std::vector<json> load_jsonl(const std::filesystem::path& path);

// Compact serialization with sorted keys, newline-terminated.
std::string dump_line(const json& j);

template <class T>
std::string to_jsonl(std::span<const T> items) {
  std::string out;
  for (const T& item : items) out += dump_line(json(item));
  return out;
}

template <class T>
std::vector<T> from_jsonl(const std::vector<json>& lines) {
  std::vector<T> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      out.push_back(lines[i].get<T>());
    } catch (const json::exception& e) {
      throw InputError("record " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

// {doc_id, author, role} lines, extracted or gold, grouped per document.
PairSets pair_sets_from_jsonl(const std::vector<json>& lines);

void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace contribroles
