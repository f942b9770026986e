#include "contribroles/json_io.hpp"

#include <algorithm>
#include <fstream>

#include "contribroles/errors.hpp"

namespace contribroles {

void to_json(json& j, const Section& s) { j = json{{"title", s.title}, {"body", s.body}}; }
void from_json(const json& j, Section& s) {
  j.at("title").get_to(s.title);
  j.at("body").get_to(s.body);
}

void to_json(json& j, const Author& a) { j = json{{"name", a.name}, {"abbrev", a.abbreviation}}; }
void from_json(const json& j, Author& a) {
  j.at("name").get_to(a.name);
  a.abbreviation = j.value("abbrev", std::string());
}

void to_json(json& j, const Document& d) {
  j = json{{"id", d.id}, {"sections", d.sections}, {"authors", d.authors}};
}
void from_json(const json& j, Document& d) {
  j.at("id").get_to(d.id);
  d.sections = j.value("sections", std::vector<Section>{});
  d.authors = j.value("authors", std::vector<Author>{});
}

void to_json(json& j, const ContribSection& s) {
  j = json{{"doc_id", s.doc_id}, {"text", s.text}, {"author_hints", s.author_hints}};
}
void from_json(const json& j, ContribSection& s) {
  j.at("doc_id").get_to(s.doc_id);
  j.at("text").get_to(s.text);
  s.author_hints = j.value("author_hints", std::vector<std::string>{});
}

void to_json(json& j, const RoleMention& m) {
  j = json{{"subject", m.subject},
           {"action", m.action},
           {"object", m.object},
           {"sentence_index", m.sentence_index},
           {"doc_id", m.doc_id}};
}
void from_json(const json& j, RoleMention& m) {
  j.at("subject").get_to(m.subject);
  m.action = j.value("action", std::string());
  m.object = j.value("object", std::string());
  m.sentence_index = j.value("sentence_index", std::size_t{0});
  m.doc_id = j.value("doc_id", std::string());
}

void to_json(json& j, const CanonicalTuple& t) {
  j = json{{"subject", t.subject}, {"action", t.action}, {"object", t.object}, {"origin", t.origin}};
}
void from_json(const json& j, CanonicalTuple& t) {
  j.at("subject").get_to(t.subject);
  j.at("action").get_to(t.action);
  j.at("object").get_to(t.object);
  j.at("origin").get_to(t.origin);
}

void to_json(json& j, const MergeRecord& r) {
  j = json{{"step", r.step},
           {"stage", r.stage == MergeStage::Label ? "label" : "similarity"},
           {"kind", to_string(r.kind)},
           {"survivor", r.survivor},
           {"absorbed", r.absorbed},
           {"survivor_label", r.survivor_label},
           {"absorbed_label", r.absorbed_label},
           {"survivor_size", r.survivor_size},
           {"absorbed_size", r.absorbed_size}};
  j["score"] = r.score ? json(*r.score) : json(nullptr);
}

void to_json(json& j, const Edit& e) {
  static const char* kOps[] = {"merge", "remove", "rename"};
  j = json{{"op", kOps[static_cast<int>(e.op)]}};
  if (e.op == Edit::Op::Merge) {
    j["ids"] = e.ids;
  } else {
    j["id"] = e.ids.empty() ? json(nullptr) : json(e.ids.front());
  }
  if (e.op == Edit::Op::Rename) j["name"] = e.name;
}
void from_json(const json& j, Edit& e) {
  std::string op = j.at("op").get<std::string>();
  if (op == "merge") e.op = Edit::Op::Merge;
  else if (op == "remove") e.op = Edit::Op::Remove;
  else if (op == "rename") e.op = Edit::Op::Rename;
  else throw InputError("unknown edit op \"" + op + "\"");
  e.ids.clear();
  if (j.contains("ids")) j.at("ids").get_to(e.ids);
  if (j.contains("id")) e.ids.push_back(j.at("id").get<int>());
  if (e.ids.empty()) throw InputError("edit \"" + op + "\" names no cluster id");
  e.name = j.value("name", std::string());
}

void to_json(json& j, const Role& r) {
  j = json{{"name", r.name}, {"count", r.count}, {"fraction", r.fraction}, {"members", r.members}};
}
void from_json(const json& j, Role& r) {
  j.at("name").get_to(r.name);
  j.at("members").get_to(r.members);
  r.count = j.value("count", r.members.size());
  r.fraction = j.value("fraction", 0.0);
}

void to_json(json& j, const LabeledMention& m) {
  j = json{{"mention", m.mention}, {"canonical", m.canonical}, {"label", m.label}};
}
void from_json(const json& j, LabeledMention& m) {
  j.at("mention").get_to(m.mention);
  j.at("canonical").get_to(m.canonical);
  j.at("label").get_to(m.label);
}

void to_json(json& j, const AuthorRolePair& p) {
  j = json{{"doc_id", p.doc_id},
           {"author", p.author},
           {"role", p.role},
           {"confidence", p.confidence},
           {"provenance", p.source}};
}

namespace {

json counts_json(const Counts& c) { return json{{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}}; }
json metrics_json(const Metrics& m) {
  return json{{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}
json pairs_json(const std::vector<AuthorRole>& ps) {
  json out = json::array();
  for (const auto& [a, r] : ps) out.push_back(json{{"author", a}, {"role", r}});
  return out;
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

void to_json(json& j, const EvalReport& r) {
  j = json{{"micro", metrics_json(r.micro)}, {"counts", counts_json(r.micro_counts)}};
  json roles = json::array();
  for (const auto& row : r.per_role) {
    json x = metrics_json(row.metrics);
    x["role"] = row.role;
    x["support"] = row.support;
    x["counts"] = counts_json(row.counts);
    roles.push_back(std::move(x));
  }
  j["per_role"] = std::move(roles);
  json docs = json::array();
  for (const auto& d : r.per_doc) {
    docs.push_back(json{{"doc_id", d.doc_id},
                        {"counts", counts_json(d.counts)},
                        {"false_positives", pairs_json(d.false_positives)},
                        {"false_negatives", pairs_json(d.false_negatives)}});
  }
  j["per_doc"] = std::move(docs);
  json base = json::array();
  for (const auto& b : published_role_baseline()) {
    json x = metrics_json(b.metrics);
    x["role"] = b.role;
    base.push_back(std::move(x));
  }
  j["published"] = json{{"micro", metrics_json(published_micro_baseline())}, {"per_role", base}};
}

json lexicon_to_json(const Lexicon& lex) {
  json counts = json::object();
  for (const auto& [term, c] : lex.term_counts()) {
    counts[term] = json{{"actions", c.in_actions}, {"objects", c.in_objects}};
  }
  return json{{"action_keywords", lex.action_keywords()},
              {"object_keywords", lex.object_keywords()},
              {"term_counts", counts}};
}

Lexicon lexicon_from_json(const json& j) {
  return guarded("lexicon", [&] {
    std::map<std::string, TermCounts> counts;
    if (j.contains("term_counts")) {
      for (const auto& [term, c] : j.at("term_counts").items()) {
        counts[term] = {c.at("actions").get<int>(), c.at("objects").get<int>()};
      }
    }
    return Lexicon(j.at("action_keywords").get<std::vector<std::string>>(),
                   j.at("object_keywords").get<std::vector<std::string>>(), std::move(counts));
  });
}

json model_to_json(const NBModel& m) {
  const std::size_t r = m.role_names().size();
  const std::size_t k = m.feature_names().size();
  std::vector<std::vector<double>> p0(r, std::vector<double>(k)), p1 = p0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t f = 0; f < k; ++f) {
      p0[i][f] = m.log_likelihood(i, f, 0);
      p1[i][f] = m.log_likelihood(i, f, 1);
    }
  }
  return json{{"version", NBModel::kFormatVersion},
              {"role_names", m.role_names()},
              {"feature_names", m.feature_names()},
              {"alpha", m.alpha()},
              {"role_counts", m.role_counts()},
              {"feature_counts", m.feature_counts()},
              {"log_prior", m.log_prior()},
              {"log_likelihood", json{{"absent", p0}, {"present", p1}}}};
}

NBModel model_from_json(const json& j) {
  return guarded("model", [&] {
    int version = j.at("version").get<int>();
    if (version != NBModel::kFormatVersion) {
      throw InputError("unsupported model version " + std::to_string(version));
    }
    const json& ll = j.at("log_likelihood");
    return NBModel::from_parameters(
        j.at("role_names").get<std::vector<std::string>>(),
        j.at("feature_names").get<std::vector<std::string>>(), j.at("alpha").get<double>(),
        j.at("role_counts").get<std::vector<long>>(),
        j.at("feature_counts").get<std::vector<std::vector<long>>>(),
        j.at("log_prior").get<std::vector<double>>(),
        ll.at("absent").get<std::vector<std::vector<double>>>(),
        ll.at("present").get<std::vector<std::vector<double>>>());
  });
}

json clusters_to_json(const ClusterState& cs, const RoleGraph& g) {
  json clusters = json::array();
  for (ClusterKind kind : {ClusterKind::Action, ClusterKind::Object}) {
    for (const auto& [id, c] : cs.clusters(kind)) {
      clusters.push_back(json{{"id", id},
                              {"kind", to_string(kind)},
                              {"label", c.label},
                              {"members", c.members}});
    }
  }
  json edges = json::array();
  for (const RoleCluster& rc : role_clusters(cs, g)) {
    edges.push_back(json{{"id", rc.id},
                         {"a", rc.action_cluster},
                         {"o", rc.object_cluster},
                         {"weight", rc.members.size()},
                         {"members", rc.members}});
  }
  return json{{"mentions", cs.tuples}, {"clusters", clusters}, {"edges", edges}};
}

ClusterState clusters_from_json(const json& j) {
  ClusterState cs = guarded("cluster dump", [&] {
    ClusterState s;
    j.at("mentions").get_to(s.tuples);
    constexpr int kUnassigned = -1;
    s.assign_a.assign(s.tuples.size(), kUnassigned);
    s.assign_o.assign(s.tuples.size(), kUnassigned);
    for (const json& c : j.at("clusters")) {
      Cluster cl;
      cl.id = c.at("id").get<int>();
      std::string kind = c.at("kind").get<std::string>();
      if (kind == to_string(ClusterKind::Action)) cl.kind = ClusterKind::Action;
      else if (kind == to_string(ClusterKind::Object)) cl.kind = ClusterKind::Object;
      else throw InputError("cluster dump: unknown cluster kind \"" + kind + "\"");
      c.at("label").get_to(cl.label);
      c.at("members").get_to(cl.members);
      auto& assign = cl.kind == ClusterKind::Action ? s.assign_a : s.assign_o;
      for (std::size_t m : cl.members) {
        if (m >= assign.size()) {
          throw InputError("cluster dump: member " + std::to_string(m) + " out of range");
        }
        if (assign[m] != kUnassigned) {
          throw InputError("cluster dump: mention " + std::to_string(m) + " in two clusters");
        }
        assign[m] = cl.id;
      }
      auto& table = cl.kind == ClusterKind::Action ? s.action_clusters : s.object_clusters;
      if (!table.emplace(cl.id, std::move(cl)).second) {
        throw InputError("cluster dump: duplicate cluster id");
      }
    }
    return s;
  });
  try {
    cs.check_invariants();
  } catch (const InvariantError& e) {
    throw InputError(std::string("cluster dump: ") + e.what());
  }
  return cs;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
}

json load_json(const std::filesystem::path& path) {
  try {
    return parse_json(read_file(path));
  } catch (const ParseError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::vector<json> parse_jsonl(std::string_view text) {
  std::vector<json> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    ++line_no;
    std::size_t start = pos;
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw ParseError("line " + std::to_string(line_no) + ": JSON parse error",
                       start + (e.byte > 0 ? e.byte - 1 : 0));
    }
  }
  return out;
}

std::vector<json> load_jsonl(const std::filesystem::path& path) {
  try {
    return parse_jsonl(read_file(path));
  } catch (const ParseError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string dump_line(const json& j) { return j.dump() + "\n"; }

PairSets pair_sets_from_jsonl(const std::vector<json>& lines) {
  PairSets out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    guarded(("record " + std::to_string(i + 1)).c_str(), [&] {
      const json& l = lines[i];
      out[l.at("doc_id").get<std::string>()].emplace(l.at("author").get<std::string>(),
                                                     l.at("role").get<std::string>());
      return 0;
    });
  }
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw InputError("cannot write " + path.string());
}

}  // namespace contribroles
