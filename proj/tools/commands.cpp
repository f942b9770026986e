#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <mutex>
#include <thread>

#include "contribroles/classifier.hpp"
#include "contribroles/coclustering.hpp"
#include "contribroles/corpus_ingest.hpp"
#include "contribroles/curation.hpp"
#include "contribroles/errors.hpp"
#include "contribroles/eval.hpp"
#include "contribroles/extractor.hpp"
#include "contribroles/json_io.hpp"
#include "contribroles/synth.hpp"

namespace fs = std::filesystem;

namespace contribroles::cli {
namespace {

// Runs fn over [0, n) on up to `jobs` threads. Results keep input order; the
// first exception (by index) is rethrown.
template <class R>
std::vector<R> parallel_map(std::size_t n, unsigned jobs, const std::function<R(std::size_t)>& fn) {
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
    std::cout.flush();
  } else {
    write_file(path, contents);
  }
}

template <class T>
std::string jsonl(const std::vector<T>& items) {
  return to_jsonl<T>(std::span<const T>(items));
}

std::vector<fs::path> expand_paths(const std::vector<std::string>& args) {
  std::vector<fs::path> out;
  for (const auto& a : args) {
    fs::path p(a);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::recursive_directory_iterator(p)) {
        auto ext = e.path().extension();
        if (e.is_regular_file() && (ext == ".xml" || ext == ".txt")) found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::exists(p)) {
      out.push_back(p);
    } else {
      throw InputError("no such file or directory: " + a);
    }
  }
  return out;
}

std::vector<ContribSection> load_sections(const std::string& path) {
  return from_jsonl<ContribSection>(load_jsonl(path));
}

Lexicon load_lexicon_or(const std::string& path, const Lexicon& fallback) {
  return path.empty() ? fallback : lexicon_from_json(load_json(path));
}

SimilarityFn similarity_by_name(const std::string& name) {
  if (name == "cosine") return similarity;
  if (name == "damped") return damped_similarity;
  throw InputError("unknown similarity \"" + name + "\" (expected cosine or damped)");
}

MentionSet corpus_mentions(const std::vector<ContribSection>& sections, unsigned jobs) {
  auto per = parallel_map<MentionSet>(sections.size(), jobs,
                                      [&](std::size_t i) { return extract_mentions(sections[i]); });
  MentionSet all;
  for (auto& ms : per) all.insert(all.end(), ms.begin(), ms.end());
  return all;
}

}  // namespace

int run_ingest(const IngestArgs& a, unsigned jobs) {
  auto files = expand_paths(a.paths);
  struct Result {
    std::optional<Document> doc;
    std::string error;
  };
  auto results = parallel_map<Result>(files.size(), jobs, [&](std::size_t i) {
    try {
      return Result{ingest_file(files[i]), {}};
    } catch (const InputError& e) {
      if (!a.skip_errors) throw;
      return Result{std::nullopt, e.what()};
    }
  });
  std::string docs_out;
  std::string sections_out;
  std::size_t found = 0;
  for (const auto& r : results) {
    if (!r.doc) {
      std::cerr << "skipped: " << r.error << "\n";
      continue;
    }
    docs_out += dump_line(json(*r.doc));
    if (auto s = find_contrib_section(*r.doc)) {
      sections_out += dump_line(json(*s));
      ++found;
    }
  }
  if (!a.documents_out.empty()) emit(a.documents_out, docs_out);
  emit(a.sections_out, sections_out);
  std::cerr << files.size() << " files, " << found << " contributions sections\n";
  return 0;
}

int run_discover(const DiscoverArgs& a, unsigned jobs) {
  if (a.sections.empty() == a.mentions.empty()) {
    throw InputError("discover needs exactly one of --sections or --mentions");
  }
  MentionSet ms = a.mentions.empty() ? corpus_mentions(load_sections(a.sections), jobs)
                                     : from_jsonl<RoleMention>(load_jsonl(a.mentions));
  if (ms.empty()) throw InputError("corpus yields no role mentions");
  Lexicon lex = a.lexicon.empty() ? build_lexicon(ms, a.min_count)
                                  : lexicon_from_json(load_json(a.lexicon));
  std::vector<CanonicalTuple> tuples;
  tuples.reserve(ms.size());
  for (const auto& m : ms) tuples.push_back(rewrite(m, lex));

  ClusteringOptions opts;
  opts.threshold = a.threshold;
  opts.similarity_fn = similarity_by_name(a.similarity);
  auto result = run_clustering(init_clusters(std::move(tuples)), opts);

  if (!a.mentions_out.empty()) emit(a.mentions_out, jsonl(ms));
  if (!a.lexicon_out.empty()) emit(a.lexicon_out, dump_line(lexicon_to_json(lex)));
  if (!a.log_out.empty()) emit(a.log_out, jsonl(result.log));
  emit(a.clusters_out, dump_line(clusters_to_json(result.state, result.graph)));
  std::cerr << ms.size() << " mentions, " << result.state.action_clusters.size()
            << " action clusters, " << result.state.object_clusters.size() << " object clusters, "
            << result.graph.edges().size() << " role clusters, " << result.log.size()
            << " merges\n";
  return 0;
}

int run_curate(const CurateArgs& a) {
  ClusterState cs = clusters_from_json(load_json(a.clusters));
  json script = load_json(a.edits);
  if (!script.is_array()) throw InputError(a.edits + ": edit script must be a JSON array");
  EditScript edits = from_jsonl<Edit>(std::vector<json>(script.begin(), script.end()));
  RoleTaxonomy tax = apply_edits(cs, build_role_graph(cs), edits);
  emit(a.taxonomy_out, jsonl(tax.roles));
  for (const auto& r : tax.roles) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-20s %6zu  %5.1f%%\n", r.name.c_str(), r.count,
                  100.0 * r.fraction);
    std::cerr << buf;
  }
  std::cerr << tax.removed_mentions << " of " << tax.total_mentions << " mentions removed\n";
  return 0;
}

int run_trainset(const TrainsetArgs& a) {
  RoleTaxonomy tax;
  tax.roles = from_jsonl<Role>(load_jsonl(a.taxonomy));
  emit(a.out, jsonl(generate_training_set(tax)));
  return 0;
}

int run_train(const TrainArgs& a) {
  auto data = from_jsonl<LabeledMention>(load_jsonl(a.trainset));
  Lexicon lex = load_lexicon_or(a.lexicon, curated_lexicon());
  NBModel model = NBModel::train(std::span<const LabeledMention>(data), lex, a.alpha);
  emit(a.model_out, dump_line(model_to_json(model)));
  std::cerr << data.size() << " examples, " << model.role_names().size() << " roles, "
            << model.feature_names().size() << " features\n";
  return 0;
}

int run_extract(const ExtractArgs& a, unsigned jobs) {
  NBModel model = model_from_json(load_json(a.model));
  Lexicon lex = load_lexicon_or(a.lexicon, curated_lexicon());
  auto sections = load_sections(a.sections);
  ExtractOptions opts{a.unknown_margin};
  auto per = parallel_map<std::vector<AuthorRolePair>>(
      sections.size(), jobs, [&](std::size_t i) { return extract_roles(sections[i], model, lex, opts); });
  std::string out;
  for (const auto& pairs : per) out += jsonl(pairs);
  emit(a.out, out);
  return 0;
}

int run_eval(const EvalArgs& a) {
  PairSets extracted = pair_sets_from_jsonl(load_jsonl(a.extracted));
  PairSets gold = pair_sets_from_jsonl(load_jsonl(a.gold));
  EvalReport report = score(extracted, gold, {a.loose_authors});
  if (!a.report_out.empty()) emit(a.report_out, json(report).dump(2) + "\n");
  std::cout << format_report(report, a.baseline);
  return 0;
}

int run_synth(const SynthArgs& a) {
  synth::Options opt;
  opt.seed = a.seed;
  opt.sections = a.sections;
  opt.structured_fraction = a.structured_fraction;
  opt.id_prefix = a.id_prefix;
  if (a.perturb == "standard") opt.perturbation = synth::Perturbation::standard();
  else if (a.perturb != "none") throw InputError("--perturb must be none or standard");
  auto sections = synth::generate(opt);
  std::vector<ContribSection> plain;
  std::string gold;
  for (const auto& s : sections) {
    plain.push_back(s.section);
    for (const auto& [author, role] : s.gold) {
      gold += dump_line(json{{"doc_id", s.section.doc_id}, {"author", author}, {"role", role}});
    }
  }
  emit(a.sections_out, jsonl(plain));
  if (!a.gold_out.empty()) emit(a.gold_out, gold);
  if (!a.trainset_out.empty()) {
    Lexicon lex = load_lexicon_or(a.lexicon, curated_lexicon());
    emit(a.trainset_out, jsonl(synth::labeled_mentions(sections, lex)));
  }
  return 0;
}

int run_calibrate(const CalibrateArgs& a, unsigned jobs) {
  MentionSet ms = corpus_mentions(load_sections(a.sections), jobs);
  if (ms.empty()) throw InputError("corpus yields no role mentions");
  Lexicon lex = a.lexicon.empty() ? build_lexicon(ms, a.min_count)
                                  : lexicon_from_json(load_json(a.lexicon));
  std::vector<CanonicalTuple> tuples;
  for (const auto& m : ms) tuples.push_back(rewrite(m, lex));
  ClusterState initial = init_clusters(std::move(tuples));
  std::vector<double> thresholds = a.thresholds;
  if (thresholds.empty()) {
    for (int i = 1; i <= 19; ++i) thresholds.push_back(i * 0.05);
  }
  SimilarityFn fn = similarity_by_name(a.similarity);
  auto rows = parallel_map<std::string>(thresholds.size(), jobs, [&](std::size_t i) {
    ClusteringOptions opts;
    opts.threshold = thresholds[i];
    opts.similarity_fn = fn;
    auto r = run_clustering(initial, opts);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%9.2f  %7zu  %7zu  %5zu  %6zu\n", thresholds[i],
                  r.state.action_clusters.size(), r.state.object_clusters.size(),
                  r.graph.edges().size(), r.log.size());
    return std::string(buf);
  });
  std::printf("threshold  actions  objects  roles  merges\n");
  for (const auto& row : rows) std::fputs(row.c_str(), stdout);
  return 0;
}

}  // namespace contribroles::cli
