#include <iostream>
#include <thread>

#include "CLI11.hpp"

#include "commands.hpp"
#include "contribroles/errors.hpp"

using namespace contribroles::cli;

int main(int argc, char** argv) {
  CLI::App app{"Discover and extract author contribution roles"};
  app.set_config("--config", "", "key=value configuration file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();
  unsigned jobs = 1;
  app.add_option("-j,--jobs", jobs, "worker threads for per-file work")
      ->check(CLI::Range(1u, 256u));

  IngestArgs ingest;
  auto* c = app.add_subcommand("ingest", "JATS / plain-text files to documents and sections");
  c->add_option("paths", ingest.paths, "files or directories")->required();
  c->add_option("--documents-out", ingest.documents_out, "documents JSONL");
  c->add_option("--sections-out", ingest.sections_out, "contributions sections JSONL (default stdout)");
  c->add_flag("--skip-errors", ingest.skip_errors, "report unreadable files and continue");

  DiscoverArgs discover;
  c = app.add_subcommand("discover", "co-cluster the role mentions of a corpus");
  c->add_option("--sections", discover.sections, "sections JSONL");
  c->add_option("--mentions", discover.mentions, "mentions JSONL instead of sections");
  c->add_option("--lexicon", discover.lexicon, "use this lexicon instead of inducing one");
  c->add_option("--min-count", discover.min_count, "keyword frequency threshold")
      ->check(CLI::PositiveNumber);
  c->add_option("--threshold", discover.threshold, "stop when the best similarity is at most this");
  c->add_option("--similarity", discover.similarity, "cosine or damped");
  c->add_option("--lexicon-out", discover.lexicon_out);
  c->add_option("--mentions-out", discover.mentions_out);
  c->add_option("--clusters-out", discover.clusters_out, "cluster dump (default stdout)");
  c->add_option("--log-out", discover.log_out, "merge log JSONL");

  CurateArgs curate;
  c = app.add_subcommand("curate", "apply an edit script to a cluster dump");
  c->add_option("--clusters", curate.clusters)->required();
  c->add_option("--edits", curate.edits)->required();
  c->add_option("--taxonomy-out", curate.taxonomy_out, "taxonomy JSONL (default stdout)");

  TrainsetArgs trainset;
  c = app.add_subcommand("trainset", "labeled mentions from a taxonomy");
  c->add_option("--taxonomy", trainset.taxonomy)->required();
  c->add_option("--out", trainset.out, "training set JSONL (default stdout)");

  TrainArgs train;
  c = app.add_subcommand("train", "train the Naive Bayes role classifier");
  c->add_option("--trainset", train.trainset)->required();
  c->add_option("--lexicon", train.lexicon, "feature keywords (default: bundled curated set)");
  c->add_option("--alpha", train.alpha, "additive smoothing")->check(CLI::PositiveNumber);
  c->add_option("--model-out", train.model_out, "model JSON (default stdout)");

  ExtractArgs extract;
  c = app.add_subcommand("extract", "author-role pairs from contributions sections");
  c->add_option("--model", extract.model)->required();
  c->add_option("--lexicon", extract.lexicon, "feature keywords (default: bundled curated set)");
  c->add_option("--sections", extract.sections)->required();
  c->add_option("--out", extract.out, "pairs JSONL (default stdout)");
  c->add_option("--unknown-margin", extract.unknown_margin,
                "emit \"unknown\" below this confidence");

  EvalArgs eval;
  c = app.add_subcommand("eval", "score extracted pairs against gold pairs");
  c->add_option("--extracted", eval.extracted)->required();
  c->add_option("--gold", eval.gold)->required();
  c->add_option("--report-out", eval.report_out, "JSON report");
  c->add_flag("--loose-authors", eval.loose_authors, "ignore case, hyphens and periods in authors");
  c->add_flag("--baseline", eval.baseline, "show the published figures alongside");

  SynthArgs syn;
  c = app.add_subcommand("synth", "generate a synthetic corpus with gold pairs");
  c->add_option("--seed", syn.seed);
  c->add_option("--count", syn.sections, "number of sections");
  c->add_option("--perturb", syn.perturb, "none or standard");
  c->add_option("--structured-fraction", syn.structured_fraction)->check(CLI::Range(0.0, 1.0));
  c->add_option("--id-prefix", syn.id_prefix);
  c->add_option("--sections-out", syn.sections_out, "sections JSONL (default stdout)");
  c->add_option("--gold-out", syn.gold_out);
  c->add_option("--trainset-out", syn.trainset_out, "labeled mentions JSONL");
  c->add_option("--lexicon", syn.lexicon, "lexicon for training-set rewriting");

  CalibrateArgs cal;
  c = app.add_subcommand("calibrate", "cluster counts over a threshold sweep");
  c->add_option("--sections", cal.sections)->required();
  c->add_option("--lexicon", cal.lexicon);
  c->add_option("--min-count", cal.min_count)->check(CLI::PositiveNumber);
  c->add_option("--similarity", cal.similarity, "cosine or damped");
  c->add_option("--thresholds", cal.thresholds, "default 0.05 .. 0.95");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "ingest") return run_ingest(ingest, jobs);
    if (name == "discover") return run_discover(discover, jobs);
    if (name == "curate") return run_curate(curate);
    if (name == "trainset") return run_trainset(trainset);
    if (name == "train") return run_train(train);
    if (name == "extract") return run_extract(extract, jobs);
    if (name == "eval") return run_eval(eval);
    if (name == "synth") return run_synth(syn);
    if (name == "calibrate") return run_calibrate(cal, jobs);
  } catch (const contribroles::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const contribroles::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
