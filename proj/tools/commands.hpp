#pragma once

#include <optional>
#include <string>
#include <vector>

namespace contribroles::cli {

struct IngestArgs {
  std::vector<std::string> paths;
  std::string documents_out;
  std::string sections_out;
  bool skip_errors = false;
};

struct DiscoverArgs {
  std::string sections;
  std::string mentions;
  std::string lexicon;
  int min_count = 20;
  double threshold = 0.35;
  std::string similarity = "cosine";
  std::string lexicon_out;
  std::string mentions_out;
  std::string clusters_out;
  std::string log_out;
};

struct CurateArgs {
  std::string clusters;
  std::string edits;
  std::string taxonomy_out;
};

struct TrainsetArgs {
  std::string taxonomy;
  std::string out;
};

struct TrainArgs {
  std::string trainset;
  std::string lexicon;
  double alpha = 1.0;
  std::string model_out;
};

struct ExtractArgs {
  std::string model;
  std::string lexicon;
  std::string sections;
  std::string out;
  std::optional<double> unknown_margin;
};

struct EvalArgs {
  std::string extracted;
  std::string gold;
  std::string report_out;
  bool loose_authors = false;
  bool baseline = false;
};

struct SynthArgs {
  unsigned long long seed = 1;
  std::size_t sections = 100;
  std::string perturb = "none";
  double structured_fraction = 0.1;
  std::string id_prefix = "synth";
  std::string sections_out;
  std::string gold_out;
  std::string trainset_out;
  std::string lexicon;
};

struct CalibrateArgs {
  std::string sections;
  std::string lexicon;
  int min_count = 20;
  std::string similarity = "cosine";
  std::vector<double> thresholds;
};

// Each returns the process exit code; errors propagate as exceptions.
int run_ingest(const IngestArgs& a, unsigned jobs);
int run_discover(const DiscoverArgs& a, unsigned jobs);
int run_curate(const CurateArgs& a);
int run_trainset(const TrainsetArgs& a);
int run_train(const TrainArgs& a);
int run_extract(const ExtractArgs& a, unsigned jobs);
int run_eval(const EvalArgs& a);
int run_synth(const SynthArgs& a);
int run_calibrate(const CalibrateArgs& a, unsigned jobs);

}  // namespace contribroles::cli
