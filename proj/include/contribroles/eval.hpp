#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace contribroles {

using AuthorRole = std::pair<std::string, std::string>;  // (author, role)
using PairSets = std::map<std::string, std::set<AuthorRole>>;  // per doc_id

struct Counts {
  long tp = 0;
  long fp = 0;
  long fn = 0;
};

struct Metrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// 0/0 counts as 0; F1 is 2PR/(P+R), or 0 when P+R = 0.
Metrics metrics_from(const Counts& c);

struct RoleRow {
  std::string role;
  Counts counts;
  Metrics metrics;
  long support = 0;  // gold pairs with this role
};

struct DocRow {
  std::string doc_id;
  Counts counts;
  std::vector<AuthorRole> false_positives;
  std::vector<AuthorRole> false_negatives;
};

struct EvalReport {
  Counts micro_counts;
  Metrics micro;
  std::vector<RoleRow> per_role;  // sorted by role name
  std::vector<DocRow> per_doc;    // sorted by doc id
};

struct ScoreOptions {
  // Compare authors ignoring case, hyphens and periods.
  bool loose_authors = false;
};

// A pair is correct if identical to a gold pair of the same document. Gold
// documents without extractions count as empty extractions; extracted
// documents missing from gold throw InputError.
EvalReport score(const PairSets& extracted, const PairSets& gold, const ScoreOptions& options = {});

// Published reference values: micro-average and per-role rows.
struct BaselineRow {
  std::string role;
  Metrics metrics;
};
Metrics published_micro_baseline();
const std::vector<BaselineRow>& published_role_baseline();

// Aligned text table: Role, Precision, Recall, F1, Support, plus the
// published values when with_baseline is set.
std::string format_report(const EvalReport& report, bool with_baseline = false);

}  // namespace contribroles
