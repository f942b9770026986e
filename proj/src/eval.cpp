#include "contribroles/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "contribroles/errors.hpp"
#include "contribroles/mention_extraction.hpp"

namespace contribroles {

Metrics metrics_from(const Counts& c) {
  Metrics m;
  m.precision = c.tp + c.fp > 0 ? static_cast<double>(c.tp) / (c.tp + c.fp) : 0.0;
  m.recall = c.tp + c.fn > 0 ? static_cast<double>(c.tp) / (c.tp + c.fn) : 0.0;
  m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  return m;
}

namespace {

std::set<AuthorRole> normalized(const std::set<AuthorRole>& pairs, bool loose) {
  std::set<AuthorRole> out;
  for (const auto& [author, role] : pairs) {
    std::string a = author;
    a.erase(0, a.find_first_not_of(" \t"));
    a.erase(a.find_last_not_of(" \t") + 1);
    out.emplace(loose ? loose_author_key(a) : a, role);
  }
  return out;
}

}  // namespace

EvalReport score(const PairSets& extracted, const PairSets& gold, const ScoreOptions& options) {
  std::vector<std::string> unknown;
  for (const auto& [doc, pairs] : extracted) {
    if (!gold.contains(doc)) unknown.push_back(doc);
  }
  if (!unknown.empty()) {
    std::string msg = "extracted documents missing from gold:";
    for (const auto& d : unknown) msg += " " + d;
    throw InputError(msg);
  }

  EvalReport report;
  std::map<std::string, RoleRow> roles;
  static const std::set<AuthorRole> kEmpty;
  for (const auto& [doc, gold_raw] : gold) {
    auto ex_it = extracted.find(doc);
    auto ex = normalized(ex_it == extracted.end() ? kEmpty : ex_it->second, options.loose_authors);
    auto gs = normalized(gold_raw, options.loose_authors);
    DocRow row;
    row.doc_id = doc;
    for (const auto& p : ex) {
      auto& rr = roles[p.second];
      if (gs.contains(p)) {
        ++row.counts.tp;
        ++rr.counts.tp;
      } else {
        ++row.counts.fp;
        ++rr.counts.fp;
        row.false_positives.push_back(p);
      }
    }
    for (const auto& p : gs) {
      auto& rr = roles[p.second];
      ++rr.support;
      if (!ex.contains(p)) {
        ++row.counts.fn;
        ++rr.counts.fn;
        row.false_negatives.push_back(p);
      }
    }
    report.micro_counts.tp += row.counts.tp;
    report.micro_counts.fp += row.counts.fp;
    report.micro_counts.fn += row.counts.fn;
    report.per_doc.push_back(std::move(row));
  }
  report.micro = metrics_from(report.micro_counts);
  for (auto& [name, row] : roles) {
    row.role = name;
    row.metrics = metrics_from(row.counts);
    report.per_role.push_back(std::move(row));
  }
  return report;
}

Metrics published_micro_baseline() { return {0.68, 0.48, 0.57}; }

const std::vector<BaselineRow>& published_role_baseline() {
  static const std::vector<BaselineRow> kRows{
      {"analysis", {0.91, 0.53, 0.67}},          {"conceptualization", {0.75, 0.50, 0.60}},
      {"experimenting", {0.22, 0.80, 0.34}},     {"study design", {0.77, 0.60, 0.67}},
      {"coordination", {1.00, 0.35, 0.52}},      {"data collection", {0.58, 0.56, 0.57}},
      {"paper drafting", {0.87, 0.54, 0.66}},    {"paper writing", {0.61, 0.41, 0.49}},
      {"paper review", {0.95, 0.50, 0.66}},      {"paper revision", {0.93, 0.31, 0.46}},
      {"paper reading", {0.81, 0.85, 0.83}},     {"literature review", {0.91, 0.83, 0.87}},
      {"interpretation", {0.90, 0.51, 0.65}},
  };
  return kRows;
}

std::string format_report(const EvalReport& report, bool with_baseline) {
  std::size_t width = std::string("micro average").size();
  for (const auto& r : report.per_role) width = std::max(width, r.role.size());
  for (const auto& r : published_role_baseline()) {
    if (with_baseline) width = std::max(width, r.role.size());
  }
  std::ostringstream out;
  char buf[256];
  auto line = [&](const std::string& name, const Metrics& m, long support, const Metrics* ref) {
    std::snprintf(buf, sizeof buf, "%-*s  %9.2f  %6.2f  %5.2f  %7ld", static_cast<int>(width),
                  name.c_str(), m.precision, m.recall, m.f1, support);
    out << buf;
    if (with_baseline) {
      if (ref) {
        std::snprintf(buf, sizeof buf, "  %9.2f  %6.2f  %5.2f", ref->precision, ref->recall, ref->f1);
      } else {
        std::snprintf(buf, sizeof buf, "  %9s  %6s  %5s", "-", "-", "-");
      }
      out << buf;
    }
    out << '\n';
  };
  std::snprintf(buf, sizeof buf, "%-*s  %9s  %6s  %5s  %7s", static_cast<int>(width), "Role",
                "Precision", "Recall", "F1", "Support");
  out << buf;
  if (with_baseline) {
    std::snprintf(buf, sizeof buf, "  %9s  %6s  %5s", "Ref P", "Ref R", "Ref F1");
    out << buf;
  }
  out << '\n';
  for (const auto& r : report.per_role) {
    const Metrics* ref = nullptr;
    for (const auto& b : published_role_baseline()) {
      if (b.role == r.role) ref = &b.metrics;
    }
    line(r.role, r.metrics, r.support, ref);
  }
  long total = report.micro_counts.tp + report.micro_counts.fn;
  Metrics micro_ref = published_micro_baseline();
  line("micro average", report.micro, total, &micro_ref);
  return out.str();
}

}  // namespace contribroles
