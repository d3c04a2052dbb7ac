#include "toprank/trace.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "toprank/errors.hpp"
#include "toprank/game_matrices.hpp"

namespace toprank {

RegretTracker::RegretTracker(const MeasureSpec& measure, int m)
    : measure_(measure), m_(m), aggregate_(m, 0.0) {
  if (m < 1) throw InvalidArgument("RegretTracker: m must be positive");
  trace_.measure = measure;
  if (measure.kind() == MeasureKind::MAP || measure.kind() == MeasureKind::AUC) {
    all_perms_ = enumerate_permutations(m);
    perm_totals_.assign(all_perms_.size(), 0.0);
  }
}

double RegretTracker::best_value() const {
  if (!all_perms_.empty()) {
    return measure_.polarity() == Polarity::Loss
               ? *std::min_element(perm_totals_.begin(), perm_totals_.end())
               : *std::max_element(perm_totals_.begin(), perm_totals_.end());
  }
  return rank_weighted_sum(measure_, sort_oracle(aggregate_), aggregate_) - offset_;
}

TraceRecord RegretTracker::record(double learner_value, const RelevanceVector& r) {
  if (static_cast<int>(r.size()) != m_) throw InvalidArgument("relevance vector has wrong length");
  if (!all_perms_.empty()) {
    for (std::size_t a = 0; a < all_perms_.size(); ++a) {
      perm_totals_[a] += measure_.evaluate(all_perms_[a], r);
    }
  } else {
    if (measure_.kind() == MeasureKind::PairwiseLoss) {
      if (!r.is_binary()) throw InvalidArgument("pairwise regret tracking needs binary relevance");
      const double k = r.count_nonzero();
      offset_ += k * (k + 1) / 2;
    } else if (measure_.kind() == MeasureKind::NDCG && r.count_nonzero() == 0) {
      offset_ -= 1.0;  // NDCG of an all-irrelevant round is 1 for every ranking
    }
    const std::vector<double> g = transformed_relevance(measure_, r);
    for (int i = 0; i < m_; ++i) aggregate_[i] += g[i];
  }
  cum_learner_ += learner_value;

  TraceRecord rec;
  rec.t = static_cast<long>(trace_.records.size()) + 1;
  rec.learner_value = learner_value;
  rec.cum_learner = cum_learner_;
  rec.cum_best = best_value();
  rec.regret = measure_.polarity() == Polarity::Loss ? rec.cum_learner - rec.cum_best
                                                     : rec.cum_best - rec.cum_learner;
  rec.norm_regret = rec.regret / static_cast<double>(rec.t);
  trace_.records.push_back(rec);
  return rec;
}

RegretTrace average_traces(std::span<const RegretTrace> traces) {
  if (traces.empty()) throw InvalidArgument("average_traces: no traces");
  RegretTrace out;
  out.measure = traces.front().measure;
  const std::size_t len = traces.front().records.size();
  for (const auto& tr : traces) {
    if (tr.records.size() != len) throw InvalidArgument("average_traces: length mismatch");
  }
  const double n = static_cast<double>(traces.size());
  out.records.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    TraceRecord acc;
    acc.t = traces.front().records[k].t;
    for (const auto& tr : traces) {
      const TraceRecord& r = tr.records[k];
      acc.learner_value += r.learner_value;
      acc.cum_learner += r.cum_learner;
      acc.cum_best += r.cum_best;
      acc.regret += r.regret;
      acc.norm_regret += r.norm_regret;
    }
    acc.learner_value /= n;
    acc.cum_learner /= n;
    acc.cum_best /= n;
    acc.regret /= n;
    acc.norm_regret /= n;
    out.records[k] = acc;
  }
  return out;
}

void write_trace_csv(std::ostream& os, const RegretTrace& trace) {
  os << "t,learner_value,cum_learner,cum_best,regret,norm_regret\n";
  char buf[256];
  for (const auto& r : trace.records) {
    std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.learner_value,
                  r.cum_learner, r.cum_best, r.regret, r.norm_regret);
    os << buf;
  }
}

RegretTrace read_trace_csv(std::istream& is, const MeasureSpec& measure) {
  RegretTrace trace;
  trace.measure = measure;
  std::string line;
  if (!std::getline(is, line) || line.rfind("t,learner_value", 0) != 0) {
    throw InvalidArgument("trace CSV: missing header");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    TraceRecord r;
    std::string tok[5];
    if (!(fields >> r.t >> tok[0] >> tok[1] >> tok[2] >> tok[3] >> tok[4])) {
      throw InvalidArgument("trace CSV: malformed row '" + line + "'");
    }
    // strtod handles inf/nan spellings that operator>> rejects.
    r.learner_value = std::strtod(tok[0].c_str(), nullptr);
    r.cum_learner = std::strtod(tok[1].c_str(), nullptr);
    r.cum_best = std::strtod(tok[2].c_str(), nullptr);
    r.regret = std::strtod(tok[3].c_str(), nullptr);
    r.norm_regret = std::strtod(tok[4].c_str(), nullptr);
    trace.records.push_back(r);
  }
  return trace;
}

}  // namespace toprank
