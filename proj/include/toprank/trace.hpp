#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "toprank/measures.hpp"

namespace toprank {

/// Relevance vectors r_1..r_T, fixed before any learner runs.
using RelevanceStream = std::vector<RelevanceVector>;

struct TraceRecord {
  long t = 0;
  double learner_value = 0.0;
  double cum_learner = 0.0;
  double cum_best = 0.0;     // value of the best fixed ranking on rounds 1..t
  double regret = 0.0;       // cum_learner - cum_best, sign-flipped for gains
  double norm_regret = 0.0;  // regret / t

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct RegretTrace {
  MeasureSpec measure = MeasureSpec::sum_loss();
  std::vector<TraceRecord> records;

  Polarity polarity() const noexcept { return measure.polarity(); }
  bool empty() const noexcept { return records.empty(); }
  const TraceRecord& back() const { return records.back(); }
};

/// Incrementally tracks the best fixed ranking in hindsight and emits one
/// TraceRecord per round.
///
/// SumLoss, DCG, Prec@k and NDCG are linear in a per-round transformed
/// relevance vector, so the best ranking sorts the aggregate. PairwiseLoss
/// equals SumLoss minus |r|(|r|+1)/2 on binary r. MAP and AUC fall back to
/// tracking every permutation (m <= 8).
class RegretTracker {
 public:
  RegretTracker(const MeasureSpec& measure, int m);

  TraceRecord record(double learner_value, const RelevanceVector& r);
  const RegretTrace& trace() const noexcept { return trace_; }
  RegretTrace take() { return std::move(trace_); }

 private:
  double best_value() const;

  MeasureSpec measure_;
  int m_;
  std::vector<double> aggregate_;
  double offset_ = 0.0;  // per-round constants the linear aggregate omits
  std::vector<Permutation> all_perms_;
  std::vector<double> perm_totals_;
  double cum_learner_ = 0.0;
  RegretTrace trace_;
};

/// Pointwise arithmetic mean of equally long traces.
RegretTrace average_traces(std::span<const RegretTrace> traces);

/// Header `t,learner_value,cum_learner,cum_best,regret,norm_regret`;
/// values printed with 17 significant digits so parsing restores them exactly.
void write_trace_csv(std::ostream& os, const RegretTrace& trace);
RegretTrace read_trace_csv(std::istream& is, const MeasureSpec& measure);

}  // namespace toprank
