#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "toprank/measures.hpp"
#include "toprank/trace.hpp"

namespace toprank {

/// Perturbation scale and the norm bounds it is tuned from: D bounds the l1
/// norm of learner vectors f(sigma), R the inner product f(sigma) . g(r),
/// A the l1 norm of adversary vectors g(r). Perturbations are drawn
/// uniformly from [0, 1/epsilon]^m.
struct FtplParams {
  double epsilon = 1.0;
  double D = 1.0;
  double R = 1.0;
  double A = 1.0;

  double perturbation_scale() const noexcept { return 1.0 / epsilon; }
};

/// Throws RefusedCombination unless the measure admits a sublinear-regret
/// learner under top-1 feedback (NDCG, MAP and AUC do not).
void require_learnable(const MeasureSpec& measure);

/// Bounds for `measure` over m objects with levels in {0..n}, and
/// epsilon = sqrt(D / (R A K)) for a horizon split into `blocks` FTPL steps.
/// SumLoss/PairwiseLoss: D = R = m(m+1)/2, A = m.
/// DCG: D = sum_i 1/log2(1+i), R = (2^n-1) D, A = (2^n-1) m.
/// Prec@k: D = R = k, A = m.
/// Throws RefusedCombination for NDCG, MAP and AUC.
FtplParams params_for(const MeasureSpec& measure, int m, int n, double blocks);

/// Cumulative (transformed) relevance fed to the perturbed leader.
class ScoreState {
 public:
  explicit ScoreState(int m) : accumulated_(m, 0.0) {}

  void absorb(std::span<const double> increment);
  std::span<const double> accumulated() const noexcept { return accumulated_; }
  long rounds_absorbed() const noexcept { return rounds_; }
  int size() const noexcept { return static_cast<int>(accumulated_.size()); }

 private:
  std::vector<double> accumulated_;
  long rounds_ = 0;
};

/// sort_oracle(accumulated + p) with p ~ U[0, 1/epsilon]^m. The same sort
/// serves gains and losses: larger scores always rank higher.
Permutation ftpl_draw(std::span<const double> scores, const FtplParams& params,
                      std::mt19937_64& rng);

inline Permutation ftpl_draw(const ScoreState& state, const FtplParams& params,
                             std::mt19937_64& rng) {
  return ftpl_draw(state.accumulated(), params, rng);
}

/// Full-information baseline: sees every r_t and perturbs afresh each round.
class FtplLearner {
 public:
  FtplLearner(const MeasureSpec& measure, int m, FtplParams params, std::uint64_t seed);

  Permutation choose();
  void observe(const RelevanceVector& r);

  const ScoreState& state() const noexcept { return state_; }
  const FtplParams& params() const noexcept { return params_; }

 private:
  MeasureSpec measure_;
  FtplParams params_;
  ScoreState state_;
  std::mt19937_64 rng_;
};

/// Plays FtplLearner against the stream with epsilon from params_for(K = T).
RegretTrace full_info_run(const MeasureSpec& measure, const RelevanceStream& stream,
                          std::uint64_t seed);

}  // namespace toprank
