#include "toprank/ftpl.hpp"

#include <cmath>

#include "toprank/errors.hpp"

namespace toprank {

void require_learnable(const MeasureSpec& measure) {
  if (measure.admits_sublinear_regret()) return;
  throw RefusedCombination(
      measure.name() +
      " refused: global observability fails for NDCG, MAP and AUC under top-1 feedback, "
      "so no online algorithm attains sublinear regret");
}

FtplParams params_for(const MeasureSpec& measure, int m, int n, double blocks) {
  if (m < 1) throw InvalidArgument("params_for: m must be positive");
  if (n < 1) throw InvalidArgument("params_for: n must be positive");
  if (!(blocks >= 1.0)) throw InvalidArgument("params_for: K must be >= 1");
  FtplParams p;
  switch (measure.kind()) {
    case MeasureKind::SumLoss:
    case MeasureKind::PairwiseLoss:
      p.D = m * (m + 1) / 2.0;
      p.R = p.D;
      p.A = m;
      break;
    case MeasureKind::DCG: {
      double d = 0.0;
      for (int i = 1; i <= m; ++i) d += 1.0 / std::log2(1.0 + i);
      const double top_gain = std::ldexp(1.0, n) - 1.0;
      p.D = d;
      p.R = top_gain * d;
      p.A = top_gain * m;
      break;
    }
    case MeasureKind::PrecAtK:
      if (measure.k() > m) throw InvalidArgument("prec@k: k exceeds m");
      p.D = measure.k();
      p.R = measure.k();
      p.A = m;
      break;
    default:
      require_learnable(measure);
      throw InvalidArgument("params_for: unsupported measure " + measure.name());
  }
  p.epsilon = std::sqrt(p.D / (p.R * p.A * blocks));
  return p;
}

void ScoreState::absorb(std::span<const double> increment) {
  if (increment.size() != accumulated_.size()) throw InvalidArgument("score increment has wrong length");
  for (std::size_t i = 0; i < increment.size(); ++i) accumulated_[i] += increment[i];
  ++rounds_;
}

Permutation ftpl_draw(std::span<const double> scores, const FtplParams& params,
                      std::mt19937_64& rng) {
  if (!(params.epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double scale = params.perturbation_scale();
  std::vector<double> y(scores.begin(), scores.end());
  for (double& v : y) v += scale * unit(rng);
  return sort_oracle(y);
}

FtplLearner::FtplLearner(const MeasureSpec& measure, int m, FtplParams params,
                         std::uint64_t seed)
    : measure_(measure), params_(params), state_(m), rng_(seed) {}

Permutation FtplLearner::choose() { return ftpl_draw(state_, params_, rng_); }

void FtplLearner::observe(const RelevanceVector& r) {
  state_.absorb(transformed_relevance(measure_, r));
}

RegretTrace full_info_run(const MeasureSpec& measure, const RelevanceStream& stream,
                          std::uint64_t seed) {
  RegretTrace empty;
  empty.measure = measure;
  if (stream.empty()) return empty;
  const int m = static_cast<int>(stream.front().size());
  const int n = stream.front().max_level();
  const FtplParams params = params_for(measure, m, n, static_cast<double>(stream.size()));
  FtplLearner learner(measure, m, params, seed);
  RegretTracker tracker(measure, m);
  for (const RelevanceVector& r : stream) {
    const Permutation sigma = learner.choose();
    tracker.record(measure.evaluate(sigma, r), r);
    learner.observe(r);
  }
  return tracker.take();
}

}  // namespace toprank
