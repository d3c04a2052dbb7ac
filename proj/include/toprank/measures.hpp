#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "toprank/permutation.hpp"

namespace toprank {

enum class MeasureKind { SumLoss, PairwiseLoss, DCG, PrecAtK, NDCG, MAP, AUC };
enum class Polarity { Loss, Gain };

/// Identity and component functions of a ranking measure.
///
/// The unnormalized measures decompose as f(sigma) . g(r), where f applies a
/// monotone scalar function of rank to every object and g a scalar function
/// of relevance level. PairwiseLoss is carried by the SumLoss decomposition:
/// the two differ per round by a term depending on r alone.
class MeasureSpec {
 public:
  static MeasureSpec sum_loss() { return MeasureSpec(MeasureKind::SumLoss); }
  static MeasureSpec pairwise_loss() { return MeasureSpec(MeasureKind::PairwiseLoss); }
  static MeasureSpec dcg() { return MeasureSpec(MeasureKind::DCG); }
  static MeasureSpec prec_at_k(int k);
  static MeasureSpec ndcg() { return MeasureSpec(MeasureKind::NDCG); }
  static MeasureSpec map() { return MeasureSpec(MeasureKind::MAP); }
  static MeasureSpec auc() { return MeasureSpec(MeasureKind::AUC); }

  /// Accepts sumloss, pairwise, dcg, prec@K, ndcg, map, auc (case-insensitive).
  static MeasureSpec parse(std::string_view name);

  MeasureKind kind() const noexcept { return kind_; }
  int k() const noexcept { return k_; }
  Polarity polarity() const noexcept;
  bool supports_graded() const noexcept;

  /// True for the measures whose value is f(sigma) . g(r) with per-coordinate g.
  bool is_rank_linear() const noexcept;

  /// True when the top-1 feedback game admits a sublinear-regret learner.
  bool admits_sublinear_regret() const noexcept;

  /// f^s(rank), rank 1-based. Defined for SumLoss, PairwiseLoss, DCG, PrecAtK
  /// and NDCG (which shares DCG's discount).
  double f_component(int rank) const;

  /// g^s(level): identity for SumLoss/PairwiseLoss/PrecAtK, 2^x - 1 for DCG/NDCG.
  double g_component(int level) const;

  double evaluate(const Permutation& sigma, const RelevanceVector& r) const;

  std::string name() const;

  friend bool operator==(const MeasureSpec&, const MeasureSpec&) = default;

 private:
  explicit MeasureSpec(MeasureKind kind, int k = 0) : kind_(kind), k_(k) {}

  MeasureKind kind_;
  int k_;
};

double sum_loss(const Permutation& sigma, const RelevanceVector& r);
int pairwise_loss(const Permutation& sigma, const RelevanceVector& r);
double dcg(const Permutation& sigma, const RelevanceVector& r);
int prec_at_k(const Permutation& sigma, const RelevanceVector& r, int k);

/// DCG of the ideal ordering; 1 for the all-zero vector.
double ndcg_normalizer(const RelevanceVector& r);
double ndcg(const Permutation& sigma, const RelevanceVector& r);

/// Mean over relevant objects of precision at their rank; 1 for all-zero r.
double mean_average_precision(const Permutation& sigma, const RelevanceVector& r);

int auc_normalizer(const RelevanceVector& r);
/// pairwise_loss / auc_normalizer, and 0 when no relevant/irrelevant pair exists.
double auc(const Permutation& sigma, const RelevanceVector& r);

/// argmin_sigma sigma . y: larger scores receive better (smaller) ranks,
/// ties go to the lower object index. For any gain measure with f^s
/// non-increasing in rank this is also argmax_sigma f(sigma) . y.
Permutation sort_oracle(std::span<const double> y);

/// g(r) for a rank-linear measure, or r / Z(r) with DCG gains for NDCG.
std::vector<double> transformed_relevance(const MeasureSpec& measure,
                                          const RelevanceVector& r);

/// f(sigma) . y.
double rank_weighted_sum(const MeasureSpec& measure, const Permutation& sigma,
                         std::span<const double> y);

}  // namespace toprank
