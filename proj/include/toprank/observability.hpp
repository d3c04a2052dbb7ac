#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "toprank/game_matrices.hpp"

namespace toprank {

/// Residuals at or below this are treated as span membership.
inline constexpr double kAcceptResidual = 1e-9;
/// Residuals at or above this are treated as non-membership; anything in
/// between is reported as inconclusive.
inline constexpr double kRejectResidual = 1e-6;
inline constexpr int kDefaultNeighborhoodSamples = 32;

/// Orthonormal basis of span(basis) obtained from a column-pivoted
/// Householder QR; answers distance-to-span queries.
class SpanProjector {
 public:
  SpanProjector(std::span<const std::vector<double>> basis, std::size_t dim);

  std::size_t rank() const noexcept { return static_cast<std::size_t>(q_.cols()); }
  std::size_t dim() const noexcept { return dim_; }

  /// Euclidean norm of the component of v orthogonal to the span.
  double residual(std::span<const double> v) const;

 private:
  std::size_t dim_;
  Eigen::MatrixXd q_;
};

double span_residual(std::span<const double> v, std::span<const std::vector<double>> basis);

/// True for residual <= kAcceptResidual, false for >= kRejectResidual;
/// throws InconclusiveResidual otherwise.
bool classify_residual(double residual);

/// Product-Bernoulli outcome distribution under which an action is the
/// strict unique optimum.
struct ParetoWitness {
  std::size_t action = 0;
  std::vector<double> marginals;      // P(object i relevant)
  std::vector<double> outcome_probs;  // over game.outcomes
  double margin = 0.0;                // gap to the runner-up action
};

/// Object at rank j is relevant with probability (m - j + 1) / (m + 1).
/// Throws InvalidArgument if the action is not the strict optimum, which
/// happens for measures whose rank component is not strictly monotone.
ParetoWitness pareto_witness(const GameMatrices& game, std::size_t action);

/// True iff b is a with exactly one pair of objects at consecutive ranks
/// exchanged.
bool is_neighbor_pair(const Permutation& a, const Permutation& b);

std::vector<std::pair<std::size_t, std::size_t>> neighbor_pairs(const GameMatrices& game);

/// Randomized inner approximation of N+_{i,j}: actions optimal at every one
/// of `samples` generic points of the shared face of the two cells.
std::vector<std::size_t> neighborhood_set(const GameMatrices& game, std::size_t i,
                                          std::size_t j, int samples,
                                          std::mt19937_64& rng);

/// Rows of every action's signal matrix, i.e. the columns of S_k^T.
std::vector<std::vector<double>> signal_columns(const GameMatrices& game,
                                                std::span<const std::size_t> actions);
std::vector<std::vector<double>> all_signal_columns(const GameMatrices& game);

std::vector<double> loss_difference(const GameMatrices& game, std::size_t i, std::size_t j);

struct PairResidual {
  std::size_t i = 0;
  std::size_t j = 0;
  double residual = 0.0;
};

struct GlobalResult {
  bool holds = false;
  double worst_residual = 0.0;
  PairResidual witness;  // failing pair of largest Kendall distance, lowest indices first
  std::vector<PairResidual> pairs;
};

/// Tests every action pair's loss difference against the span of all
/// signal-matrix columns. Throws InconclusiveResidual on an ambiguous pair.
GlobalResult check_global(const GameMatrices& game);

/// Residual of l_i - l_j against all signal columns.
double global_pair_residual(const GameMatrices& game, std::size_t i, std::size_t j);

struct LocalResult {
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<std::size_t> neighborhood;
  double residual = 0.0;
  bool locally_observable = false;
};

/// Tests l_i - l_j against the signal columns of N+_{i,j} only. Requires a
/// neighbor pair of a SumLoss, PairwiseLoss or DCG game.
LocalResult check_local(const GameMatrices& game, std::size_t i, std::size_t j,
                        int samples, std::mt19937_64& rng);

/// l_a rebuilt as sum_j f^s(j) * (feedback row of an action that puts
/// sigma_a's rank-j object on top). Only for rank-linear measures.
std::vector<double> reconstruct_from_signals(const GameMatrices& game, std::size_t action);

struct ObservabilityReport {
  MeasureSpec measure = MeasureSpec::sum_loss();
  int m = 0;
  std::optional<bool> global_holds;
  std::optional<PairResidual> failing_pair;
  std::vector<PairResidual> pair_residuals;
  std::vector<LocalResult> local_results;
  std::vector<ParetoWitness> pareto;
  double accept_tolerance = kAcceptResidual;
  double reject_tolerance = kRejectResidual;
};

/// Action indices are printed 1-based.
void write_report_text(std::ostream& os, const ObservabilityReport& report);

/// Columns: i,j,residual,verdict.
void write_report_csv(std::ostream& os, const ObservabilityReport& report);

}  // namespace toprank
