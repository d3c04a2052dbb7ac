#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "toprank/measures.hpp"
#include "toprank/permutation.hpp"

namespace toprank {

inline constexpr int kMaxGameObjects = 8;

/// All m! permutations in lexicographic order of their rank vectors
/// (for m = 3: 123, 132, 213, 231, 312, 321). Requires 1 <= m <= 8.
std::vector<Permutation> enumerate_permutations(int m);

/// All 2^m binary relevance vectors as an m-bit counter, object 1 most
/// significant (for m = 3: 000, 001, ..., 111). Requires 1 <= m <= 20.
std::vector<RelevanceVector> enumerate_relevance(int m);

/// Dense row-major matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::vector<double> row(std::size_t r) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Loss (or gain) matrix L and top-1 feedback matrix H for the binary game.
/// Rows are actions in enumerate_permutations order, columns outcomes in
/// enumerate_relevance order.
struct GameMatrices {
  MeasureSpec measure = MeasureSpec::sum_loss();
  int m = 0;
  std::vector<Permutation> actions;
  std::vector<RelevanceVector> outcomes;
  DenseMatrix loss;
  DenseMatrix feedback;

  Polarity polarity() const noexcept { return measure.polarity(); }
  std::size_t num_actions() const noexcept { return actions.size(); }
  std::size_t num_outcomes() const noexcept { return outcomes.size(); }
  std::vector<double> loss_row(std::size_t action) const { return loss.row(action); }
};

GameMatrices build_game(const MeasureSpec& measure, int m);

/// 2 x 2^m indicator matrix of action i: row 0 flags outcomes whose feedback
/// is 0, row 1 those whose feedback is 1.
struct SignalMatrix {
  std::size_t action = 0;
  std::array<std::vector<double>, 2> rows;
};

SignalMatrix signal_matrix(const GameMatrices& game, std::size_t action);

/// CSV export: header "action,<bitstring>..." then one row per action.
void write_loss_csv(std::ostream& os, const GameMatrices& game);
void write_feedback_csv(std::ostream& os, const GameMatrices& game);
void write_signal_csv(std::ostream& os, const GameMatrices& game);

}  // namespace toprank
