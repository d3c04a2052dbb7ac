#include "toprank/game_matrices.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "toprank/errors.hpp"

namespace toprank {

std::vector<double> DenseMatrix::row(std::size_t r) const {
  if (r >= rows_) throw InvalidArgument("row index out of range");
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

std::vector<Permutation> enumerate_permutations(int m) {
  if (m < 1 || m > kMaxGameObjects) {
    throw InvalidArgument("enumerate_permutations: m must be in [1, 8]");
  }
  std::vector<int> ranks(m);
  std::iota(ranks.begin(), ranks.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(ranks);
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return out;
}

std::vector<RelevanceVector> enumerate_relevance(int m) {
  if (m < 1 || m > 20) throw InvalidArgument("enumerate_relevance: m must be in [1, 20]");
  const std::size_t count = std::size_t{1} << m;
  std::vector<RelevanceVector> out;
  out.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    std::vector<int> levels(m);
    for (int i = 0; i < m; ++i) levels[i] = static_cast<int>((code >> (m - 1 - i)) & 1U);
    out.emplace_back(std::move(levels), 1);
  }
  return out;
}

GameMatrices build_game(const MeasureSpec& measure, int m) {
  if (m < 1 || m > kMaxGameObjects) throw InvalidArgument("build_game: m must be in [1, 8]");
  GameMatrices game;
  game.measure = measure;
  game.m = m;
  game.actions = enumerate_permutations(m);
  game.outcomes = enumerate_relevance(m);
  game.loss = DenseMatrix(game.actions.size(), game.outcomes.size());
  game.feedback = DenseMatrix(game.actions.size(), game.outcomes.size());
  for (std::size_t i = 0; i < game.actions.size(); ++i) {
    const Permutation& sigma = game.actions[i];
    for (std::size_t j = 0; j < game.outcomes.size(); ++j) {
      const RelevanceVector& r = game.outcomes[j];
      game.loss(i, j) = measure.evaluate(sigma, r);
      game.feedback(i, j) = r[sigma.top_object()];
    }
  }
  return game;
}

SignalMatrix signal_matrix(const GameMatrices& game, std::size_t action) {
  if (action >= game.num_actions()) throw InvalidArgument("action index out of range");
  SignalMatrix s;
  s.action = action;
  s.rows[0].resize(game.num_outcomes());
  s.rows[1].resize(game.num_outcomes());
  for (std::size_t l = 0; l < game.num_outcomes(); ++l) {
    const bool one = game.feedback(action, l) == 1.0;
    s.rows[0][l] = one ? 0.0 : 1.0;
    s.rows[1][l] = one ? 1.0 : 0.0;
  }
  return s;
}

namespace {

void write_header(std::ostream& os, const GameMatrices& game) {
  os << "action";
  for (const auto& r : game.outcomes) os << ',' << r.to_string();
  os << '\n';
}

void write_matrix(std::ostream& os, const GameMatrices& game, const DenseMatrix& mat) {
  write_header(os, game);
  const auto old_precision = os.precision(17);
  for (std::size_t i = 0; i < game.num_actions(); ++i) {
    os << game.actions[i].to_string();
    for (std::size_t j = 0; j < game.num_outcomes(); ++j) os << ',' << mat(i, j);
    os << '\n';
  }
  os.precision(old_precision);
}

}  // namespace

void write_loss_csv(std::ostream& os, const GameMatrices& game) {
  write_matrix(os, game, game.loss);
}

void write_feedback_csv(std::ostream& os, const GameMatrices& game) {
  write_matrix(os, game, game.feedback);
}

void write_signal_csv(std::ostream& os, const GameMatrices& game) {
  write_header(os, game);
  for (std::size_t i = 0; i < game.num_actions(); ++i) {
    const SignalMatrix s = signal_matrix(game, i);
    for (int row = 0; row < 2; ++row) {
      os << game.actions[i].to_string() << '/' << row;
      for (double v : s.rows[row]) os << ',' << static_cast<int>(v);
      os << '\n';
    }
  }
}

}  // namespace toprank
