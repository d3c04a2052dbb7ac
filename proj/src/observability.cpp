#include "toprank/observability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>

#include "toprank/errors.hpp"

namespace toprank {
namespace {

void require_action(const GameMatrices& game, std::size_t i) {
  if (i >= game.num_actions()) {
    throw InvalidArgument("action index " + std::to_string(i + 1) + " out of range [1, " +
                          std::to_string(game.num_actions()) + "]");
  }
}

void require_neighbor_structure(const MeasureSpec& measure) {
  switch (measure.kind()) {
    case MeasureKind::SumLoss:
    case MeasureKind::PairwiseLoss:
    case MeasureKind::DCG:
      return;
    case MeasureKind::PrecAtK:
      throw RefusedCombination(
          "neighbor structure of prec@k is an open problem; local analysis refused");
    default:
      throw InvalidArgument("neighbor analysis is only defined for sumloss, pairwise and dcg");
  }
}

std::vector<double> outcome_distribution(const GameMatrices& game,
                                         std::span<const double> marginals) {
  std::vector<double> probs(game.num_outcomes());
  for (std::size_t l = 0; l < game.num_outcomes(); ++l) {
    double p = 1.0;
    for (int obj = 0; obj < game.m; ++obj) {
      p *= game.outcomes[l][obj] == 1 ? marginals[obj] : 1.0 - marginals[obj];
    }
    probs[l] = p;
  }
  return probs;
}

std::vector<double> expected_values(const GameMatrices& game, std::span<const double> probs) {
  std::vector<double> values(game.num_actions(), 0.0);
  for (std::size_t a = 0; a < game.num_actions(); ++a) {
    for (std::size_t l = 0; l < game.num_outcomes(); ++l) values[a] += game.loss(a, l) * probs[l];
  }
  return values;
}

// Positive when `value` is better than `other` under the game's polarity.
int kendall_distance(const Permutation& a, const Permutation& b) {
  int d = 0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = x + 1; y < a.size(); ++y) {
      d += (a.rank(x) < a.rank(y)) != (b.rank(x) < b.rank(y));
    }
  }
  return d;
}

double advantage(Polarity polarity, double value, double other) {
  return polarity == Polarity::Loss ? other - value : value - other;
}

}  // namespace

SpanProjector::SpanProjector(std::span<const std::vector<double>> basis, std::size_t dim)
    : dim_(dim) {
  if (basis.empty()) {
    q_.resize(static_cast<Eigen::Index>(dim), 0);
    return;
  }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c) {
    if (basis[c].size() != dim) throw InvalidArgument("basis vectors must share one length");
    for (std::size_t r = 0; r < dim; ++r) {
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = basis[c][r];
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  const Eigen::Index rank = qr.rank();
  Eigen::MatrixXd q = qr.householderQ();
  q_ = q.leftCols(rank);
}

double SpanProjector::residual(std::span<const double> v) const {
  if (v.size() != dim_) throw InvalidArgument("vector length does not match basis dimension");
  Eigen::Map<const Eigen::VectorXd> x(v.data(), static_cast<Eigen::Index>(v.size()));
  if (q_.cols() == 0) return x.norm();
  const Eigen::VectorXd coeffs = q_.transpose() * x;
  return (x - q_ * coeffs).norm();
}

double span_residual(std::span<const double> v, std::span<const std::vector<double>> basis) {
  return SpanProjector(basis, v.size()).residual(v);
}

bool classify_residual(double residual) {
  if (residual <= kAcceptResidual) return true;
  if (residual >= kRejectResidual) return false;
  throw InconclusiveResidual("span residual " + std::to_string(residual) +
                                 " lies between accept and reject thresholds",
                             residual);
}

ParetoWitness pareto_witness(const GameMatrices& game, std::size_t action) {
  require_action(game, action);
  const Permutation& sigma = game.actions[action];
  ParetoWitness w;
  w.action = action;
  w.marginals.resize(game.m);
  for (int obj = 0; obj < game.m; ++obj) {
    w.marginals[obj] = static_cast<double>(game.m - sigma.rank(obj) + 1) / (game.m + 1);
  }
  w.outcome_probs = outcome_distribution(game, w.marginals);
  const std::vector<double> values = expected_values(game, w.outcome_probs);

  w.margin = std::numeric_limits<double>::infinity();
  std::size_t rival = action;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k == action) continue;
    const double gap = advantage(game.polarity(), values[action], values[k]);
    if (gap < w.margin) {
      w.margin = gap;
      rival = k;
    }
  }
  if (w.margin <= kAcceptResidual) {
    throw InvalidArgument("action " + sigma.to_string() + " is not strictly optimal: ties with " +
                          game.actions[rival].to_string() + " under the witness distribution");
  }
  return w;
}

bool is_neighbor_pair(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) return false;
  const auto& ia = a.inverse();
  const auto& ib = b.inverse();
  std::vector<std::size_t> diff;
  for (std::size_t pos = 0; pos < ia.size(); ++pos) {
    if (ia[pos] != ib[pos]) diff.push_back(pos);
  }
  return diff.size() == 2 && diff[1] == diff[0] + 1 && ia[diff[0]] == ib[diff[1]] &&
         ia[diff[1]] == ib[diff[0]];
}

std::vector<std::pair<std::size_t, std::size_t>> neighbor_pairs(const GameMatrices& game) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < game.num_actions(); ++i) {
    for (std::size_t j = i + 1; j < game.num_actions(); ++j) {
      if (is_neighbor_pair(game.actions[i], game.actions[j])) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::size_t> neighborhood_set(const GameMatrices& game, std::size_t i,
                                          std::size_t j, int samples,
                                          std::mt19937_64& rng) {
  require_action(game, i);
  require_action(game, j);
  require_neighbor_structure(game.measure);
  if (!is_neighbor_pair(game.actions[i], game.actions[j])) {
    throw InvalidArgument("actions " + std::to_string(i + 1) + " and " +
                          std::to_string(j + 1) + " are not neighbors");
  }
  if (samples < 1) throw InvalidArgument("neighborhood_set needs at least one sample");

  const Permutation& sigma = game.actions[i];
  const auto& order_i = sigma.inverse();
  const auto& order_j = game.actions[j].inverse();
  std::size_t swap_pos = 0;
  while (order_i[swap_pos] == order_j[swap_pos]) ++swap_pos;

  std::uniform_real_distribution<double> unit(0.02, 0.98);
  std::vector<bool> optimal_everywhere(game.num_actions(), true);
  const int m = game.m;
  for (int s = 0; s < samples; ++s) {
    // m-1 distinct levels, strictly decreasing along sigma_i, with the
    // swapped positions sharing one level.
    std::vector<double> levels(std::max(m - 1, 1));
    for (double& x : levels) x = unit(rng);
    std::sort(levels.begin(), levels.end(), std::greater<>());
    std::vector<double> marginals(m);
    for (int pos = 0; pos < m; ++pos) {
      const int level_index = pos <= static_cast<int>(swap_pos) ? pos : pos - 1;
      marginals[order_i[pos]] = levels[std::min<std::size_t>(level_index, levels.size() - 1)];
    }
    const std::vector<double> values =
        expected_values(game, outcome_distribution(game, marginals));
    double best = values[i];
    for (double v : values) {
      if (advantage(game.polarity(), v, best) > 0) best = v;
    }
    const double tol = kAcceptResidual * std::max(1.0, std::abs(best));
    for (std::size_t a = 0; a < values.size(); ++a) {
      if (advantage(game.polarity(), best, values[a]) > tol) optimal_everywhere[a] = false;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < optimal_everywhere.size(); ++a) {
    if (optimal_everywhere[a]) out.push_back(a);
  }
  return out;
}

std::vector<std::vector<double>> signal_columns(const GameMatrices& game,
                                                std::span<const std::size_t> actions) {
  std::vector<std::vector<double>> cols;
  cols.reserve(actions.size() * 2);
  for (std::size_t a : actions) {
    SignalMatrix s = signal_matrix(game, a);
    cols.push_back(std::move(s.rows[0]));
    cols.push_back(std::move(s.rows[1]));
  }
  return cols;
}

std::vector<std::vector<double>> all_signal_columns(const GameMatrices& game) {
  std::vector<std::size_t> every(game.num_actions());
  for (std::size_t a = 0; a < every.size(); ++a) every[a] = a;
  return signal_columns(game, every);
}

std::vector<double> loss_difference(const GameMatrices& game, std::size_t i, std::size_t j) {
  require_action(game, i);
  require_action(game, j);
  std::vector<double> d(game.num_outcomes());
  for (std::size_t l = 0; l < d.size(); ++l) d[l] = game.loss(i, l) - game.loss(j, l);
  return d;
}

GlobalResult check_global(const GameMatrices& game) {
  const auto cols = all_signal_columns(game);
  const SpanProjector projector(cols, game.num_outcomes());
  GlobalResult result;
  result.worst_residual = -1.0;
  for (std::size_t i = 0; i < game.num_actions(); ++i) {
    for (std::size_t j = i + 1; j < game.num_actions(); ++j) {
      const double res = projector.residual(loss_difference(game, i, j));
      result.pairs.push_back({i, j, res});
      result.worst_residual = std::max(result.worst_residual, res);
    }
  }
  if (result.pairs.empty()) {
    result.holds = true;
    result.worst_residual = 0.0;
    return result;
  }
  for (const auto& p : result.pairs) {
    if (p.residual > kAcceptResidual && p.residual < kRejectResidual) {
      throw InconclusiveResidual("pair (" + std::to_string(p.i + 1) + ", " +
                                     std::to_string(p.j + 1) + ") has ambiguous residual " +
                                     std::to_string(p.residual),
                                 p.residual);
    }
  }
  result.holds = result.worst_residual <= kAcceptResidual;
  if (!result.holds) {
    // Report the failing pair farthest apart in Kendall distance, lowest
    // indices first; the reversal pair is the canonical counterexample.
    int best_distance = -1;
    for (const auto& p : result.pairs) {
      if (p.residual < kRejectResidual) continue;
      const int d = kendall_distance(game.actions[p.i], game.actions[p.j]);
      if (d > best_distance) {
        best_distance = d;
        result.witness = p;
      }
    }
  }
  return result;
}

double global_pair_residual(const GameMatrices& game, std::size_t i, std::size_t j) {
  const auto cols = all_signal_columns(game);
  return span_residual(loss_difference(game, i, j), cols);
}

LocalResult check_local(const GameMatrices& game, std::size_t i, std::size_t j, int samples,
                        std::mt19937_64& rng) {
  LocalResult out;
  out.i = i;
  out.j = j;
  out.neighborhood = neighborhood_set(game, i, j, samples, rng);
  const auto cols = signal_columns(game, out.neighborhood);
  out.residual = span_residual(loss_difference(game, i, j), cols);
  out.locally_observable = classify_residual(out.residual);
  return out;
}

std::vector<double> reconstruct_from_signals(const GameMatrices& game, std::size_t action) {
  require_action(game, action);
  if (!game.measure.is_rank_linear()) {
    throw InvalidArgument(game.measure.name() + " rows are not linear in the feedback signals");
  }
  // One representative action per top object.
  std::vector<std::size_t> top_rep(game.m, game.num_actions());
  for (std::size_t a = 0; a < game.num_actions(); ++a) {
    auto& slot = top_rep[game.actions[a].top_object()];
    if (slot == game.num_actions()) slot = a;
  }
  std::vector<double> row(game.num_outcomes(), 0.0);
  const Permutation& sigma = game.actions[action];
  for (int pos = 1; pos <= game.m; ++pos) {
    const SignalMatrix s = signal_matrix(game, top_rep[sigma.object_at(pos)]);
    const double weight = game.measure.f_component(pos);
    for (std::size_t l = 0; l < row.size(); ++l) row[l] += weight * s.rows[1][l];
  }
  return row;
}

void write_report_text(std::ostream& os, const ObservabilityReport& report) {
  const auto old_precision = os.precision(12);
  os << "measure: " << report.measure.name() << "\n";
  os << "m: " << report.m << "\n";
  os << "tolerances: accept <= " << report.accept_tolerance << ", reject >= "
     << report.reject_tolerance << "\n";
  if (report.global_holds) {
    os << "global observability: " << (*report.global_holds ? "holds" : "fails") << "\n";
    if (report.failing_pair) {
      os << "  witness pair: (" << report.failing_pair->i + 1 << ", "
         << report.failing_pair->j + 1 << ") residual " << report.failing_pair->residual << "\n";
    }
  }
  for (const auto& local : report.local_results) {
    os << "pair (" << local.i + 1 << ", " << local.j + 1 << "): N+ = {";
    for (std::size_t k = 0; k < local.neighborhood.size(); ++k) {
      os << (k ? ", " : "") << local.neighborhood[k] + 1;
    }
    os << "} residual " << local.residual << " local observability "
       << (local.locally_observable ? "holds" : "fails") << " (randomized N+)\n";
  }
  for (const auto& w : report.pareto) {
    os << "action " << w.action + 1 << ": strict optimum, margin " << w.margin
       << ", marginals [";
    for (std::size_t k = 0; k < w.marginals.size(); ++k) {
      os << (k ? ", " : "") << w.marginals[k];
    }
    os << "]\n";
  }
  os.precision(old_precision);
}

void write_report_csv(std::ostream& os, const ObservabilityReport& report) {
  const auto old_precision = os.precision(17);
  os << "i,j,residual,verdict\n";
  auto verdict = [](double r) {
    if (r <= kAcceptResidual) return "in_span";
    if (r >= kRejectResidual) return "not_in_span";
    return "inconclusive";
  };
  for (const auto& p : report.pair_residuals) {
    os << p.i + 1 << ',' << p.j + 1 << ',' << p.residual << ',' << verdict(p.residual) << '\n';
  }
  for (const auto& l : report.local_results) {
    os << l.i + 1 << ',' << l.j + 1 << ',' << l.residual << ',' << verdict(l.residual) << '\n';
  }
  os.precision(old_precision);
}

}  // namespace toprank
