#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "test_support.hpp"
#include "toprank/errors.hpp"
#include "toprank/game_matrices.hpp"
#include "toprank/observability.hpp"

namespace toprank {
namespace {

using testing::perm;

// Gram-Schmidt projection, independent of the QR path in the library.
double gram_schmidt_residual(std::vector<double> v, const std::vector<std::vector<double>>& basis) {
  std::vector<std::vector<double>> q;
  for (auto b : basis) {
    for (const auto& e : q) {
      double d = 0;
      for (std::size_t k = 0; k < b.size(); ++k) d += b[k] * e[k];
      for (std::size_t k = 0; k < b.size(); ++k) b[k] -= d * e[k];
    }
    double n = 0;
    for (double x : b) n += x * x;
    n = std::sqrt(n);
    if (n < 1e-10) continue;
    for (double& x : b) x /= n;
    q.push_back(std::move(b));
  }
  for (const auto& e : q) {
    double d = 0;
    for (std::size_t k = 0; k < v.size(); ++k) d += v[k] * e[k];
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= d * e[k];
  }
  double n = 0;
  for (double x : v) n += x * x;
  return std::sqrt(n);
}

std::size_t action_index(const GameMatrices& g, const Permutation& p) {
  for (std::size_t a = 0; a < g.num_actions(); ++a) {
    if (g.actions[a] == p) return a;
  }
  ADD_FAILURE() << "action not found";
  return 0;
}

TEST(SpanResidualTest, Examples) {
  const std::vector<std::vector<double>> full = {{1, 0}, {0, 1}};
  const std::vector<double> v = {1, 1};
  EXPECT_LE(span_residual(v, full), kAcceptResidual);

  const GameMatrices g = build_game(MeasureSpec::sum_loss(), 3);
  const std::vector<std::size_t> first = {0};
  const auto cols = signal_columns(g, first);
  const std::vector<double> theorem_vec = {0, 1, -1, 0, 0, 1, -1, 0};
  EXPECT_NEAR(span_residual(theorem_vec, cols), 2.0, 1e-12);
  EXPECT_NEAR(gram_schmidt_residual(theorem_vec, cols), 2.0, 1e-12);
  EXPECT_EQ(loss_difference(g, 0, 1), theorem_vec);

  for (const auto& c : cols) EXPECT_LE(span_residual(c, cols), kAcceptResidual);

  const std::vector<std::vector<double>> empty;
  const std::vector<double> w = {3, 4};
  EXPECT_NEAR(span_residual(w, empty), 5.0, 1e-15);
  const std::vector<std::vector<double>> ragged = {{1, 0, 0}};
  EXPECT_THROW(span_residual(w, ragged), InvalidArgument);
}

TEST(SpanResidualTest, AgreesWithGramSchmidtOnRandomInputs) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + trial % 9;
    const int count = trial % 7;
    std::vector<std::vector<double>> basis(count, std::vector<double>(dim));
    for (auto& b : basis) for (double& x : b) x = z(rng);
    if (count >= 2) basis.push_back(basis[0]);  // rank deficiency
    std::vector<double> v(dim);
    for (double& x : v) x = z(rng);
    EXPECT_NEAR(span_residual(v, basis), gram_schmidt_residual(v, basis), 1e-9);
  }
}

TEST(ClassifyResidualTest, Thresholds) {
  EXPECT_TRUE(classify_residual(0.0));
  EXPECT_TRUE(classify_residual(1e-9));
  EXPECT_FALSE(classify_residual(1e-6));
  EXPECT_FALSE(classify_residual(2.0));
  EXPECT_THROW(classify_residual(1e-7), InconclusiveResidual);
  try {
    classify_residual(5e-8);
  } catch (const InconclusiveResidual& e) {
    EXPECT_EQ(e.residual(), 5e-8);
  }
}

TEST(ParetoWitnessTest, SumLossThreeObjects) {
  const GameMatrices g = build_game(MeasureSpec::sum_loss(), 3);
  const ParetoWitness w = pareto_witness(g, 0);
  EXPECT_EQ(w.action, 0u);
  ASSERT_EQ(w.marginals.size(), 3u);
  EXPECT_DOUBLE_EQ(w.marginals[0], 0.75);
  EXPECT_DOUBLE_EQ(w.marginals[1], 0.5);
  EXPECT_DOUBLE_EQ(w.marginals[2], 0.25);
  double total = 0;
  for (double p : w.outcome_probs) total += p;
  EXPECT_NEAR(total, 1.0, 1e-15);
  // Independent enumeration of expected losses.
  std::vector<double> expected(g.num_actions(), 0.0);
  for (std::size_t a = 0; a < g.num_actions(); ++a) {
    for (std::size_t l = 0; l < g.num_outcomes(); ++l) expected[a] += g.loss(a, l) * w.outcome_probs[l];
  }
  for (std::size_t a = 1; a < g.num_actions(); ++a) EXPECT_LT(expected[0], expected[a]);
  EXPECT_GT(w.margin, 0.0);
}

TEST(ParetoWitnessTest, EveryActionStrictForStrictMeasures) {
  for (int m = 1; m <= 4; ++m) {
    for (const MeasureSpec spec : {MeasureSpec::sum_loss(), MeasureSpec::dcg()}) {
      const GameMatrices g = build_game(spec, m);
      for (std::size_t a = 0; a < g.num_actions(); ++a) {
        const ParetoWitness w = pareto_witness(g, a);
        if (m == 1) {
          EXPECT_EQ(w.action, 0u);
        } else {
          EXPECT_GT(w.margin, 0.0) << spec.name() << " m=" << m << " action " << a + 1;
        }
      }
    }
  }
}

TEST(ParetoWitnessTest, PrecAtTwoTies) {
  const GameMatrices g = build_game(MeasureSpec::prec_at_k(2), 3);
  EXPECT_THROW(pareto_witness(g, 0), InvalidArgument);
  EXPECT_THROW(pareto_witness(g, 6), InvalidArgument);
}

TEST(NeighborTest, Examples) {
  EXPECT_TRUE(is_neighbor_pair(perm({1, 2, 3}), perm({1, 3, 2})));
  EXPECT_FALSE(is_neighbor_pair(perm({1, 2, 3}), perm({3, 2, 1})));
  EXPECT_FALSE(is_neighbor_pair(perm({1, 2, 3}), perm({1, 2, 3})));
  // Swap of objects at ranks 1 and 3: not adjacent.
  EXPECT_FALSE(is_neighbor_pair(perm({1, 2, 3}), perm({3, 2, 1})));
  EXPECT_FALSE(is_neighbor_pair(perm({1, 2}), perm({1, 2, 3})));
}

TEST(NeighborTest, CountMatchesFormula) {
  int factorial = 1;
  for (int m = 1; m <= 5; ++m) {
    factorial *= m;
    const GameMatrices g = build_game(MeasureSpec::sum_loss(), m);
    const auto pairs = neighbor_pairs(g);
    EXPECT_EQ(static_cast<int>(pairs.size()), (m - 1) * factorial / 2) << "m=" << m;
    // Independent check: neighbors differ in exactly two ranks, by one.
    for (const auto& [i, j] : pairs) {
      int differing = 0;
      for (int o = 0; o < m; ++o) {
        if (g.actions[i].rank(o) != g.actions[j].rank(o)) {
          ++differing;
          EXPECT_EQ(std::abs(g.actions[i].rank(o) - g.actions[j].rank(o)), 1);
        }
      }
      EXPECT_EQ(differing, 2);
    }
  }
}

TEST(NeighborhoodSetTest, Examples) {
  std::mt19937_64 rng(17);
  const GameMatrices sum3 = build_game(MeasureSpec::sum_loss(), 3);
  EXPECT_EQ(neighborhood_set(sum3, 0, 1, kDefaultNeighborhoodSamples, rng),
            (std::vector<std::size_t>{0, 1}));
  const GameMatrices sum2 = build_game(MeasureSpec::sum_loss(), 2);
  EXPECT_EQ(neighborhood_set(sum2, 0, 1, kDefaultNeighborhoodSamples, rng),
            (std::vector<std::size_t>{0, 1}));
  const GameMatrices dcg3 = build_game(MeasureSpec::dcg(), 3);
  EXPECT_EQ(neighborhood_set(dcg3, 0, 1, kDefaultNeighborhoodSamples, rng),
            (std::vector<std::size_t>{0, 1}));
}

TEST(NeighborhoodSetTest, EveryNeighborPairContainsBothEnds) {
  std::mt19937_64 rng(3);
  const GameMatrices g = build_game(MeasureSpec::sum_loss(), 4);
  for (const auto& [i, j] : neighbor_pairs(g)) {
    const auto set = neighborhood_set(g, i, j, 8, rng);
    EXPECT_NE(std::find(set.begin(), set.end(), i), set.end());
    EXPECT_NE(std::find(set.begin(), set.end(), j), set.end());
  }
}

TEST(NeighborhoodSetTest, Refusals) {
  std::mt19937_64 rng(1);
  const GameMatrices prec = build_game(MeasureSpec::prec_at_k(2), 3);
  EXPECT_THROW(neighborhood_set(prec, 0, 1, 4, rng), RefusedCombination);
  const GameMatrices sum3 = build_game(MeasureSpec::sum_loss(), 3);
  EXPECT_THROW(neighborhood_set(sum3, 0, 5, 4, rng), InvalidArgument);
  EXPECT_THROW(neighborhood_set(sum3, 0, 1, 0, rng), InvalidArgument);
}

TEST(GlobalObservabilityTest, SumLossHolds) {
  for (int m = 1; m <= 4; ++m) {
    const GlobalResult r = check_global(build_game(MeasureSpec::sum_loss(), m));
    EXPECT_TRUE(r.holds) << "m=" << m;
    EXPECT_LE(r.worst_residual, kAcceptResidual);
  }
  EXPECT_TRUE(check_global(build_game(MeasureSpec::dcg(), 3)).holds);
  EXPECT_TRUE(check_global(build_game(MeasureSpec::pairwise_loss(), 3)).holds);
}

TEST(GlobalObservabilityTest, NdcgFailsAtThree) {
  const GameMatrices g = build_game(MeasureSpec::ndcg(), 3);
  const GlobalResult r = check_global(g);
  EXPECT_FALSE(r.holds);
  EXPECT_GE(r.worst_residual, kRejectResidual);
  const std::size_t s6 = action_index(g, perm({3, 2, 1}));
  EXPECT_EQ(r.witness.i, 0u);
  EXPECT_EQ(r.witness.j, s6);
  EXPECT_GE(global_pair_residual(g, 0, s6), kRejectResidual);
  // Closed form of the difference vector, with L = log2 3.
  const double L = std::log2(3.0);
  const double c = L / (2 * (1 + L));
  const std::vector<double> expected = {0, -0.5, 0, -c, 0.5, 0, c, 0};
  const auto d = loss_difference(g, 0, s6);
  for (std::size_t k = 0; k < d.size(); ++k) EXPECT_NEAR(d[k], expected[k], 1e-12);
  EXPECT_GE(gram_schmidt_residual(d, all_signal_columns(g)), kRejectResidual);
}

TEST(GlobalObservabilityTest, MapFailsAtThree) {
  const GameMatrices g = build_game(MeasureSpec::map(), 3);
  EXPECT_FALSE(check_global(g).holds);
  const std::size_t s6 = action_index(g, perm({3, 2, 1}));
  const std::vector<double> expected = {0, -2.0 / 3, 0, -5.0 / 12, 2.0 / 3, 0, 5.0 / 12, 0};
  const auto d = loss_difference(g, 0, s6);
  for (std::size_t k = 0; k < d.size(); ++k) EXPECT_NEAR(d[k], expected[k], 1e-12);
  EXPECT_GE(global_pair_residual(g, 0, s6), kRejectResidual);
}

TEST(GlobalObservabilityTest, AucHoldsAtThreeFailsAtFour) {
  EXPECT_TRUE(check_global(build_game(MeasureSpec::auc(), 3)).holds);
  const GameMatrices g4 = build_game(MeasureSpec::auc(), 4);
  EXPECT_FALSE(check_global(g4).holds);
  const std::size_t s24 = action_index(g4, perm({4, 3, 2, 1}));
  EXPECT_EQ(s24, 23u);
  const GlobalResult r = check_global(g4);
  EXPECT_EQ(r.witness.i, 0u);
  EXPECT_EQ(r.witness.j, s24);
  EXPECT_GE(global_pair_residual(g4, 0, s24), kRejectResidual);
}

TEST(LocalObservabilityTest, FailsForNeighborsAtThree) {
  std::mt19937_64 rng(29);
  for (const MeasureSpec spec : {MeasureSpec::sum_loss(), MeasureSpec::dcg()}) {
    const GameMatrices g = build_game(spec, 3);
    const LocalResult r = check_local(g, 0, 1, kDefaultNeighborhoodSamples, rng);
    EXPECT_FALSE(r.locally_observable) << spec.name();
    EXPECT_EQ(r.neighborhood, (std::vector<std::size_t>{0, 1}));
  }
  const GameMatrices g = build_game(MeasureSpec::sum_loss(), 3);
  EXPECT_NEAR(check_local(g, 0, 1, 8, rng).residual, 2.0, 1e-12);
}

TEST(LocalObservabilityTest, SubsetMonotonicity) {
  // A residual against a subset of columns is never below the residual
  // against the full set.
  std::mt19937_64 rng(41);
  for (const MeasureSpec spec : {MeasureSpec::sum_loss(), MeasureSpec::dcg()}) {
    const GameMatrices g = build_game(spec, 4);
    const auto all = all_signal_columns(g);
    for (const auto& [i, j] : neighbor_pairs(g)) {
      const LocalResult l = check_local(g, i, j, 4, rng);
      const double global = span_residual(loss_difference(g, i, j), all);
      EXPECT_GE(l.residual + 1e-12, global);
      if (global >= kRejectResidual) {
        EXPECT_FALSE(l.locally_observable);
      }
    }
  }
}

TEST(ReconstructionTest, RowsRebuiltFromSignals) {
  for (int m = 2; m <= 4; ++m) {
    for (const MeasureSpec spec :
         {MeasureSpec::sum_loss(), MeasureSpec::dcg(), MeasureSpec::prec_at_k(2)}) {
      if (spec.kind() == MeasureKind::PrecAtK && m < 2) continue;
      const GameMatrices g = build_game(spec, m);
      for (std::size_t a = 0; a < g.num_actions(); ++a) {
        const auto row = reconstruct_from_signals(g, a);
        double err = 0.0;
        for (std::size_t l = 0; l < row.size(); ++l) {
          err += (row[l] - g.loss(a, l)) * (row[l] - g.loss(a, l));
        }
        EXPECT_LE(std::sqrt(err), kAcceptResidual) << spec.name() << " m=" << m;
      }
    }
  }
  EXPECT_THROW(reconstruct_from_signals(build_game(MeasureSpec::ndcg(), 3), 0), InvalidArgument);
}

TEST(ReportTest, CsvAndText) {
  const GameMatrices g = build_game(MeasureSpec::ndcg(), 3);
  const GlobalResult r = check_global(g);
  ObservabilityReport report;
  report.measure = MeasureSpec::ndcg();
  report.m = 3;
  report.global_holds = r.holds;
  report.failing_pair = r.witness;
  report.pair_residuals = r.pairs;
  std::ostringstream csv;
  write_report_csv(csv, report);
  const std::string out = csv.str();
  EXPECT_EQ(out.rfind("i,j,residual,verdict\n", 0), 0u);
  EXPECT_NE(out.find("1,6,"), std::string::npos);
  std::ostringstream text;
  write_report_text(text, report);
  EXPECT_NE(text.str().find("ndcg"), std::string::npos);
}

}  // namespace
}  // namespace toprank
