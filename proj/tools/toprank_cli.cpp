// toprank: experiment and analysis driver.
//
//   toprank simulate --measure dcg --learner rtop1f --m 10 --T 10000 --runs 10 --out trace.csv
//   toprank analyze --measure ndcg --m 3 --check global --out report.csv
//   toprank besthindsight --measure sumloss --stream stream.txt
//
// Exit codes: 0 success, 2 invalid config, 3 refused measure/learner
// combination, 4 inconclusive observability residual.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "toprank/adversary.hpp"
#include "toprank/errors.hpp"
#include "toprank/experiment.hpp"
#include "toprank/game_matrices.hpp"
#include "toprank/hindsight.hpp"
#include "toprank/observability.hpp"
#include "toprank/slope.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitRefused = 3;
constexpr int kExitInconclusive = 4;

struct SimulateArgs {
  std::string measure = "dcg";
  std::string learner = "rtop1f";
  int m = 10;
  long horizon = 10000;
  int runs = 10;
  std::uint64_t seed = 1;
  std::string adversary = "noisy-fixed";
  double noise_sd = 0.2;
  int levels = 1;
  std::vector<double> probs;
  std::string stream;
  std::string out;
  std::string svg;
  long burn_in = 1000;
};

struct AnalyzeArgs {
  std::string measure = "sumloss";
  int m = 3;
  std::string check = "global";
  std::vector<int> pair;
  int samples = toprank::kDefaultNeighborhoodSamples;
  std::uint64_t seed = 1;
  std::string out;
};

struct HindsightArgs {
  std::string measure = "sumloss";
  std::string stream;
};

int run_simulate(const SimulateArgs& a) {
  using namespace toprank;
  ExperimentConfig cfg;
  cfg.measure = MeasureSpec::parse(a.measure);
  cfg.learner = parse_learner(a.learner);
  cfg.runs = a.runs;
  cfg.seed = a.seed;
  cfg.out_csv = a.out;
  cfg.out_svg = a.svg;
  cfg.adversary.m = a.m;
  cfg.adversary.horizon = a.horizon;
  cfg.adversary.noise_sd = a.noise_sd;
  cfg.adversary.probs = a.probs;
  if (a.adversary == "noisy-fixed") {
    cfg.adversary.kind = a.levels > 1 ? AdversaryKind::GradedNoisyFixed : AdversaryKind::NoisyFixed;
    cfg.adversary.levels = a.levels;
  } else if (a.adversary == "iid") {
    cfg.adversary.kind = AdversaryKind::IidBernoulli;
  } else if (a.adversary == "replay") {
    if (a.stream.empty()) throw InvalidArgument("--adversary replay needs --stream PATH");
    cfg.adversary.kind = AdversaryKind::Replay;
    cfg.adversary.replay_path = a.stream;
  } else {
    throw InvalidArgument("unknown adversary '" + a.adversary + "'");
  }

  const ExperimentResult res = run_experiment(cfg);
  const TraceRecord& last = res.average.back();
  std::cout << "measure " << cfg.measure.name() << ", learner " << learner_name(cfg.learner)
            << ", m " << res.stream.front().size() << ", T " << last.t << ", runs " << cfg.runs
            << "\n";
  std::cout << "final regret " << last.regret << ", time-normalized " << last.norm_regret << "\n";
  if (last.t >= 2 * a.burn_in) {
    try {
      const SlopeFit fit = fit_slope(res.average, a.burn_in, last.t);
      std::cout << "log-log slope on [" << fit.t_start << ", " << fit.t_end << "]: " << fit.slope
                << " (" << fit.points << " points)\n";
    } catch (const InvalidArgument& e) {
      std::cout << "slope fit skipped: " << e.what() << "\n";
    }
  }
  if (!a.out.empty()) std::cout << "trace written to " << a.out << "\n";
  return 0;
}

int run_analyze(const AnalyzeArgs& a) {
  using namespace toprank;
  const MeasureSpec measure = MeasureSpec::parse(a.measure);
  const GameMatrices game = build_game(measure, a.m);
  ObservabilityReport report;
  report.measure = measure;
  report.m = a.m;
  std::mt19937_64 rng(a.seed);

  std::optional<std::pair<std::size_t, std::size_t>> pair;
  if (!a.pair.empty()) {
    if (a.pair.size() != 2 || a.pair[0] < 1 || a.pair[1] < 1) {
      throw InvalidArgument("--pair takes two 1-based action indices");
    }
    pair = std::make_pair(static_cast<std::size_t>(a.pair[0] - 1),
                          static_cast<std::size_t>(a.pair[1] - 1));
  }

  if (a.check == "global") {
    if (pair) {
      const double res = global_pair_residual(game, pair->first, pair->second);
      report.pair_residuals.push_back({pair->first, pair->second, res});
      report.global_holds = classify_residual(res);
      if (!*report.global_holds) report.failing_pair = report.pair_residuals.back();
    } else {
      const GlobalResult g = check_global(game);
      report.global_holds = g.holds;
      report.pair_residuals = g.pairs;
      if (!g.holds) report.failing_pair = g.witness;
    }
  } else if (a.check == "local" || a.check == "neighbors") {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (pair) pairs.push_back(*pair);
    else pairs = neighbor_pairs(game);
    for (const auto& [i, j] : pairs) {
      if (a.check == "local") {
        report.local_results.push_back(check_local(game, i, j, a.samples, rng));
      } else {
        LocalResult l;
        l.i = i;
        l.j = j;
        l.neighborhood = neighborhood_set(game, i, j, a.samples, rng);
        l.residual = std::numeric_limits<double>::quiet_NaN();
        report.local_results.push_back(std::move(l));
      }
    }
  } else if (a.check == "pareto") {
    if (pair) {
      report.pareto.push_back(pareto_witness(game, pair->first));
    } else {
      for (std::size_t k = 0; k < game.num_actions(); ++k) {
        report.pareto.push_back(pareto_witness(game, k));
      }
    }
  } else {
    throw InvalidArgument("unknown check '" + a.check + "'");
  }

  write_report_text(std::cout, report);
  if (!a.out.empty()) {
    std::ofstream out(a.out);
    if (!out) throw InvalidArgument("cannot write '" + a.out + "'");
    write_report_csv(out, report);
  }
  return 0;
}

int run_besthindsight(const HindsightArgs& a) {
  using namespace toprank;
  const MeasureSpec measure = MeasureSpec::parse(a.measure);
  const RelevanceStream stream = read_stream_file(a.stream);
  const HindsightResult best = best_in_hindsight(measure, stream);
  std::cout.precision(17);
  std::cout << "ranking " << best.ranking.to_string() << "\n";
  std::cout << "value " << best.value << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online ranking with top-1 feedback: simulation and observability analysis"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a learner against a generated stream");
  simulate->add_option("--measure", sim.measure, "sumloss|pairwise|dcg|prec@K");
  simulate->add_option("--learner", sim.learner, "rtop1f|ftpl");
  simulate->add_option("--m", sim.m, "Number of objects")->check(CLI::PositiveNumber);
  simulate->add_option("--T", sim.horizon, "Horizon")->check(CLI::PositiveNumber);
  simulate->add_option("--runs", sim.runs, "Learner replicates")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Base seed");
  simulate->add_option("--adversary", sim.adversary, "noisy-fixed|iid|replay");
  simulate->add_option("--noise-sd", sim.noise_sd, "Gaussian noise sd for noisy-fixed");
  simulate->add_option("--levels", sim.levels, "Max relevance level (graded when > 1)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--probs", sim.probs, "Per-object relevance probabilities for iid");
  simulate->add_option("--stream", sim.stream, "Stream file for replay");
  simulate->add_option("--out", sim.out, "Averaged trace CSV");
  simulate->add_option("--svg", sim.svg, "Normalized-regret plot");
  simulate->add_option("--burn-in", sim.burn_in, "First round of the slope fit");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Observability checks on the loss/feedback game");
  analyze->add_option("--measure", an.measure, "Measure name")->required();
  analyze->add_option("--m", an.m, "Number of objects")->check(CLI::Range(1, 8));
  analyze->add_option("--check", an.check, "global|local|neighbors|pareto");
  analyze->add_option("--pair", an.pair, "Two 1-based action indices")->expected(2);
  analyze->add_option("--samples", an.samples, "Samples for the neighborhood approximation");
  analyze->add_option("--seed", an.seed, "Seed for the neighborhood approximation");
  analyze->add_option("--out", an.out, "Residual CSV");

  HindsightArgs bh;
  auto* hindsight = app.add_subcommand("besthindsight", "Best fixed ranking for a stream file");
  hindsight->add_option("--measure", bh.measure, "Measure name")->required();
  hindsight->add_option("--stream", bh.stream, "Stream file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*analyze) return run_analyze(an);
    if (*hindsight) return run_besthindsight(bh);
  } catch (const toprank::RefusedCombination& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const toprank::InconclusiveResidual& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
