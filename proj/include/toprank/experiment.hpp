#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "toprank/adversary.hpp"
#include "toprank/measures.hpp"
#include "toprank/trace.hpp"

namespace toprank {

enum class LearnerKind { Rtop1f, FtplFull };

LearnerKind parse_learner(const std::string& name);
std::string learner_name(LearnerKind kind);

struct ExperimentConfig {
  MeasureSpec measure = MeasureSpec::dcg();
  LearnerKind learner = LearnerKind::Rtop1f;
  AdversaryConfig adversary;
  int runs = 1;
  std::uint64_t seed = 1;
  std::string out_csv;  // written when non-empty
  std::string out_svg;  // written when non-empty
  int threads = 0;      // 0: hardware concurrency
};

struct ExperimentResult {
  RelevanceStream stream;
  std::vector<RegretTrace> replicates;
  RegretTrace average;
};

/// Generates the stream once from `seed`, runs `runs` replicates of the
/// learner with seeds seed + 0, seed + 1, ..., and averages their traces
/// pointwise. Replicates run on separate threads.
/// Throws RefusedCombination for NDCG, MAP and AUC.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// One learner replicate on a fixed stream.
RegretTrace run_learner(LearnerKind learner, const MeasureSpec& measure,
                        const RelevanceStream& stream, std::uint64_t seed);

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct SvgOptions {
  std::string title;
  std::string x_label = "t";
  std::string y_label = "regret / t";
  bool log_x = true;
  bool log_y = true;
  int width = 720;
  int height = 440;
};

/// Minimal line chart; points with non-positive coordinates are dropped on
/// log axes.
void write_svg(std::ostream& os, const std::vector<SvgSeries>& series, const SvgOptions& options);

SvgSeries normalized_regret_series(const RegretTrace& trace, const std::string& label);

}  // namespace toprank
