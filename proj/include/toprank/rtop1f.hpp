#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "toprank/ftpl.hpp"
#include "toprank/measures.hpp"
#include "toprank/trace.hpp"

namespace toprank {

/// Partition of rounds 1..T into K blocks of `block_len` rounds; the
/// T - K * block_len leftover rounds extend the final block.
struct BlockPlan {
  long horizon = 0;
  long num_blocks = 0;
  long block_len = 0;

  long block_first(long block) const { return block * block_len + 1; }
  long block_last(long block) const {
    return block + 1 == num_blocks ? horizon : (block + 1) * block_len;
  }
  long block_size(long block) const { return block_last(block) - block_first(block) + 1; }
  long block_of(long t) const { return std::min((t - 1) / block_len, num_blocks - 1); }
};

/// K = max(1, round(m^(-1/3) T^(2/3))), lowered to floor(T/m) when blocks
/// would be shorter than m. Throws InvalidArgument when T < m.
BlockPlan plan_blocks(long horizon, int m, const MeasureSpec& measure);

/// Exploration rounds of one block: element j is the round that probes
/// object j. Rounds are distinct and drawn uniformly without replacement.
std::vector<long> schedule_block(const BlockPlan& plan, long block, int m,
                                 std::mt19937_64& rng);

/// Object `probe` on top, the others in ascending index order below it.
Permutation exploration_permutation(int m, int probe);

/// Blocked explore/exploit learner for top-1 feedback.
///
/// Each block reserves m uniformly placed rounds; the round assigned to
/// object j puts j on top and records the observed relevance of j. The
/// probed values form an unbiased estimate of the block's average relevance
/// and are added to the running scores when the block closes. All other
/// rounds play a fresh perturbed-leader draw on the scores as of the start of
/// the block.
class Rtop1f {
 public:
  struct Decision {
    Permutation ranking;
    std::optional<int> probe;
  };

  /// `max_level` is the largest relevance level the feedback can take.
  Rtop1f(const MeasureSpec& measure, int m, long horizon, int max_level, std::uint64_t seed);

  /// Round t must be exactly one past the previous call. Opens a new block
  /// (and closes the previous one) when t crosses a block boundary.
  Decision step(long t);

  /// Stores g(level) as the estimate for `object`. Only valid for the probe
  /// returned by the latest step.
  void absorb_feedback(int object, int level);

  /// Convenience for drivers: forwards the top object's level to
  /// absorb_feedback when the latest step was an exploration round.
  void observe(int top_level);

  /// Adds the block estimate to the scores. Throws ContractViolation when a
  /// probe of this block is unanswered.
  void end_block();

  const BlockPlan& plan() const noexcept { return plan_; }
  const FtplParams& params() const noexcept { return params_; }
  std::span<const double> scores() const noexcept { return scores_.accumulated(); }
  std::span<const long> exploration_rounds() const noexcept { return exploration_; }
  long blocks_closed() const noexcept { return blocks_closed_; }
  long exploration_count() const noexcept { return exploration_count_; }

 private:
  void open_block(long block);

  MeasureSpec measure_;
  int m_;
  int max_level_;
  BlockPlan plan_;
  FtplParams params_;
  ScoreState scores_;
  std::mt19937_64 rng_;

  long next_round_ = 1;
  long open_block_ = -1;
  long blocks_closed_ = 0;
  long exploration_count_ = 0;
  std::vector<long> exploration_;
  std::vector<double> block_estimate_;
  std::vector<bool> answered_;
  std::optional<int> outstanding_probe_;
};

/// Runs the learner over the whole stream, handing it only r_t of the top
/// ranked object each round. Exploration rounds count toward regret.
/// Throws RefusedCombination for NDCG, MAP and AUC.
RegretTrace run_episode(const MeasureSpec& measure, const RelevanceStream& stream,
                        std::uint64_t seed);

/// The rankings played in run_episode, for inspection.
std::vector<Permutation> episode_rankings(const MeasureSpec& measure,
                                          const RelevanceStream& stream, std::uint64_t seed);

}  // namespace toprank
