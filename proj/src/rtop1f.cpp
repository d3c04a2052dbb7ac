#include "toprank/rtop1f.hpp"

#include <cmath>

#include "toprank/errors.hpp"

namespace toprank {

BlockPlan plan_blocks(long horizon, int m, const MeasureSpec& /*measure*/) {
  if (m < 1) throw InvalidArgument("plan_blocks: m must be positive");
  if (horizon < 1) throw InvalidArgument("plan_blocks: T must be positive");
  if (horizon < m) {
    throw InvalidArgument("plan_blocks: T=" + std::to_string(horizon) + " < m=" +
                          std::to_string(m) + " leaves no room for m exploration rounds");
  }
  const double ideal = std::cbrt(1.0 / m) * std::pow(static_cast<double>(horizon), 2.0 / 3.0);
  long blocks = std::max(1L, std::lround(ideal));
  if (horizon / blocks < m) blocks = horizon / m;
  BlockPlan plan;
  plan.horizon = horizon;
  plan.num_blocks = blocks;
  plan.block_len = horizon / blocks;
  return plan;
}

std::vector<long> schedule_block(const BlockPlan& plan, long block, int m,
                                 std::mt19937_64& rng) {
  if (block < 0 || block >= plan.num_blocks) throw InvalidArgument("block index out of range");
  const long first = plan.block_first(block);
  const long size = plan.block_size(block);
  if (size < m) throw InvalidArgument("block shorter than m");
  std::uniform_int_distribution<long> pick(0, size - 1);
  std::vector<long> rounds;
  rounds.reserve(m);
  while (static_cast<int>(rounds.size()) < m) {
    const long t = first + pick(rng);
    if (std::find(rounds.begin(), rounds.end(), t) == rounds.end()) rounds.push_back(t);
  }
  return rounds;
}

Permutation exploration_permutation(int m, int probe) {
  if (probe < 0 || probe >= m) throw InvalidArgument("probe object out of range");
  std::vector<int> order;
  order.reserve(m);
  order.push_back(probe);
  for (int obj = 0; obj < m; ++obj) {
    if (obj != probe) order.push_back(obj);
  }
  return Permutation::from_order(order);
}

Rtop1f::Rtop1f(const MeasureSpec& measure, int m, long horizon, int max_level,
               std::uint64_t seed)
    : measure_(measure),
      m_(m),
      max_level_(max_level),
      plan_((require_learnable(measure), plan_blocks(horizon, m, measure))),
      scores_(m),
      rng_(seed) {
  if (max_level < 1) throw InvalidArgument("max relevance level must be >= 1");
  if (max_level > 1 && !measure.supports_graded()) {
    throw InvalidArgument(measure.name() + " requires binary relevance");
  }
  params_ = params_for(measure, m, max_level, static_cast<double>(plan_.num_blocks));
}

void Rtop1f::open_block(long block) {
  exploration_ = schedule_block(plan_, block, m_, rng_);
  block_estimate_.assign(m_, 0.0);
  answered_.assign(m_, false);
  open_block_ = block;
}

Rtop1f::Decision Rtop1f::step(long t) {
  if (t != next_round_) {
    throw ContractViolation("round " + std::to_string(t) + " requested, expected " +
                            std::to_string(next_round_));
  }
  if (t > plan_.horizon) throw ContractViolation("round beyond the horizon");
  if (outstanding_probe_) {
    throw ContractViolation("feedback for probe of object " +
                            std::to_string(*outstanding_probe_ + 1) + " not absorbed");
  }
  const long block = plan_.block_of(t);
  if (block != open_block_) {
    if (open_block_ >= 0) end_block();
    open_block(block);
  }
  ++next_round_;

  for (int j = 0; j < m_; ++j) {
    if (exploration_[j] == t) {
      outstanding_probe_ = j;
      ++exploration_count_;
      return {exploration_permutation(m_, j), j};
    }
  }
  return {ftpl_draw(scores_, params_, rng_), std::nullopt};
}

void Rtop1f::absorb_feedback(int object, int level) {
  if (!outstanding_probe_ || *outstanding_probe_ != object) {
    if (object >= 0 && object < m_ && open_block_ >= 0 && answered_[object]) {
      throw ContractViolation("duplicate feedback for object " + std::to_string(object + 1));
    }
    throw ContractViolation("feedback for object " + std::to_string(object + 1) +
                            " which is not being probed");
  }
  if (level < 0 || level > max_level_) {
    throw InvalidArgument("feedback level " + std::to_string(level) + " outside {0.." +
                          std::to_string(max_level_) + "}");
  }
  block_estimate_[object] = measure_.g_component(level);
  answered_[object] = true;
  outstanding_probe_.reset();
}

void Rtop1f::observe(int top_level) {
  if (outstanding_probe_) absorb_feedback(*outstanding_probe_, top_level);
}

void Rtop1f::end_block() {
  if (open_block_ < 0) throw ContractViolation("no open block");
  for (int j = 0; j < m_; ++j) {
    if (!answered_[j]) {
      throw ContractViolation("block " + std::to_string(open_block_ + 1) +
                              " incomplete: object " + std::to_string(j + 1) + " not probed yet");
    }
  }
  scores_.absorb(block_estimate_);
  block_estimate_.assign(m_, 0.0);
  answered_.assign(m_, false);
  open_block_ = -1;
  ++blocks_closed_;
}

namespace {

template <typename OnRound>
void drive_episode(const MeasureSpec& measure, const RelevanceStream& stream,
                   std::uint64_t seed, OnRound&& on_round) {
  require_learnable(measure);
  if (stream.empty()) return;
  const int m = static_cast<int>(stream.front().size());
  int max_level = 1;
  for (const auto& r : stream) max_level = std::max(max_level, r.max_level());
  Rtop1f learner(measure, m, static_cast<long>(stream.size()), max_level, seed);
  for (long t = 1; t <= static_cast<long>(stream.size()); ++t) {
    const RelevanceVector& r = stream[t - 1];
    Rtop1f::Decision d = learner.step(t);
    on_round(d.ranking, r);
    learner.observe(r[d.ranking.top_object()]);
  }
}

}  // namespace

RegretTrace run_episode(const MeasureSpec& measure, const RelevanceStream& stream,
                        std::uint64_t seed) {
  require_learnable(measure);
  RegretTrace empty;
  empty.measure = measure;
  if (stream.empty()) return empty;
  RegretTracker tracker(measure, static_cast<int>(stream.front().size()));
  drive_episode(measure, stream, seed, [&](const Permutation& sigma, const RelevanceVector& r) {
    tracker.record(measure.evaluate(sigma, r), r);
  });
  return tracker.take();
}

std::vector<Permutation> episode_rankings(const MeasureSpec& measure,
                                          const RelevanceStream& stream, std::uint64_t seed) {
  std::vector<Permutation> out;
  drive_episode(measure, stream, seed, [&](const Permutation& sigma, const RelevanceVector&) {
    out.push_back(sigma);
  });
  return out;
}

}  // namespace toprank
