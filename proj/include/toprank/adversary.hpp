#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "toprank/trace.hpp"

namespace toprank {

enum class AdversaryKind { NoisyFixed, IidBernoulli, Replay, GradedNoisyFixed };

struct AdversaryConfig {
  AdversaryKind kind = AdversaryKind::NoisyFixed;
  int m = 0;
  long horizon = 0;
  std::uint64_t seed = 0;
  double noise_sd = 0.2;       // NoisyFixed, GradedNoisyFixed
  int levels = 1;              // GradedNoisyFixed: max level n
  std::vector<double> probs;   // IidBernoulli; empty means (m-i+1)/(m+1) for object i
  std::string replay_path;     // Replay
};

/// Noise-free relevance of the noisy-fixed adversaries. The first ceil(m/2)
/// objects are relevant; with n > 1 levels they descend as
/// ceil(n (h - i + 1) / h) for i = 1..h, h = ceil(m/2), so n = 1 gives the
/// binary half-relevant vector.
std::vector<int> noisy_fixed_base(int m, int levels);

/// Materializes the whole stream up front, so it cannot react to a learner.
///
/// Noisy-fixed: level(i) = number of thresholds 0.5, 1.5, ... strictly
/// exceeded by base(i) + N(0, sd^2), clipped to {0..n}; for binary relevance
/// r_t(i) = 1 iff base(i) + noise > 0.5. Draws are independent per (t, i).
RelevanceStream adversary_generate(const AdversaryConfig& config);

/// Text format: header `m=<int> n=<int> T=<int>`, then T lines of m
/// space-separated integer levels.
void write_stream(std::ostream& os, const RelevanceStream& stream, int m = 0);
RelevanceStream read_stream(std::istream& is);
RelevanceStream read_stream_file(const std::string& path);

}  // namespace toprank
