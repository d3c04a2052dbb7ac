#include "toprank/hindsight.hpp"

#include "toprank/errors.hpp"
#include "toprank/game_matrices.hpp"

namespace toprank {
namespace {

int stream_width(const RelevanceStream& stream, int m) {
  if (stream.empty()) return m;
  const int width = static_cast<int>(stream.front().size());
  for (const auto& r : stream) {
    if (static_cast<int>(r.size()) != width) throw InvalidArgument("stream has ragged rows");
  }
  return width;
}

double total_value(const MeasureSpec& measure, const Permutation& sigma,
                   const RelevanceStream& stream) {
  double total = 0.0;
  for (const auto& r : stream) total += measure.evaluate(sigma, r);
  return total;
}

}  // namespace

HindsightResult best_in_hindsight(const MeasureSpec& measure, const RelevanceStream& stream,
                                  int m) {
  const int width = stream_width(stream, m);
  if (stream.empty()) return {Permutation::identity(width), 0.0};
  if (measure.kind() == MeasureKind::MAP || measure.kind() == MeasureKind::AUC) {
    return brute_force_best(measure, stream, width);
  }
  std::vector<double> aggregate(width, 0.0);
  for (const auto& r : stream) {
    const std::vector<double> g = transformed_relevance(measure, r);
    for (int i = 0; i < width; ++i) aggregate[i] += g[i];
  }
  Permutation best = sort_oracle(aggregate);
  const double value = total_value(measure, best, stream);
  return {std::move(best), value};
}

HindsightResult brute_force_best(const MeasureSpec& measure, const RelevanceStream& stream,
                                 int m) {
  const int width = stream_width(stream, m);
  if (width > kMaxGameObjects) {
    throw InvalidArgument("brute-force search needs m <= 8, got " + std::to_string(width));
  }
  if (width < 1) throw InvalidArgument("brute-force search needs m >= 1");
  const bool loss = measure.polarity() == Polarity::Loss;
  HindsightResult best{Permutation::identity(width), 0.0};
  bool first = true;
  for (Permutation& sigma : enumerate_permutations(width)) {
    const double v = total_value(measure, sigma, stream);
    if (first || (loss ? v < best.value : v > best.value)) {
      best = {std::move(sigma), v};
      first = false;
    }
  }
  return best;
}

}  // namespace toprank
