#pragma once

#include "toprank/measures.hpp"
#include "toprank/trace.hpp"

namespace toprank {

struct HindsightResult {
  Permutation ranking;
  double value = 0.0;  // sum_t measure(ranking, r_t)
};

/// Best fixed ranking for the whole stream. Rank-linear measures,
/// PairwiseLoss and NDCG sort the aggregated transformed relevance; MAP and
/// AUC search all m! rankings (m <= 8). `m` is only consulted when the
/// stream is empty, which yields the identity ranking with value 0.
HindsightResult best_in_hindsight(const MeasureSpec& measure, const RelevanceStream& stream,
                                  int m = 0);

/// Exhaustive search over all m! rankings (m <= 8); first best in
/// lexicographic order wins ties.
HindsightResult brute_force_best(const MeasureSpec& measure, const RelevanceStream& stream,
                                 int m = 0);

}  // namespace toprank
