#include "toprank/permutation.hpp"

#include <algorithm>
#include <sstream>

#include "toprank/errors.hpp"

namespace toprank {

Permutation::Permutation(std::vector<int> ranks) : ranks_(std::move(ranks)) {
  const int m = static_cast<int>(ranks_.size());
  inverse_.assign(ranks_.size(), -1);
  for (int i = 0; i < m; ++i) {
    const int r = ranks_[i];
    if (r < 1 || r > m || inverse_[r - 1] != -1) {
      throw InvalidArgument("ranks must be a bijection onto {1..m}");
    }
    inverse_[r - 1] = i;
  }
}

Permutation Permutation::identity(std::size_t m) {
  std::vector<int> ranks(m);
  for (std::size_t i = 0; i < m; ++i) ranks[i] = static_cast<int>(i) + 1;
  return Permutation(std::move(ranks));
}

Permutation Permutation::from_order(std::span<const int> objects) {
  const int m = static_cast<int>(objects.size());
  std::vector<int> ranks(objects.size(), 0);
  for (int j = 0; j < m; ++j) {
    const int obj = objects[j];
    if (obj < 0 || obj >= m) throw InvalidArgument("object index out of range");
    ranks[obj] = j + 1;
  }
  return Permutation(std::move(ranks));
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  const bool spaced = ranks_.size() > 9;
  for (std::size_t i = 0; i < ranks_.size(); ++i) {
    if (spaced && i > 0) os << ' ';
    os << ranks_[i];
  }
  return os.str();
}

RelevanceVector::RelevanceVector(std::vector<int> levels, int max_level)
    : levels_(std::move(levels)), max_level_(max_level) {
  if (max_level_ < 1) throw InvalidArgument("max relevance level must be >= 1");
  for (int x : levels_) {
    if (x < 0 || x > max_level_) {
      throw InvalidArgument("relevance level " + std::to_string(x) +
                            " outside {0.." + std::to_string(max_level_) + "}");
    }
  }
}

bool RelevanceVector::is_binary() const {
  return std::all_of(levels_.begin(), levels_.end(),
                     [](int x) { return x == 0 || x == 1; });
}

int RelevanceVector::count_nonzero() const {
  return static_cast<int>(
      std::count_if(levels_.begin(), levels_.end(), [](int x) { return x != 0; }));
}

std::string RelevanceVector::to_string() const {
  std::ostringstream os;
  const bool spaced = max_level_ > 9;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (spaced && i > 0) os << ' ';
    os << levels_[i];
  }
  return os.str();
}

}  // namespace toprank
