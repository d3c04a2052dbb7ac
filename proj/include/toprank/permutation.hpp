#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace toprank {

/// A ranking of m objects. `rank(i)` is the 1-based position of object i
/// (objects are 0-based indices in code, 1-based in text output).
class Permutation {
 public:
  Permutation() = default;

  /// Builds from 1-based ranks; throws InvalidArgument unless `ranks` is a
  /// bijection onto {1..m}.
  explicit Permutation(std::vector<int> ranks);

  static Permutation identity(std::size_t m);

  /// Builds from the object order: `objects[j]` is the (0-based) object at
  /// rank j+1.
  static Permutation from_order(std::span<const int> objects);

  std::size_t size() const noexcept { return ranks_.size(); }
  int rank(std::size_t object) const { return ranks_.at(object); }
  const std::vector<int>& ranks() const noexcept { return ranks_; }

  /// 0-based object placed at 1-based position `position`.
  int object_at(int position) const { return inverse_.at(position - 1); }
  int top_object() const { return inverse_.front(); }

  /// inverse()[j] is the 0-based object at rank j+1.
  const std::vector<int>& inverse() const noexcept { return inverse_; }

  /// Ranks joined without separators ("312"), or space-separated when m > 9.
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> ranks_;
  std::vector<int> inverse_;
};

/// Per-object relevance levels in {0..max_level}.
class RelevanceVector {
 public:
  RelevanceVector() = default;
  RelevanceVector(std::vector<int> levels, int max_level = 1);

  std::size_t size() const noexcept { return levels_.size(); }
  int operator[](std::size_t i) const { return levels_[i]; }
  int max_level() const noexcept { return max_level_; }
  bool is_binary() const;
  const std::vector<int>& levels() const noexcept { return levels_; }

  int count_nonzero() const;
  std::string to_string() const;

  friend bool operator==(const RelevanceVector&, const RelevanceVector&) = default;

 private:
  std::vector<int> levels_;
  int max_level_ = 1;
};

}  // namespace toprank
