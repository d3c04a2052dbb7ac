#include "toprank/measures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "toprank/errors.hpp"

namespace toprank {
namespace {

void require_same_size(const Permutation& sigma, const RelevanceVector& r) {
  if (sigma.size() != r.size()) {
    throw InvalidArgument("permutation has " + std::to_string(sigma.size()) +
                          " objects but relevance vector has " +
                          std::to_string(r.size()));
  }
}

void require_binary(const RelevanceVector& r, const char* what) {
  if (!r.is_binary()) {
    throw InvalidArgument(std::string(what) + " is defined for binary relevance only");
  }
}

double discount(int rank) { return 1.0 / std::log2(1.0 + rank); }

double gain(int level) { return std::ldexp(1.0, level) - 1.0; }

}  // namespace

MeasureSpec MeasureSpec::prec_at_k(int k) {
  if (k < 1) throw InvalidArgument("prec@k requires k >= 1");
  return MeasureSpec(MeasureKind::PrecAtK, k);
}

MeasureSpec MeasureSpec::parse(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "sumloss") return sum_loss();
  if (s == "pairwise" || s == "pairwiseloss" || s == "pl") return pairwise_loss();
  if (s == "dcg") return dcg();
  if (s == "ndcg") return ndcg();
  if (s == "map") return map();
  if (s == "auc") return auc();
  if (s.rfind("prec@", 0) == 0 && s.size() > 5) {
    const std::string digits = s.substr(5);
    if (std::all_of(digits.begin(), digits.end(),
                    [](unsigned char c) { return std::isdigit(c); })) {
      return prec_at_k(std::stoi(digits));
    }
  }
  throw InvalidArgument("unknown measure '" + std::string(name) + "'");
}

Polarity MeasureSpec::polarity() const noexcept {
  switch (kind_) {
    case MeasureKind::SumLoss:
    case MeasureKind::PairwiseLoss:
    case MeasureKind::AUC:
      return Polarity::Loss;
    default:
      return Polarity::Gain;
  }
}

bool MeasureSpec::supports_graded() const noexcept {
  return kind_ == MeasureKind::DCG || kind_ == MeasureKind::NDCG;
}

bool MeasureSpec::is_rank_linear() const noexcept {
  return kind_ == MeasureKind::SumLoss || kind_ == MeasureKind::DCG ||
         kind_ == MeasureKind::PrecAtK;
}

bool MeasureSpec::admits_sublinear_regret() const noexcept {
  return is_rank_linear() || kind_ == MeasureKind::PairwiseLoss;
}

double MeasureSpec::f_component(int rank) const {
  switch (kind_) {
    case MeasureKind::SumLoss:
    case MeasureKind::PairwiseLoss:
      return rank;
    case MeasureKind::DCG:
    case MeasureKind::NDCG:
      return discount(rank);
    case MeasureKind::PrecAtK:
      return rank <= k_ ? 1.0 : 0.0;
    default:
      throw InvalidArgument(name() + " has no per-rank component");
  }
}

double MeasureSpec::g_component(int level) const {
  if (level < 0) throw InvalidArgument("negative relevance level");
  switch (kind_) {
    case MeasureKind::DCG:
    case MeasureKind::NDCG:
      return gain(level);
    default:
      return level;
  }
}

double MeasureSpec::evaluate(const Permutation& sigma, const RelevanceVector& r) const {
  switch (kind_) {
    case MeasureKind::SumLoss: return toprank::sum_loss(sigma, r);
    case MeasureKind::PairwiseLoss: return toprank::pairwise_loss(sigma, r);
    case MeasureKind::DCG: return toprank::dcg(sigma, r);
    case MeasureKind::PrecAtK: return toprank::prec_at_k(sigma, r, k_);
    case MeasureKind::NDCG: return toprank::ndcg(sigma, r);
    case MeasureKind::MAP: return mean_average_precision(sigma, r);
    case MeasureKind::AUC: return toprank::auc(sigma, r);
  }
  return 0.0;
}

std::string MeasureSpec::name() const {
  switch (kind_) {
    case MeasureKind::SumLoss: return "sumloss";
    case MeasureKind::PairwiseLoss: return "pairwise";
    case MeasureKind::DCG: return "dcg";
    case MeasureKind::PrecAtK: return "prec@" + std::to_string(k_);
    case MeasureKind::NDCG: return "ndcg";
    case MeasureKind::MAP: return "map";
    case MeasureKind::AUC: return "auc";
  }
  return "?";
}

double sum_loss(const Permutation& sigma, const RelevanceVector& r) {
  require_same_size(sigma, r);
  require_binary(r, "SumLoss");
  double total = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) total += sigma.rank(i) * r[i];
  return total;
}

int pairwise_loss(const Permutation& sigma, const RelevanceVector& r) {
  require_same_size(sigma, r);
  int count = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (sigma.rank(i) < sigma.rank(j) && r[i] < r[j]) ++count;
    }
  }
  return count;
}

double dcg(const Permutation& sigma, const RelevanceVector& r) {
  require_same_size(sigma, r);
  // Summed in rank order so the ideal ordering reproduces ndcg_normalizer bit for bit.
  double total = 0.0;
  for (int pos = 1; pos <= static_cast<int>(r.size()); ++pos) {
    const int level = r[sigma.object_at(pos)];
    if (level != 0) total += gain(level) * discount(pos);
  }
  return total;
}

int prec_at_k(const Permutation& sigma, const RelevanceVector& r, int k) {
  require_same_size(sigma, r);
  require_binary(r, "Prec@k");
  if (k < 1 || k > static_cast<int>(r.size())) {
    throw InvalidArgument("prec@k: k=" + std::to_string(k) + " outside [1, " +
                          std::to_string(r.size()) + "]");
  }
  int count = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (sigma.rank(i) <= k) count += r[i];
  }
  return count;
}

double ndcg_normalizer(const RelevanceVector& r) {
  std::vector<int> sorted = r.levels();
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double z = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    if (sorted[j] != 0) z += gain(sorted[j]) * discount(static_cast<int>(j) + 1);
  }
  return z > 0.0 ? z : 1.0;
}

double ndcg(const Permutation& sigma, const RelevanceVector& r) {
  require_same_size(sigma, r);
  if (r.count_nonzero() == 0) return 1.0;
  return dcg(sigma, r) / ndcg_normalizer(r);
}

double mean_average_precision(const Permutation& sigma, const RelevanceVector& r) {
  require_same_size(sigma, r);
  require_binary(r, "MAP");
  const int relevant = r.count_nonzero();
  if (relevant == 0) return 1.0;
  double total = 0.0;
  int seen = 0;
  for (int pos = 1; pos <= static_cast<int>(r.size()); ++pos) {
    if (r[sigma.object_at(pos)] == 1) {
      ++seen;
      total += static_cast<double>(seen) / pos;
    }
  }
  return total / relevant;
}

int auc_normalizer(const RelevanceVector& r) {
  require_binary(r, "AUC");
  const int relevant = r.count_nonzero();
  return relevant * (static_cast<int>(r.size()) - relevant);
}

double auc(const Permutation& sigma, const RelevanceVector& r) {
  require_same_size(sigma, r);
  const int n = auc_normalizer(r);
  if (n == 0) return 0.0;
  return static_cast<double>(pairwise_loss(sigma, r)) / n;
}

Permutation sort_oracle(std::span<const double> y) {
  std::vector<int> order(y.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return y[a] > y[b]; });
  return Permutation::from_order(order);
}

std::vector<double> transformed_relevance(const MeasureSpec& measure,
                                          const RelevanceVector& r) {
  std::vector<double> out(r.size());
  if (measure.kind() == MeasureKind::NDCG) {
    const double z = ndcg_normalizer(r);
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = gain(r[i]) / z;
    return out;
  }
  if (!measure.admits_sublinear_regret()) {
    throw InvalidArgument(measure.name() + " has no per-object relevance transform");
  }
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = measure.g_component(r[i]);
  return out;
}

double rank_weighted_sum(const MeasureSpec& measure, const Permutation& sigma,
                         std::span<const double> y) {
  if (sigma.size() != y.size()) throw InvalidArgument("dimension mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    total += measure.f_component(sigma.rank(i)) * y[i];
  }
  return total;
}

}  // namespace toprank
