#include "toprank/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "toprank/errors.hpp"

namespace toprank {
namespace {

// Keeps the stream's random sequence disjoint from learners seeded with
// seed + replicate.
std::mt19937_64 adversary_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    0xad5e7u};
  return std::mt19937_64(seq);
}

int threshold_level(double x, int levels) {
  const double level = std::ceil(x - 0.5);
  return static_cast<int>(std::clamp(level, 0.0, static_cast<double>(levels)));
}

RelevanceStream noisy_fixed(const AdversaryConfig& c, int levels) {
  if (c.noise_sd < 0) throw InvalidArgument("noise sd must be non-negative");
  const std::vector<int> base = noisy_fixed_base(c.m, levels);
  auto rng = adversary_rng(c.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  RelevanceStream out;
  out.reserve(c.horizon);
  for (long t = 0; t < c.horizon; ++t) {
    std::vector<int> r(c.m);
    for (int i = 0; i < c.m; ++i) r[i] = threshold_level(base[i] + c.noise_sd * noise(rng), levels);
    out.emplace_back(std::move(r), levels);
  }
  return out;
}

RelevanceStream iid_bernoulli(const AdversaryConfig& c) {
  std::vector<double> probs = c.probs;
  if (probs.empty()) {
    for (int i = 1; i <= c.m; ++i) probs.push_back(static_cast<double>(c.m - i + 1) / (c.m + 1));
  }
  if (static_cast<int>(probs.size()) != c.m) throw InvalidArgument("need one probability per object");
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("probabilities must lie in [0, 1]");
  }
  auto rng = adversary_rng(c.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RelevanceStream out;
  out.reserve(c.horizon);
  for (long t = 0; t < c.horizon; ++t) {
    std::vector<int> r(c.m);
    for (int i = 0; i < c.m; ++i) r[i] = unit(rng) < probs[i] ? 1 : 0;
    out.emplace_back(std::move(r), 1);
  }
  return out;
}

}  // namespace

std::vector<int> noisy_fixed_base(int m, int levels) {
  if (m < 1) throw InvalidArgument("m must be positive");
  if (levels < 1) throw InvalidArgument("levels must be >= 1");
  const int half = (m + 1) / 2;
  std::vector<int> base(m, 0);
  for (int i = 1; i <= half; ++i) {
    base[i - 1] = static_cast<int>(std::ceil(static_cast<double>(levels) * (half - i + 1) / half));
  }
  return base;
}

RelevanceStream adversary_generate(const AdversaryConfig& config) {
  if (config.kind == AdversaryKind::Replay) {
    RelevanceStream s = read_stream_file(config.replay_path);
    if (config.m > 0 && !s.empty() && static_cast<int>(s.front().size()) != config.m) {
      throw InvalidArgument("replay stream has m=" + std::to_string(s.front().size()) +
                            ", expected " + std::to_string(config.m));
    }
    if (config.horizon > 0) {
      if (config.horizon > static_cast<long>(s.size())) {
        throw InvalidArgument("replay stream holds fewer than T rounds");
      }
      s.resize(config.horizon);
    }
    return s;
  }
  if (config.m < 1) throw InvalidArgument("adversary: m must be positive");
  if (config.horizon < 0) throw InvalidArgument("adversary: T must be non-negative");
  switch (config.kind) {
    case AdversaryKind::NoisyFixed:
      return noisy_fixed(config, 1);
    case AdversaryKind::GradedNoisyFixed:
      return noisy_fixed(config, config.levels);
    case AdversaryKind::IidBernoulli:
      return iid_bernoulli(config);
    default:
      break;
  }
  throw InvalidArgument("unknown adversary kind");
}

void write_stream(std::ostream& os, const RelevanceStream& stream, int m) {
  int n = 1;
  for (const auto& r : stream) n = std::max(n, r.max_level());
  if (!stream.empty()) m = static_cast<int>(stream.front().size());
  os << "m=" << m << " n=" << n << " T=" << stream.size() << '\n';
  for (const auto& r : stream) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << r[i];
    os << '\n';
  }
}

RelevanceStream read_stream(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw InvalidArgument("stream file: empty");
  int m = 0;
  int n = 0;
  long horizon = -1;
  std::istringstream hs(header);
  std::string field;
  while (hs >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw InvalidArgument("stream header: bad field '" + field + "'");
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    try {
      if (key == "m") m = std::stoi(value);
      else if (key == "n") n = std::stoi(value);
      else if (key == "T") horizon = std::stol(value);
      else throw InvalidArgument("stream header: unknown key '" + key + "'");
    } catch (const std::logic_error&) {
      throw InvalidArgument("stream header: bad value in '" + field + "'");
    }
  }
  if (m < 1 || n < 1 || horizon < 0) {
    throw InvalidArgument("stream header must read 'm=<int> n=<int> T=<int>'");
  }
  RelevanceStream out;
  out.reserve(horizon);
  std::string line;
  while (static_cast<long>(out.size()) < horizon && std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::vector<int> levels;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::logic_error&) {
        used = 0;
      }
      if (used != tok.size()) throw InvalidArgument("stream file: non-integer token '" + tok + "'");
      levels.push_back(v);
    }
    if (static_cast<int>(levels.size()) != m) {
      throw InvalidArgument("stream file: round " + std::to_string(out.size() + 1) + " has " +
                            std::to_string(levels.size()) + " entries, expected " +
                            std::to_string(m));
    }
    out.emplace_back(std::move(levels), n);
  }
  if (static_cast<long>(out.size()) != horizon) {
    throw InvalidArgument("stream file: expected " + std::to_string(horizon) + " rounds, found " +
                          std::to_string(out.size()));
  }
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw InvalidArgument("stream file: more than T=" + std::to_string(horizon) + " rounds");
    }
  }
  return out;
}

RelevanceStream read_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open stream file '" + path + "'");
  return read_stream(in);
}

}  // namespace toprank
