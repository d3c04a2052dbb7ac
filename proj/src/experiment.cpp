#include "toprank/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <iterator>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <thread>

#include "toprank/errors.hpp"
#include "toprank/ftpl.hpp"
#include "toprank/rtop1f.hpp"

namespace toprank {

LearnerKind parse_learner(const std::string& name) {
  if (name == "rtop1f") return LearnerKind::Rtop1f;
  if (name == "ftpl" || name == "ftpl_full") return LearnerKind::FtplFull;
  throw InvalidArgument("unknown learner '" + name + "' (expected rtop1f or ftpl)");
}

std::string learner_name(LearnerKind kind) {
  return kind == LearnerKind::Rtop1f ? "rtop1f" : "ftpl";
}

RegretTrace run_learner(LearnerKind learner, const MeasureSpec& measure,
                        const RelevanceStream& stream, std::uint64_t seed) {
  return learner == LearnerKind::Rtop1f ? run_episode(measure, stream, seed)
                                        : full_info_run(measure, stream, seed);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  require_learnable(config.measure);
  if (config.runs < 1) throw InvalidArgument("runs must be >= 1");

  ExperimentResult result;
  AdversaryConfig adv = config.adversary;
  adv.seed = config.seed;
  result.stream = adversary_generate(adv);
  if (result.stream.empty()) throw InvalidArgument("experiment needs T >= 1");
  const int max_level = result.stream.front().max_level();
  if (max_level > 1 && !config.measure.supports_graded()) {
    throw InvalidArgument(config.measure.name() + " requires binary relevance");
  }

  result.replicates.resize(config.runs);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<unsigned>(
      config.threads > 0 ? static_cast<unsigned>(config.threads) : hw, config.runs);
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(config.runs);
  auto work = [&] {
    for (int r = next++; r < config.runs; r = next++) {
      try {
        result.replicates[r] = run_learner(config.learner, config.measure, result.stream,
                                           config.seed + static_cast<std::uint64_t>(r));
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  result.average = average_traces(result.replicates);

  if (!config.out_csv.empty()) {
    std::ofstream out(config.out_csv);
    if (!out) throw InvalidArgument("cannot write '" + config.out_csv + "'");
    write_trace_csv(out, result.average);
  }
  if (!config.out_svg.empty()) {
    std::ofstream out(config.out_svg);
    if (!out) throw InvalidArgument("cannot write '" + config.out_svg + "'");
    SvgOptions opts;
    opts.title = config.measure.name() + ", " + learner_name(config.learner) + ", m=" +
                 std::to_string(result.stream.front().size()) + ", " +
                 std::to_string(config.runs) + " runs";
    write_svg(out, {normalized_regret_series(result.average, learner_name(config.learner))},
              opts);
  }
  return result;
}

SvgSeries normalized_regret_series(const RegretTrace& trace, const std::string& label) {
  SvgSeries s;
  s.label = label;
  s.x.reserve(trace.records.size());
  s.y.reserve(trace.records.size());
  for (const auto& rec : trace.records) {
    s.x.push_back(static_cast<double>(rec.t));
    s.y.push_back(rec.norm_regret);
  }
  return s;
}

namespace {

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  double map(double v) const { return log ? std::log10(v) : v; }
  double frac(double v) const { return hi > lo ? (map(v) - lo) / (hi - lo) : 0.5; }
};

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_svg(std::ostream& os, const std::vector<SvgSeries>& series, const SvgOptions& options) {
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"};
  Axis ax{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
          options.log_x};
  Axis ay{ax.lo, ax.hi, options.log_y};
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!options.log_x || x > 0) &&
           (!options.log_y || y > 0);
  };
  for (const auto& s : series) {
    for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
      if (!usable(s.x[k], s.y[k])) continue;
      ax.lo = std::min(ax.lo, ax.map(s.x[k]));
      ax.hi = std::max(ax.hi, ax.map(s.x[k]));
      ay.lo = std::min(ay.lo, ay.map(s.y[k]));
      ay.hi = std::max(ay.hi, ay.map(s.y[k]));
    }
  }
  if (!std::isfinite(ax.lo)) ax = {0.0, 1.0, options.log_x};
  if (!std::isfinite(ay.lo)) ay = {0.0, 1.0, options.log_y};

  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = options.width - left - right;
  const double ph = options.height - top - bottom;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
     << options.height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << options.width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"14\">" << xml_escape(options.title) << "</text>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  auto tick_label = [](const Axis& a, double mapped) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", a.log ? std::pow(10.0, mapped) : mapped);
    return std::string(buf);
  };
  for (int k = 0; k <= 4; ++k) {
    const double fx = k / 4.0;
    const double px = left + fx * pw;
    const double py = top + ph - fx * ph;
    os << "<text x=\"" << px << "\" y=\"" << top + ph + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
       << tick_label(ax, ax.lo + fx * (ax.hi - ax.lo)) << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << py + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << tick_label(ay, ay.lo + fx * (ay.hi - ay.lo)) << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << options.height - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
     << xml_escape(options.x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << top + ph / 2 << "\" transform=\"rotate(-90 16 " << top + ph / 2
     << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
     << xml_escape(options.y_label) << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kColors[si % std::size(kColors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    // Thin dense traces to at most ~2000 vertices.
    const std::size_t n = std::min(s.x.size(), s.y.size());
    const std::size_t stride = std::max<std::size_t>(1, n / 2000);
    for (std::size_t k = 0; k < n; k += stride) {
      if (!usable(s.x[k], s.y[k])) continue;
      os << left + ax.frac(s.x[k]) * pw << ',' << top + ph - ay.frac(s.y[k]) * ph << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << left + pw - 8 << "\" y=\"" << top + 16 + 16 * si
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color
       << "\">" << xml_escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace toprank
