#include "tfbm/qlines.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "tfbm/error.hpp"
#include "tfbm/nulldist.hpp"
#include "tfbm/parallel.hpp"
#include "tfbm/svg.hpp"
#include "tfbm/textio.hpp"

namespace tfbm {

std::vector<double> default_probabilities() { return {0.05, 0.25, 0.5, 0.75, 0.95}; }

void validate_probabilities(std::span<const double> probs) {
  if (probs.empty()) throw DomainError("quantile lines: no probability levels");
  for (std::size_t j = 0; j < probs.size(); ++j) {
    if (!(probs[j] > 0.0 && probs[j] < 1.0)) {
      throw DomainError("quantile lines: probability " + textio::fmt(probs[j]) +
                        " outside (0, 1)");
    }
    if (j > 0 && !(probs[j] > probs[j - 1])) {
      throw DomainError("quantile lines: probabilities must be strictly increasing");
    }
  }
}

QuantileLines quantile_lines(const PathMatrix& paths, std::span<const double> probs) {
  validate_probabilities(probs);
  if (paths.rows() < 100) {
    throw DomainError("quantile lines: need at least 100 paths, got " +
                      std::to_string(paths.rows()));
  }
  QuantileLines q;
  q.probs.assign(probs.begin(), probs.end());
  q.paths = static_cast<std::size_t>(paths.rows());
  const auto cols = static_cast<std::size_t>(paths.cols());
  q.lines.resize(static_cast<Eigen::Index>(probs.size()), paths.cols());
  parallel_for(cols, [&](std::size_t i) {
    std::vector<double> column(q.paths);
    for (std::size_t k = 0; k < q.paths; ++k) column[k] = paths(k, i);
    std::sort(column.begin(), column.end());
    for (std::size_t j = 0; j < probs.size(); ++j) {
      q.lines(j, i) = empirical_quantile(column, probs[j]);
    }
  });
  return q;
}

QuantileLines quantile_lines(const TrajectoryBatch& batch, std::span<const double> probs) {
  QuantileLines q = quantile_lines(batch.values, probs);
  q.spec = batch.spec;
  q.seed = batch.seed;
  q.time_step = batch.time_step;
  return q;
}

void write_csv(std::ostream& os, const QuantileLines& q) {
  os << "# kind=" << to_string(q.spec.kind) << ",H=" << textio::fmt(q.spec.hurst)
     << ",lambda=" << textio::fmt(q.spec.lambda) << ",n=" << q.lines.cols() << ",m=" << q.paths
     << ",seed=" << q.seed << ",dt=" << textio::fmt(q.time_step) << '\n';
  os << "n,p,q\n";
  for (Eigen::Index i = 0; i < q.lines.cols(); ++i) {
    for (std::size_t j = 0; j < q.probs.size(); ++j) {
      os << i + 1 << ',' << textio::fmt(q.probs[j]) << ','
         << textio::fmt(q.lines(static_cast<Eigen::Index>(j), i)) << '\n';
    }
  }
}

void write_svg(std::ostream& os, const QuantileLines& q) {
  svg::Plot plot;
  plot.title = "Quantile lines, " + describe(q.spec) + ", M=" + std::to_string(q.paths);
  plot.x_label = "t";
  plot.y_label = "X(t)";
  for (std::size_t j = 0; j < q.probs.size(); ++j) {
    svg::Series s;
    char label[32];
    std::snprintf(label, sizeof label, "p = %g", q.probs[j]);
    s.label = label;
    for (Eigen::Index i = 0; i < q.lines.cols(); ++i) {
      s.x.push_back(static_cast<double>(i + 1) * q.time_step);
      s.y.push_back(q.lines(static_cast<Eigen::Index>(j), i));
    }
    plot.series.push_back(std::move(s));
  }
  svg::write(os, plot);
}

}  // namespace tfbm
