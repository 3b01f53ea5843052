#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "tfbm/process.hpp"
#include "tfbm/simulate.hpp"

namespace tfbm {

/// lines(j, i) is the empirical p_j-quantile of the paths at time index i + 1.
struct QuantileLines {
  std::vector<double> probs;
  Eigen::MatrixXd lines;
  ProcessSpec spec;
  std::uint64_t seed = 0;
  double time_step = 1.0;
  std::size_t paths = 0;
};

/// {0.05, 0.25, 0.5, 0.75, 0.95}.
std::vector<double> default_probabilities();

/// Throws DomainError unless probs is non-empty and strictly increasing in (0, 1).
void validate_probabilities(std::span<const double> probs);

/// Per-column quantiles (linear interpolation). Needs at least 100 paths.
QuantileLines quantile_lines(const PathMatrix& paths, std::span<const double> probs);
QuantileLines quantile_lines(const TrajectoryBatch& batch, std::span<const double> probs);

/// Long format: n,p,q with n the time index (1-based).
void write_csv(std::ostream& os, const QuantileLines& q);
void write_svg(std::ostream& os, const QuantileLines& q);

}  // namespace tfbm
