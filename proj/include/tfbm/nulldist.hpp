#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "tfbm/covariance.hpp"
#include "tfbm/statistics.hpp"

namespace tfbm {

/// Weights of the generalised chi-square law of a Gaussian quadratic form.
struct NullSpectrum {
  std::vector<double> eigenvalues;  ///< sorted descending, signs kept
};

/// Two-sided acceptance interval [Q_{c/2}, Q_{1-c/2}].
struct AcceptanceRegion {
  double lower = 0.0;
  double upper = 0.0;
  double significance = 0.05;
  std::size_t sample_count = 0;

  bool contains(double v) const { return v >= lower && v <= upper; }
};

/// Eigenvalues of scale * Sigma^{1/2} A Sigma^{1/2}, with Sigma^{1/2} the
/// symmetric square root. When A is the identity this is the spectrum of
/// scale * Sigma itself. Throws NumericalError if Sigma has an eigenvalue
/// below -1e-8 * its largest.
NullSpectrum qf_eigenvalues(const Eigen::MatrixXd& sigma, const QuadraticFormMatrix& a);

/// L draws of sum_i lambda_i Z_i^2 with Z_i iid N(0,1); draw l uses the
/// stream stream_seed(seed, {l}).
std::vector<double> sample_null(const NullSpectrum& spectrum, std::size_t draws,
                                std::uint64_t seed);

/// Quantile of sorted data by linear interpolation between order statistics
/// (position p (L - 1) in zero-based indexing).
double empirical_quantile(std::span<const double> sorted, double p);

/// Empirical quantiles at c/2 and 1 - c/2. Throws DomainError unless 0 < c < 1.
AcceptanceRegion acceptance_region(std::vector<double> samples, double significance);

void write_csv(std::ostream& os, const NullSpectrum& spectrum);
void write_csv(std::ostream& os, const AcceptanceRegion& region);

}  // namespace tfbm
