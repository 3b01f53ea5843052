#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "tfbm/process.hpp"

namespace tfbm {

/// What a covariance matrix describes.
enum class CovarianceMeaning {
  process_levels,   ///< Cov[X(i dt), X(j dt)], i, j = 1..n
  increment_noise,  ///< Cov of the unit-step increments (stationary, Toeplitz)
  detrended,        ///< Cov of the DMA-detrended vector
};

std::string_view to_string(CovarianceMeaning meaning);
CovarianceMeaning parse_meaning(std::string_view name);

struct CovarianceMatrix {
  ProcessSpec spec;
  CovarianceMeaning meaning = CovarianceMeaning::process_levels;
  Eigen::MatrixXd entries;

  Eigen::Index n() const { return entries.rows(); }
};

/// C_t^2 of the given kind. FBM returns 1. Kinds I/II need t != 0, kind III t >= 0.
double variance_scale(const ProcessSpec& spec, double t);

/// Var X(t). Zero at t = 0; depends on t only through |t|.
double process_variance(const ProcessSpec& spec, double t);

/// Cov[X(s), X(t)] = (V(s) + V(t) - V(t - s)) / 2.
double process_covariance(const ProcessSpec& spec, double s, double t);

/// Autocovariance of the increment noise at integer lag k (unit time step).
double increment_acvf(const ProcessSpec& spec, long k);

/// Velocity autocorrelation of TFBM III: tau^(2H-2) exp(-lambda tau) / Gamma(2H-1).
double velocity_acf_iii(double tau, double hurst, double lambda);

/// V(k dt) for k = 0..n.
std::vector<double> variance_table(const ProcessSpec& spec, std::size_t n, double dt = 1.0);

/// Increment autocovariance gamma(k), k = 0..n, for increments over steps of length dt.
std::vector<double> increment_acvf_sequence(const ProcessSpec& spec, std::size_t n,
                                            double dt = 1.0);

enum class PsdCheck { verify, skip };

/// Covariance of the levels at t = dt, 2 dt, ..., n dt, or of their increments.
/// With PsdCheck::verify a smallest eigenvalue below -1e-8 * largest throws
/// NumericalError.
CovarianceMatrix covariance_matrix(const ProcessSpec& spec, std::size_t n,
                                   CovarianceMeaning meaning, double dt = 1.0,
                                   PsdCheck check = PsdCheck::verify);

/// Smallest and largest eigenvalues of a symmetric matrix.
struct EigenRange {
  double min;
  double max;
};
EigenRange eigen_range(const Eigen::MatrixXd& symmetric);

/// Throws NumericalError when min eigenvalue < -rel_tol * max eigenvalue.
void require_psd(const Eigen::MatrixXd& symmetric, double rel_tol, const char* what);

/// Row-major CSV with a "# kind,H,lambda,n,meaning" metadata header.
void write_csv(std::ostream& os, const CovarianceMatrix& cov);
CovarianceMatrix read_covariance_csv(std::istream& is);

}  // namespace tfbm
