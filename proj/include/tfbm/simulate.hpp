#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "tfbm/covariance.hpp"
#include "tfbm/process.hpp"

namespace tfbm {

/// M x N sample matrix, one path per row.
using PathMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class SimulationMethod { automatic, cholesky, davies_harte };

std::string_view to_string(SimulationMethod method);
SimulationMethod parse_method(std::string_view name);

/// Simulated process levels. values(k, i) is X((i + 1) dt) of path k; the
/// implicit starting point X(0) = 0 is not stored.
struct TrajectoryBatch {
  ProcessSpec spec;
  std::uint64_t seed = 0;
  SimulationMethod method_used = SimulationMethod::cholesky;
  double time_step = 1.0;
  PathMatrix values;

  Eigen::Index m() const { return values.rows(); }
  Eigen::Index n() const { return values.cols(); }
};

/// Draws N(0, cov) vectors as L z. The factor is computed once.
class CholeskySampler {
public:
  /// Retries with diagonal jitter up to 1e-10 * trace / n before throwing
  /// NumericalError.
  explicit CholeskySampler(const Eigen::MatrixXd& cov);

  std::size_t size() const { return static_cast<std::size_t>(factor_.rows()); }
  double jitter() const { return jitter_; }

  /// One draw from the stream keyed by `stream`.
  void sample(std::uint64_t stream, std::span<double> out) const;

private:
  Eigen::MatrixXd factor_;
  double jitter_ = 0.0;
};

/// Stationary Gaussian sequences by circulant embedding.
class DaviesHarteSampler {
public:
  /// `acvf` holds gamma(0), ..., gamma(n); the last value closes the even
  /// circulant extension of length 2n. Throws EmbeddingError when an
  /// eigenvalue of the circulant is below -1e-10 * the largest.
  explicit DaviesHarteSampler(std::span<const double> acvf);
  ~DaviesHarteSampler();
  DaviesHarteSampler(DaviesHarteSampler&&) noexcept;
  DaviesHarteSampler& operator=(DaviesHarteSampler&&) noexcept;

  std::size_t size() const;
  /// Circulant eigenvalues before clipping small negatives to zero.
  const std::vector<double>& eigenvalues() const;

  void sample(std::uint64_t stream, std::span<double> out) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// m draws of N(0, cov), path k from stream_seed(seed, {k}).
PathMatrix cholesky_sample(const CovarianceMatrix& cov, std::size_t m, std::uint64_t seed);

/// m draws of a stationary sequence with autocovariance acvf[0..n-1];
/// acvf[n] closes the embedding (see DaviesHarteSampler).
PathMatrix davies_harte_sample(std::span<const double> acvf, std::size_t m, std::uint64_t seed);

/// Increment sampler for one process spec, reused across many paths.
class ProcessSampler {
public:
  /// method == automatic tries circulant embedding first and falls back to
  /// Cholesky on the increment covariance.
  ProcessSampler(const ProcessSpec& spec, std::size_t n, SimulationMethod method,
                 double dt = 1.0);

  SimulationMethod method_used() const { return method_; }
  std::size_t size() const { return n_; }
  const ProcessSpec& spec() const { return spec_; }

  void sample_increments(std::uint64_t stream, std::span<double> out) const;
  /// Cumulative sums of the increments: levels at t = dt, ..., n dt.
  void sample_levels(std::uint64_t stream, std::span<double> out) const;

private:
  ProcessSpec spec_;
  std::size_t n_;
  SimulationMethod method_;
  std::unique_ptr<CholeskySampler> cholesky_;
  std::unique_ptr<DaviesHarteSampler> circulant_;
};

TrajectoryBatch simulate_process(const ProcessSpec& spec, std::size_t n, std::size_t m,
                                 SimulationMethod method, std::uint64_t seed,
                                 double dt = 1.0);

/// One row per path after `#`-prefixed key=value metadata lines.
void write_csv(std::ostream& os, const TrajectoryBatch& batch);
TrajectoryBatch read_trajectory_csv(std::istream& is);

}  // namespace tfbm
