#include "tfbm/simulate.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>

#include "tfbm/error.hpp"
#include "tfbm/parallel.hpp"
#include "tfbm/rng.hpp"
#include "tfbm/textio.hpp"

namespace tfbm {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

void fill_normals(std::uint64_t stream, std::span<double> out) {
  Xoshiro256 gen(stream);
  std::normal_distribution<double> normal;
  for (double& v : out) v = normal(gen);
}

}  // namespace

std::string_view to_string(SimulationMethod method) {
  switch (method) {
    case SimulationMethod::automatic:
      return "auto";
    case SimulationMethod::cholesky:
      return "cholesky";
    case SimulationMethod::davies_harte:
      return "davies_harte";
  }
  return "unknown";
}

SimulationMethod parse_method(std::string_view name) {
  if (name == "auto" || name == "automatic") return SimulationMethod::automatic;
  if (name == "cholesky") return SimulationMethod::cholesky;
  if (name == "davies_harte" || name == "davies-harte" || name == "dh") {
    return SimulationMethod::davies_harte;
  }
  throw DomainError("unknown simulation method '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Cholesky

CholeskySampler::CholeskySampler(const Eigen::MatrixXd& cov) {
  if (cov.rows() == 0 || cov.rows() != cov.cols()) {
    throw DomainError("cholesky: covariance must be a non-empty square matrix");
  }
  const double base = cov.trace() / static_cast<double>(cov.rows());
  for (double rel : {0.0, 1e-14, 1e-12, 1e-10}) {
    Eigen::MatrixXd work = cov;
    work.diagonal().array() += rel * base;
    Eigen::LLT<Eigen::MatrixXd> llt(work);
    if (llt.info() == Eigen::Success) {
      factor_ = llt.matrixL();
      jitter_ = rel * base;
      return;
    }
  }
  throw NumericalError("cholesky: factorization failed even with diagonal jitter 1e-10 * trace/n");
}

void CholeskySampler::sample(std::uint64_t stream, std::span<double> out) const {
  const auto n = factor_.rows();
  if (static_cast<Eigen::Index>(out.size()) != n) {
    throw DomainError("cholesky: output length does not match covariance size");
  }
  Eigen::VectorXd z(n);
  fill_normals(stream, {z.data(), static_cast<std::size_t>(n)});
  Eigen::Map<Eigen::VectorXd>(out.data(), n).noalias() =
      factor_.triangularView<Eigen::Lower>() * z;
}

PathMatrix cholesky_sample(const CovarianceMatrix& cov, std::size_t m, std::uint64_t seed) {
  if (m == 0) throw DomainError("cholesky_sample: m must be positive");
  const CholeskySampler sampler(cov.entries);
  PathMatrix out(static_cast<Eigen::Index>(m), cov.n());
  parallel_for(m, [&](std::size_t k) {
    sampler.sample(stream_seed(seed, {k}),
                   {out.row(static_cast<Eigen::Index>(k)).data(), sampler.size()});
  });
  return out;
}

// ---------------------------------------------------------------------------
// Davies-Harte

struct DaviesHarteSampler::Impl {
  std::size_t n = 0;
  std::vector<double> eigenvalues;  // 2n circulant eigenvalues, unclipped
  std::vector<double> weights;      // sqrt(max(eig, 0) / 2n), k = 0..n
  fftw_plan synth = nullptr;

  ~Impl() {
    if (synth) {
      std::lock_guard lock(fftw_planner_mutex());
      fftw_destroy_plan(synth);
    }
  }
};

DaviesHarteSampler::DaviesHarteSampler(std::span<const double> acvf)
    : impl_(std::make_unique<Impl>()) {
  if (acvf.size() < 2) throw DomainError("davies_harte: need gamma(0..n) with n >= 1");
  const std::size_t n = acvf.size() - 1;
  const std::size_t len = 2 * n;
  impl_->n = n;

  // First row of the circulant: gamma(0..n), gamma(n-1), ..., gamma(1).
  std::vector<double> row(len);
  for (std::size_t j = 0; j <= n; ++j) row[j] = acvf[j];
  for (std::size_t j = n + 1; j < len; ++j) row[j] = acvf[len - j];

  std::vector<std::complex<double>> spectrum(n + 1);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(len), row.data(),
                                          reinterpret_cast<fftw_complex*>(spectrum.data()),
                                          FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  impl_->eigenvalues.resize(len);
  for (std::size_t k = 0; k <= n; ++k) impl_->eigenvalues[k] = spectrum[k].real();
  for (std::size_t k = n + 1; k < len; ++k) impl_->eigenvalues[k] = spectrum[len - k].real();

  const auto [lo, hi] = std::minmax_element(impl_->eigenvalues.begin(), impl_->eigenvalues.end());
  if (*lo < -1e-10 * std::max(*hi, 0.0)) {
    std::ostringstream msg;
    msg << "davies_harte: circulant embedding has a negative eigenvalue " << *lo
        << " (largest " << *hi << ")";
    throw EmbeddingError(msg.str(), *lo);
  }
  impl_->weights.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    impl_->weights[k] = std::sqrt(std::max(impl_->eigenvalues[k], 0.0) / static_cast<double>(len));
  }

  std::vector<std::complex<double>> in(n + 1);
  std::vector<double> out(len);
  std::lock_guard lock(fftw_planner_mutex());
  impl_->synth = fftw_plan_dft_c2r_1d(static_cast<int>(len),
                                      reinterpret_cast<fftw_complex*>(in.data()), out.data(),
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
}

DaviesHarteSampler::~DaviesHarteSampler() = default;
DaviesHarteSampler::DaviesHarteSampler(DaviesHarteSampler&&) noexcept = default;
DaviesHarteSampler& DaviesHarteSampler::operator=(DaviesHarteSampler&&) noexcept = default;

std::size_t DaviesHarteSampler::size() const { return impl_->n; }

const std::vector<double>& DaviesHarteSampler::eigenvalues() const { return impl_->eigenvalues; }

void DaviesHarteSampler::sample(std::uint64_t stream, std::span<double> out) const {
  const std::size_t n = impl_->n;
  if (out.size() != n) throw DomainError("davies_harte: output length does not match");
  // Normals in a fixed order: k = 0 real, 0 < k < n complex pairs, k = n real.
  std::vector<double> z(2 * n);
  fill_normals(stream, z);
  std::vector<std::complex<double>> w(n + 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const auto& wt = impl_->weights;
  w[0] = {wt[0] * z[0], 0.0};
  for (std::size_t k = 1; k < n; ++k) {
    w[k] = {wt[k] * z[2 * k - 1] * inv_sqrt2, wt[k] * z[2 * k] * inv_sqrt2};
  }
  w[n] = {wt[n] * z[2 * n - 1], 0.0};
  std::vector<double> x(2 * n);
  fftw_execute_dft_c2r(impl_->synth, reinterpret_cast<fftw_complex*>(w.data()), x.data());
  std::copy_n(x.begin(), n, out.begin());
}

PathMatrix davies_harte_sample(std::span<const double> acvf, std::size_t m, std::uint64_t seed) {
  if (m == 0) throw DomainError("davies_harte_sample: m must be positive");
  const DaviesHarteSampler sampler(acvf);
  PathMatrix out(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(sampler.size()));
  parallel_for(m, [&](std::size_t k) {
    sampler.sample(stream_seed(seed, {k}),
                   {out.row(static_cast<Eigen::Index>(k)).data(), sampler.size()});
  });
  return out;
}

// ---------------------------------------------------------------------------
// Process simulation

ProcessSampler::ProcessSampler(const ProcessSpec& spec, std::size_t n, SimulationMethod method,
                               double dt)
    : spec_(spec), n_(n), method_(method) {
  spec.validate();
  if (n < 2) throw DomainError("simulate: n must be at least 2");
  const std::vector<double> acvf = increment_acvf_sequence(spec, n, dt);
  if (method != SimulationMethod::cholesky) {
    try {
      circulant_ = std::make_unique<DaviesHarteSampler>(acvf);
      method_ = SimulationMethod::davies_harte;
      return;
    } catch (const EmbeddingError&) {
      if (method == SimulationMethod::davies_harte) throw;
    }
  }
  Eigen::MatrixXd cov(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          acvf[i > j ? i - j : j - i];
    }
  }
  cholesky_ = std::make_unique<CholeskySampler>(cov);
  method_ = SimulationMethod::cholesky;
}

void ProcessSampler::sample_increments(std::uint64_t stream, std::span<double> out) const {
  if (circulant_) {
    circulant_->sample(stream, out);
  } else {
    cholesky_->sample(stream, out);
  }
}

void ProcessSampler::sample_levels(std::uint64_t stream, std::span<double> out) const {
  sample_increments(stream, out);
  double acc = 0.0;
  for (double& v : out) {
    acc += v;
    v = acc;
  }
}

TrajectoryBatch simulate_process(const ProcessSpec& spec, std::size_t n, std::size_t m,
                                 SimulationMethod method, std::uint64_t seed, double dt) {
  if (m == 0) throw DomainError("simulate: m must be positive");
  const ProcessSampler sampler(spec, n, method, dt);
  TrajectoryBatch batch;
  batch.spec = spec;
  batch.seed = seed;
  batch.method_used = sampler.method_used();
  batch.time_step = dt;
  batch.values.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  parallel_for(m, [&](std::size_t k) {
    sampler.sample_levels(stream_seed(seed, {k}),
                          {batch.values.row(static_cast<Eigen::Index>(k)).data(), n});
  });
  return batch;
}

void write_csv(std::ostream& os, const TrajectoryBatch& batch) {
  os << "# tfbm trajectory batch: one path per row, levels at t = dt..n*dt, X(0) = 0 omitted\n";
  os << "# kind=" << to_string(batch.spec.kind) << ",H=" << textio::fmt(batch.spec.hurst)
     << ",lambda=" << textio::fmt(batch.spec.lambda) << ",n=" << batch.n() << ",m=" << batch.m()
     << ",seed=" << batch.seed << ",method=" << to_string(batch.method_used)
     << ",dt=" << textio::fmt(batch.time_step) << '\n';
  for (Eigen::Index k = 0; k < batch.values.rows(); ++k) {
    for (Eigen::Index i = 0; i < batch.values.cols(); ++i) {
      if (i) os << ',';
      os << textio::fmt(batch.values(k, i));
    }
    os << '\n';
  }
}

TrajectoryBatch read_trajectory_csv(std::istream& is) {
  const textio::CsvDocument doc = textio::read_csv(is);
  TrajectoryBatch batch;
  for (const auto& line : doc.comments) {
    if (line.find('=') == std::string::npos) continue;
    std::map<std::string, std::string> kv;
    for (const auto& field : textio::split(line, ',')) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) continue;
      kv[field.substr(0, eq)] = field.substr(eq + 1);
    }
    if (kv.count("kind")) batch.spec.kind = parse_kind(kv["kind"]);
    if (kv.count("H")) batch.spec.hurst = textio::parse_double(kv["H"]);
    if (kv.count("lambda")) batch.spec.lambda = textio::parse_double(kv["lambda"]);
    if (kv.count("seed")) batch.seed = std::stoull(kv["seed"]);
    if (kv.count("method")) batch.method_used = parse_method(kv["method"]);
    if (kv.count("dt")) batch.time_step = textio::parse_double(kv["dt"]);
  }
  if (doc.rows.empty()) throw DomainError("trajectory CSV: no data rows");
  const std::size_t n = doc.rows.front().size();
  batch.values.resize(static_cast<Eigen::Index>(doc.rows.size()), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < doc.rows.size(); ++k) {
    if (doc.rows[k].size() != n) throw DomainError("trajectory CSV: ragged rows");
    for (std::size_t i = 0; i < n; ++i) {
      batch.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = doc.rows[k][i];
    }
  }
  return batch;
}

}  // namespace tfbm
