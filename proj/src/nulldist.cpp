#include "tfbm/nulldist.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "tfbm/error.hpp"
#include "tfbm/parallel.hpp"
#include "tfbm/rng.hpp"
#include "tfbm/textio.hpp"

namespace tfbm {

namespace {

bool is_identity(const Eigen::MatrixXd& a) {
  return a.rows() == a.cols() && a.isIdentity(0.0);
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("qf_eigenvalues: eigen solver failed");
  return solver.eigenvalues();
}

void check_spectrum(const Eigen::VectorXd& ev) {
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (lo < -1e-8 * std::max(hi, 0.0)) {
    std::ostringstream msg;
    msg << "qf_eigenvalues: covariance has eigenvalue " << lo << " (largest " << hi << ")";
    throw NumericalError(msg.str());
  }
}

}  // namespace

NullSpectrum qf_eigenvalues(const Eigen::MatrixXd& sigma, const QuadraticFormMatrix& a) {
  if (sigma.rows() != sigma.cols() || sigma.rows() != a.entries.rows() ||
      a.entries.rows() != a.entries.cols()) {
    throw DomainError("qf_eigenvalues: dimension mismatch");
  }
  Eigen::VectorXd ev;
  if (is_identity(a.entries)) {
    ev = symmetric_eigenvalues(sigma);
    check_spectrum(ev);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sigma);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("qf_eigenvalues: eigen solver failed");
    }
    check_spectrum(solver.eigenvalues());
    const Eigen::VectorXd root = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXd sqrt_sigma =
        solver.eigenvectors() * root.asDiagonal() * solver.eigenvectors().transpose();
    Eigen::MatrixXd b = sqrt_sigma * a.entries * sqrt_sigma;
    b = 0.5 * (b + b.transpose()).eval();
    ev = symmetric_eigenvalues(b);
  }
  NullSpectrum out;
  out.eigenvalues.resize(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) out.eigenvalues[i] = a.scale * ev[i];
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
  return out;
}

std::vector<double> sample_null(const NullSpectrum& spectrum, std::size_t draws,
                                std::uint64_t seed) {
  if (draws == 0) throw DomainError("sample_null: need at least one draw");
  std::vector<double> out(draws);
  const auto& w = spectrum.eigenvalues;
  parallel_for(draws, [&](std::size_t l) {
    Xoshiro256 gen(stream_seed(seed, {l}));
    std::normal_distribution<double> normal;
    double s = 0.0;
    for (double lambda : w) {
      const double z = normal(gen);
      s += lambda * z * z;
    }
    out[l] = s;
  });
  return out;
}

double empirical_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw DomainError("empirical_quantile: empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("empirical_quantile: p outside [0, 1]");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

AcceptanceRegion acceptance_region(std::vector<double> samples, double significance) {
  if (!(significance > 0.0 && significance < 1.0)) {
    throw DomainError("acceptance_region: significance must lie in (0, 1)");
  }
  if (samples.empty()) throw DomainError("acceptance_region: empty sample");
  std::sort(samples.begin(), samples.end());
  AcceptanceRegion r;
  r.lower = empirical_quantile(samples, significance / 2.0);
  r.upper = empirical_quantile(samples, 1.0 - significance / 2.0);
  r.significance = significance;
  r.sample_count = samples.size();
  return r;
}

void write_csv(std::ostream& os, const NullSpectrum& spectrum) {
  os << "index,eigenvalue\n";
  for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
    os << i << ',' << textio::fmt(spectrum.eigenvalues[i]) << '\n';
  }
}

void write_csv(std::ostream& os, const AcceptanceRegion& region) {
  os << "lower,upper,significance,samples\n";
  os << textio::fmt(region.lower) << ',' << textio::fmt(region.upper) << ','
     << textio::fmt(region.significance) << ',' << region.sample_count << '\n';
}

}  // namespace tfbm
