#include "tfbm/covariance.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "tfbm/error.hpp"
#include "tfbm/specfun.hpp"
#include "tfbm/textio.hpp"

namespace tfbm {

namespace {

using specfun::gamma_fn;

constexpr double kSqrtPi = 1.7724538509055160273;

// Beyond this value of lambda |t| the TFBM II variance is its linear asymptote
// to well below double precision: the remainder decays like exp(-lambda |t|).
constexpr double kTfbm2AsymptoticFrom = 50.0;

double tfbm1_variance(double hurst, double lambda, double abs_t) {
  // |t|^(2H) C_t^2 with x = lambda |t|:
  //   2 Gamma(2H) / (2 lambda)^(2H) - 2 Gamma(H + 1/2) / sqrt(pi) K_H(x) |t|^H / (2 lambda)^H
  const double x = lambda * abs_t;
  const double two_lambda = 2.0 * lambda;
  const double first = 2.0 * gamma_fn(2.0 * hurst) / std::pow(two_lambda, 2.0 * hurst);
  const double second = 2.0 * gamma_fn(hurst + 0.5) / kSqrtPi * specfun::bessel_k(hurst, x) *
                        std::pow(abs_t / two_lambda, hurst);
  return first - second;
}

// Both 2F3 series grow like exp(lambda |t|) while their combination stays of
// order lambda |t|, so they are summed with 50 significant digits.
double tfbm2_variance_series(double hurst, double lambda, double abs_t) {
  using Real = boost::multiprecision::cpp_bin_float_50;
  namespace bm = boost::math;
  const Real h = hurst;
  const Real x = Real(lambda) * Real(abs_t);
  const Real z = x * x / 4;
  const Real sqrt_pi = boost::math::constants::root_pi<Real>();
  const Real half = Real(1) / 2;
  specfun::SeriesControl ctl;
  ctl.rel_tol = 1e-45;

  const Real g_h_half = bm::tgamma(h + half);
  const Real p1 = (1 - 2 * h) * g_h_half * bm::tgamma(h) / sqrt_pi;
  const Real one_minus_f1 =
      -specfun::hyp_2f3_tail<Real>(Real(1), -half, 1 - h, half, Real(1), z, ctl);
  const Real p2 = bm::tgamma(1 - h) * g_h_half / (sqrt_pi * h * pow(Real(2), 2 * h));
  const Real f2 = 1 + specfun::hyp_2f3_tail<Real>(Real(1), h - half, Real(1), h + 1, h + half,
                                                  z, ctl);
  // Var = |t|^(2H) C_t^2; the first product carries (lambda |t|)^(-2H).
  const Real var = p1 / pow(Real(lambda), 2 * h) * one_minus_f1 +
                   pow(Real(abs_t), 2 * h) * p2 * f2;
  return static_cast<double>(var);
}

double tfbm2_variance_asymptotic(double hurst, double lambda, double abs_t) {
  const double g = gamma_fn(hurst + 0.5);
  const double slope = g * g * std::pow(lambda, 1.0 - 2.0 * hurst);
  const double offset =
      (1.0 - 2.0 * hurst) * g * gamma_fn(hurst) * std::pow(lambda, -2.0 * hurst) / kSqrtPi;
  return slope * abs_t + offset;
}

double tfbm2_variance(double hurst, double lambda, double abs_t) {
  if (lambda * abs_t > kTfbm2AsymptoticFrom) {
    return tfbm2_variance_asymptotic(hurst, lambda, abs_t);
  }
  return tfbm2_variance_series(hurst, lambda, abs_t);
}

double tfbm3_variance(double hurst, double lambda, double abs_t) {
  return 2.0 * std::pow(abs_t, 2.0 - 2.0 * hurst) *
         specfun::mittag_leffler_3p(1.0, 3.0 - 2.0 * hurst, 1.0 - 2.0 * hurst, -lambda * abs_t);
}

}  // namespace

std::string_view to_string(CovarianceMeaning meaning) {
  switch (meaning) {
    case CovarianceMeaning::process_levels:
      return "process_levels";
    case CovarianceMeaning::increment_noise:
      return "increment_noise";
    case CovarianceMeaning::detrended:
      return "detrended";
  }
  return "unknown";
}

CovarianceMeaning parse_meaning(std::string_view name) {
  if (name == "process_levels") return CovarianceMeaning::process_levels;
  if (name == "increment_noise") return CovarianceMeaning::increment_noise;
  if (name == "detrended") return CovarianceMeaning::detrended;
  throw DomainError("unknown covariance meaning '" + std::string(name) + "'");
}

double variance_scale(const ProcessSpec& spec, double t) {
  spec.validate();
  const double abs_t = std::abs(t);
  switch (spec.kind) {
    case ProcessKind::FBM:
      return 1.0;
    case ProcessKind::TFBM_I:
    case ProcessKind::TFBM_II: {
      if (t == 0.0) {
        throw DomainError("variance_scale: t = 0 is outside the domain for kinds I and II");
      }
      const double v = spec.kind == ProcessKind::TFBM_I
                           ? tfbm1_variance(spec.hurst, spec.lambda, abs_t)
                           : tfbm2_variance(spec.hurst, spec.lambda, abs_t);
      return v / std::pow(abs_t, 2.0 * spec.hurst);
    }
    case ProcessKind::TFBM_III:
      if (t < 0.0) throw DomainError("variance_scale: kind III needs t >= 0");
      if (t == 0.0) return 0.0;
      return tfbm3_variance(spec.hurst, spec.lambda, t);
  }
  return 0.0;
}

double process_variance(const ProcessSpec& spec, double t) {
  spec.validate();
  const double abs_t = std::abs(t);
  if (abs_t == 0.0) return 0.0;
  switch (spec.kind) {
    case ProcessKind::FBM:
      return std::pow(abs_t, 2.0 * spec.hurst);
    case ProcessKind::TFBM_I:
      return tfbm1_variance(spec.hurst, spec.lambda, abs_t);
    case ProcessKind::TFBM_II:
      return tfbm2_variance(spec.hurst, spec.lambda, abs_t);
    case ProcessKind::TFBM_III:
      return tfbm3_variance(spec.hurst, spec.lambda, abs_t);
  }
  return 0.0;
}

double process_covariance(const ProcessSpec& spec, double s, double t) {
  return 0.5 * (process_variance(spec, t) + process_variance(spec, s) -
                process_variance(spec, t - s));
}

double increment_acvf(const ProcessSpec& spec, long k) {
  const double a = std::abs(static_cast<double>(k));
  return 0.5 * (process_variance(spec, a + 1.0) - 2.0 * process_variance(spec, a) +
                process_variance(spec, a - 1.0));
}

double velocity_acf_iii(double tau, double hurst, double lambda) {
  if (!(tau > 0.0)) throw DomainError("velocity_acf_iii: tau must be positive");
  if (!(hurst > 0.5 && hurst < 1.0)) throw DomainError("velocity_acf_iii: needs 0.5 < H < 1");
  if (!(lambda > 0.0)) throw DomainError("velocity_acf_iii: needs lambda > 0");
  return std::pow(tau, 2.0 * hurst - 2.0) * std::exp(-lambda * tau) /
         gamma_fn(2.0 * hurst - 1.0);
}

std::vector<double> variance_table(const ProcessSpec& spec, std::size_t n, double dt) {
  if (!(dt > 0.0)) throw DomainError("variance_table: time step must be positive");
  spec.validate();
  std::vector<double> v(n + 1);
  for (std::size_t k = 0; k <= n; ++k) v[k] = process_variance(spec, dt * static_cast<double>(k));
  return v;
}

std::vector<double> increment_acvf_sequence(const ProcessSpec& spec, std::size_t n, double dt) {
  const std::vector<double> v = variance_table(spec, n + 1, dt);
  std::vector<double> g(n + 1);
  g[0] = v[1];
  for (std::size_t k = 1; k <= n; ++k) g[k] = 0.5 * (v[k + 1] - 2.0 * v[k] + v[k - 1]);
  return g;
}

EigenRange eigen_range(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed");
  const auto& ev = solver.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

void require_psd(const Eigen::MatrixXd& symmetric, double rel_tol, const char* what) {
  const EigenRange r = eigen_range(symmetric);
  if (r.min < -rel_tol * std::max(r.max, 0.0)) {
    std::ostringstream msg;
    msg << what << ": matrix is not positive semidefinite (smallest eigenvalue " << r.min
        << ", largest " << r.max << ")";
    throw NumericalError(msg.str());
  }
}

CovarianceMatrix covariance_matrix(const ProcessSpec& spec, std::size_t n,
                                   CovarianceMeaning meaning, double dt, PsdCheck check) {
  if (n < 2) throw DomainError("covariance_matrix: n must be at least 2");
  CovarianceMatrix cov{spec, meaning, Eigen::MatrixXd(n, n)};
  const auto size = static_cast<Eigen::Index>(n);
  switch (meaning) {
    case CovarianceMeaning::process_levels: {
      const std::vector<double> v = variance_table(spec, n, dt);
      for (Eigen::Index i = 0; i < size; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
          const double c = 0.5 * (v[i + 1] + v[j + 1] - v[i - j]);
          cov.entries(i, j) = c;
          cov.entries(j, i) = c;
        }
      }
      break;
    }
    case CovarianceMeaning::increment_noise: {
      const std::vector<double> g = increment_acvf_sequence(spec, n - 1, dt);
      for (Eigen::Index i = 0; i < size; ++i) {
        for (Eigen::Index j = 0; j < size; ++j) cov.entries(i, j) = g[std::abs(i - j)];
      }
      break;
    }
    case CovarianceMeaning::detrended:
      throw DomainError("covariance_matrix: detrended covariances come from detrended_covariance");
  }
  if (check == PsdCheck::verify) require_psd(cov.entries, 1e-8, "covariance_matrix");
  return cov;
}

void write_csv(std::ostream& os, const CovarianceMatrix& cov) {
  os << "# kind,H,lambda,n,meaning\n";
  os << "# " << to_string(cov.spec.kind) << ',' << textio::fmt(cov.spec.hurst) << ','
     << textio::fmt(cov.spec.lambda) << ',' << cov.n() << ',' << to_string(cov.meaning) << '\n';
  for (Eigen::Index i = 0; i < cov.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < cov.entries.cols(); ++j) {
      if (j) os << ',';
      os << textio::fmt(cov.entries(i, j));
    }
    os << '\n';
  }
}

CovarianceMatrix read_covariance_csv(std::istream& is) {
  const textio::CsvDocument doc = textio::read_csv(is);
  if (doc.comments.size() < 2) throw DomainError("covariance CSV: missing metadata header");
  const auto meta = textio::split(doc.comments[1], ',');
  if (meta.size() != 5) throw DomainError("covariance CSV: malformed metadata line");
  CovarianceMatrix cov;
  cov.spec = {parse_kind(meta[0]), textio::parse_double(meta[1]),
              textio::parse_double(meta[2])};
  const auto n = static_cast<Eigen::Index>(textio::parse_double(meta[3]));
  cov.meaning = parse_meaning(meta[4]);
  if (static_cast<Eigen::Index>(doc.rows.size()) != n) {
    throw DomainError("covariance CSV: row count does not match n");
  }
  cov.entries.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(doc.rows[i].size()) != n) {
      throw DomainError("covariance CSV: row length does not match n");
    }
    for (Eigen::Index j = 0; j < n; ++j) cov.entries(i, j) = doc.rows[i][j];
  }
  return cov;
}

}  // namespace tfbm
