#include "tfbm/statistics.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <string>

#include "tfbm/error.hpp"
#include "tfbm/textio.hpp"

namespace tfbm {

namespace {

void check_lag(std::size_t n, int tau, int lo, long hi, const char* what) {
  if (tau < lo || static_cast<long>(tau) > hi) {
    throw DomainError(std::string(what) + ": lag " + std::to_string(tau) +
                      " outside [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      "] for sample length " + std::to_string(n));
  }
}

}  // namespace

std::string_view to_string(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::ACVF:
      return "acvf";
    case StatisticKind::DMA:
      return "dma";
    case StatisticKind::TAMSD:
      return "tamsd";
  }
  return "unknown";
}

StatisticKind parse_statistic(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "acvf" || s == "acf") return StatisticKind::ACVF;
  if (s == "dma") return StatisticKind::DMA;
  if (s == "tamsd") return StatisticKind::TAMSD;
  throw DomainError("unknown statistic '" + std::string(name) + "'");
}

void StatisticSpec::validate(std::size_t n) const {
  const long ln = static_cast<long>(n);
  switch (kind) {
    case StatisticKind::ACVF:
      check_lag(n, tau, 0, ln - 1, "acvf");
      break;
    case StatisticKind::TAMSD:
      check_lag(n, tau, 1, ln - 1, "tamsd");
      break;
    case StatisticKind::DMA:
      check_lag(n, tau, 2, ln, "dma (window needs tau >= 2)");
      break;
  }
}

double QuadraticFormMatrix::apply(std::span<const double> y) const {
  if (static_cast<Eigen::Index>(y.size()) != entries.rows()) {
    throw DomainError("quadratic form: vector length does not match matrix");
  }
  const Eigen::Map<const Eigen::VectorXd> v(y.data(), entries.rows());
  return scale * v.dot(entries * v);
}

double acvf_stat(std::span<const double> x, int tau) {
  const std::size_t n = x.size();
  check_lag(n, tau, 0, static_cast<long>(n) - 1, "acvf");
  const std::size_t t = static_cast<std::size_t>(tau);
  double s = 0.0;
  for (std::size_t i = 0; i + t < n; ++i) s += x[i + t] * x[i];
  return s / static_cast<double>(n - t);
}

QuadraticFormMatrix acvf_matrix(std::size_t n, int tau) {
  check_lag(n, tau, 0, static_cast<long>(n) - 1, "acvf");
  const auto size = static_cast<Eigen::Index>(n);
  QuadraticFormMatrix a{Eigen::MatrixXd::Zero(size, size), 1.0};
  if (tau == 0) {
    a.entries.diagonal().setConstant(1.0 / static_cast<double>(n));
    return a;
  }
  const double w = 0.5 / static_cast<double>(size - tau);
  for (Eigen::Index i = 0; i + tau < size; ++i) {
    a.entries(i, i + tau) = w;
    a.entries(i + tau, i) = w;
  }
  return a;
}

double tamsd_stat(std::span<const double> x, int tau) {
  const std::size_t n = x.size();
  check_lag(n, tau, 1, static_cast<long>(n) - 1, "tamsd");
  const std::size_t t = static_cast<std::size_t>(tau);
  double s = 0.0;
  for (std::size_t i = 0; i + t < n; ++i) {
    const double d = x[i + t] - x[i];
    s += d * d;
  }
  return s / static_cast<double>(n - t);
}

QuadraticFormMatrix tamsd_matrix(std::size_t n, int tau) {
  check_lag(n, tau, 1, static_cast<long>(n) - 1, "tamsd");
  const auto size = static_cast<Eigen::Index>(n);
  const double w = 1.0 / static_cast<double>(size - tau);
  QuadraticFormMatrix a{Eigen::MatrixXd::Zero(size, size), 1.0};
  // x_j^2 appears once as the leading point (j >= tau) and once as the
  // trailing point (j < n - tau) of a displacement.
  for (Eigen::Index j = 0; j < size; ++j) {
    const int count = (j >= tau ? 1 : 0) + (j < size - tau ? 1 : 0);
    a.entries(j, j) = count * w;
  }
  for (Eigen::Index i = 0; i + tau < size; ++i) {
    a.entries(i, i + tau) = -w;
    a.entries(i + tau, i) = -w;
  }
  return a;
}

std::vector<double> detrend(std::span<const double> x, int tau) {
  const std::size_t n = x.size();
  check_lag(n, tau, 2, static_cast<long>(n), "dma (window needs tau >= 2)");
  const std::size_t t = static_cast<std::size_t>(tau);
  std::vector<double> y(n - t + 1);
  double window = 0.0;
  for (std::size_t j = 0; j < t; ++j) window += x[j];
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i > 0) window += x[i + t - 1] - x[i - 1];
    y[i] = x[i + t - 1] - window / static_cast<double>(t);
  }
  return y;
}

double dma_stat(std::span<const double> x, int tau) {
  const std::vector<double> y = detrend(x, tau);
  double s = 0.0;
  for (double v : y) s += v * v;
  return s / static_cast<double>(y.size());
}

QuadraticFormMatrix dma_matrix(std::size_t n, int tau) {
  check_lag(n, tau, 2, static_cast<long>(n), "dma (window needs tau >= 2)");
  const auto m = static_cast<Eigen::Index>(n) - tau + 1;
  return {Eigen::MatrixXd::Identity(m, m), 1.0 / static_cast<double>(m)};
}

Eigen::MatrixXd detrend_operator(std::size_t n, int tau) {
  check_lag(n, tau, 2, static_cast<long>(n), "dma (window needs tau >= 2)");
  const auto size = static_cast<Eigen::Index>(n);
  const Eigen::Index rows = size - tau + 1;
  const double inv = 1.0 / tau;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(rows, size);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = r; c < r + tau - 1; ++c) t(r, c) = -inv;
    t(r, r + tau - 1) = 1.0 - inv;
  }
  return t;
}

CovarianceMatrix detrended_covariance(const CovarianceMatrix& sigma, int tau) {
  if (sigma.entries.rows() != sigma.entries.cols()) {
    throw DomainError("detrended_covariance: covariance must be square");
  }
  if (sigma.meaning != CovarianceMeaning::process_levels) {
    throw DomainError("detrended_covariance: expects a process-levels covariance");
  }
  const Eigen::MatrixXd t = detrend_operator(static_cast<std::size_t>(sigma.n()), tau);
  CovarianceMatrix out{sigma.spec, CovarianceMeaning::detrended, t * sigma.entries * t.transpose()};
  // Exact symmetry.
  out.entries = 0.5 * (out.entries + out.entries.transpose()).eval();
  return out;
}

double evaluate(const StatisticSpec& stat, std::span<const double> x) {
  switch (stat.kind) {
    case StatisticKind::ACVF:
      return acvf_stat(x, stat.tau);
    case StatisticKind::DMA:
      return dma_stat(x, stat.tau);
    case StatisticKind::TAMSD:
      return tamsd_stat(x, stat.tau);
  }
  return 0.0;
}

QuadraticFormMatrix statistic_matrix(const StatisticSpec& stat, std::size_t n) {
  switch (stat.kind) {
    case StatisticKind::ACVF:
      return acvf_matrix(n, stat.tau);
    case StatisticKind::DMA:
      return dma_matrix(n, stat.tau);
    case StatisticKind::TAMSD:
      return tamsd_matrix(n, stat.tau);
  }
  return {};
}

void write_csv_row(std::ostream& os, const StatisticSpec& stat, double value) {
  os << to_string(stat.kind) << ',' << stat.tau << ',' << textio::fmt(value) << '\n';
}

}  // namespace tfbm
