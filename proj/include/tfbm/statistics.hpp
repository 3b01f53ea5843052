#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "tfbm/covariance.hpp"

namespace tfbm {

enum class StatisticKind { ACVF, DMA, TAMSD };

std::string_view to_string(StatisticKind kind);
StatisticKind parse_statistic(std::string_view name);

/// Statistic with its lag (window length for DMA).
struct StatisticSpec {
  StatisticKind kind = StatisticKind::TAMSD;
  int tau = 1;

  /// Admissible lags for a sample of length n: ACVF 0..n-1, TAMSD 1..n-1,
  /// DMA 2..n. Throws DomainError otherwise.
  void validate(std::size_t n) const;

  bool operator==(const StatisticSpec&) const = default;
};

/// S = scale * y' A y, where y is the vector the statistic acts on: the
/// sample itself for ACVF and TAMSD, the detrended vector for DMA (A = I).
struct QuadraticFormMatrix {
  Eigen::MatrixXd entries;
  double scale = 1.0;

  Eigen::Index n_effective() const { return entries.rows(); }
  double apply(std::span<const double> y) const;
};

double acvf_stat(std::span<const double> x, int tau);
QuadraticFormMatrix acvf_matrix(std::size_t n, int tau);

double tamsd_stat(std::span<const double> x, int tau);
QuadraticFormMatrix tamsd_matrix(std::size_t n, int tau);

double dma_stat(std::span<const double> x, int tau);
/// Identity of size n - tau + 1 with scale 1 / (n - tau + 1).
QuadraticFormMatrix dma_matrix(std::size_t n, int tau);

/// (n - tau + 1) x n matrix T with Y = T x the detrended vector.
Eigen::MatrixXd detrend_operator(std::size_t n, int tau);
std::vector<double> detrend(std::span<const double> x, int tau);

/// T Sigma T' for a process-levels covariance.
CovarianceMatrix detrended_covariance(const CovarianceMatrix& sigma, int tau);

/// Direct evaluation of the statistic on x.
double evaluate(const StatisticSpec& stat, std::span<const double> x);

/// Quadratic-form matrix of the statistic for input length n.
QuadraticFormMatrix statistic_matrix(const StatisticSpec& stat, std::size_t n);

/// CSV row "kind,tau,value" (header "kind,tau,value" written by the caller).
void write_csv_row(std::ostream& os, const StatisticSpec& stat, double value);

}  // namespace tfbm
