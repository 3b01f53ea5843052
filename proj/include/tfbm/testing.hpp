#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tfbm/nulldist.hpp"
#include "tfbm/process.hpp"
#include "tfbm/simulate.hpp"
#include "tfbm/statistics.hpp"

namespace tfbm {

/// Simple null hypothesis: the sample X(dt), ..., X(n dt) is a path of
/// `null_spec`.
struct TestConfig {
  ProcessSpec null_spec;
  StatisticSpec statistic;
  std::size_t n = 1000;
  double significance = 0.05;
  std::size_t null_draws = 10000;
  std::uint64_t seed = 0;
  double time_step = 1.0;

  /// Throws DomainError on an inadmissible field.
  void validate() const;
};

struct TestOutcome {
  double statistic_value = 0.0;
  AcceptanceRegion region;
  bool rejected = false;
};

/// ACVF 1, DMA 2, TAMSD 1.
int default_tau(StatisticKind kind);

/// The vector the statistic's quadratic form acts on, before detrending:
/// increments (with X(0) = 0) for ACVF, the levels otherwise.
std::vector<double> statistic_input(StatisticKind kind, std::span<const double> levels);

/// Statistic of a level path under the convention used for the null.
double observed_statistic(const StatisticSpec& stat, std::span<const double> levels);

/// Covariance of the vector the quadratic form acts on: increment noise
/// for ACVF, levels for TAMSD, the detrended vector for DMA.
CovarianceMatrix null_covariance(const TestConfig& config);

/// Null spectrum and acceptance region of one configuration. Building it is
/// the expensive step; testing a path afterwards is O(n).
class NullModel {
public:
  explicit NullModel(const TestConfig& config);

  const TestConfig& config() const { return config_; }
  const NullSpectrum& spectrum() const { return spectrum_; }
  const AcceptanceRegion& region() const { return region_; }

  /// `levels` holds X(dt), ..., X(n dt).
  TestOutcome test(std::span<const double> levels) const;

private:
  TestConfig config_;
  NullSpectrum spectrum_;
  AcceptanceRegion region_;
};

TestOutcome run_test(std::span<const double> levels, const TestConfig& config);

struct PowerPoint {
  ProcessSpec alternative;
  std::size_t rejections = 0;
  std::size_t replicates = 0;
  double power = 0.0;
  bool failed = false;
  std::string failure;
};

struct PowerCurve {
  TestConfig config;
  std::size_t replicates = 0;
  std::vector<PowerPoint> points;
};

/// Rejection frequency of the config's test over `replicates` paths of each
/// alternative. Replicate r of alternative a uses the stream
/// stream_seed(seed, {a, r}). An alternative whose simulation fails is kept
/// with failed = true and the error text.
PowerCurve power_study(const TestConfig& config, std::span<const ProcessSpec> alternatives,
                       std::size_t replicates, std::uint64_t seed,
                       SimulationMethod method = SimulationMethod::automatic);

/// Same, reusing an already built null model.
PowerCurve power_study(const NullModel& null, std::span<const ProcessSpec> alternatives,
                       std::size_t replicates, std::uint64_t seed,
                       SimulationMethod method = SimulationMethod::automatic);

/// Header line of the power CSV.
void write_power_header(std::ostream& os);
/// Rows alt_kind,alt_H,alt_lambda,statistic,tau,N,M,power,status; a failed
/// alternative has power "nan" and status "failed".
void write_power_rows(std::ostream& os, const PowerCurve& curve);
void write_csv(std::ostream& os, const PowerCurve& curve);

}  // namespace tfbm
