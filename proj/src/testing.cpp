#include "tfbm/testing.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "tfbm/error.hpp"
#include "tfbm/parallel.hpp"
#include "tfbm/rng.hpp"
#include "tfbm/textio.hpp"

namespace tfbm {

void TestConfig::validate() const {
  null_spec.validate();
  if (!(significance > 0.0 && significance < 1.0)) {
    throw DomainError("significance must lie in (0, 1)");
  }
  if (null_draws < 2) throw DomainError("need at least two null draws");
  if (!(time_step > 0.0)) throw DomainError("time step must be positive");
  if (n < static_cast<std::size_t>(std::max(statistic.tau, 0)) + 2) {
    throw DomainError("sample length must be at least tau + 2");
  }
  statistic.validate(n);
}

int default_tau(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::ACVF:
      return 1;
    case StatisticKind::DMA:
      return 2;
    case StatisticKind::TAMSD:
      return 1;
  }
  return 1;
}

std::vector<double> statistic_input(StatisticKind kind, std::span<const double> levels) {
  std::vector<double> v(levels.begin(), levels.end());
  if (kind == StatisticKind::ACVF) {
    for (std::size_t i = v.size(); i-- > 1;) v[i] -= v[i - 1];
  }
  return v;
}

double observed_statistic(const StatisticSpec& stat, std::span<const double> levels) {
  if (stat.kind == StatisticKind::ACVF) {
    const std::vector<double> inc = statistic_input(stat.kind, levels);
    return acvf_stat(inc, stat.tau);
  }
  return evaluate(stat, levels);
}

CovarianceMatrix null_covariance(const TestConfig& config) {
  switch (config.statistic.kind) {
    case StatisticKind::ACVF:
      return covariance_matrix(config.null_spec, config.n, CovarianceMeaning::increment_noise,
                               config.time_step, PsdCheck::skip);
    case StatisticKind::TAMSD:
      return covariance_matrix(config.null_spec, config.n, CovarianceMeaning::process_levels,
                               config.time_step, PsdCheck::skip);
    case StatisticKind::DMA:
      return detrended_covariance(
          covariance_matrix(config.null_spec, config.n, CovarianceMeaning::process_levels,
                            config.time_step, PsdCheck::skip),
          config.statistic.tau);
  }
  throw DomainError("unknown statistic");
}

NullModel::NullModel(const TestConfig& config) : config_(config) {
  config_.validate();
  const CovarianceMatrix sigma = null_covariance(config_);
  const QuadraticFormMatrix a = config_.statistic.kind == StatisticKind::DMA
                                    ? dma_matrix(config_.n, config_.statistic.tau)
                                    : statistic_matrix(config_.statistic, config_.n);
  spectrum_ = qf_eigenvalues(sigma.entries, a);
  region_ = acceptance_region(sample_null(spectrum_, config_.null_draws, config_.seed),
                              config_.significance);
}

TestOutcome NullModel::test(std::span<const double> levels) const {
  if (levels.size() != config_.n) {
    throw DomainError("observed path has length " + std::to_string(levels.size()) +
                      ", expected " + std::to_string(config_.n));
  }
  TestOutcome out;
  out.statistic_value = observed_statistic(config_.statistic, levels);
  out.region = region_;
  out.rejected = !region_.contains(out.statistic_value);
  return out;
}

TestOutcome run_test(std::span<const double> levels, const TestConfig& config) {
  if (levels.size() != config.n) {
    throw DomainError("observed path has length " + std::to_string(levels.size()) +
                      ", expected " + std::to_string(config.n));
  }
  return NullModel(config).test(levels);
}

PowerCurve power_study(const NullModel& null, std::span<const ProcessSpec> alternatives,
                       std::size_t replicates, std::uint64_t seed, SimulationMethod method) {
  if (replicates < 1) throw DomainError("power study needs at least one replicate");
  const TestConfig& config = null.config();
  PowerCurve curve;
  curve.config = config;
  curve.replicates = replicates;
  for (std::size_t a = 0; a < alternatives.size(); ++a) {
    PowerPoint point;
    point.alternative = alternatives[a];
    point.replicates = replicates;
    try {
      alternatives[a].validate();
      const ProcessSampler sampler(alternatives[a], config.n, method, config.time_step);
      std::vector<unsigned char> rejected(replicates, 0);
      parallel_for(replicates, [&](std::size_t r) {
        std::vector<double> path(config.n);
        sampler.sample_levels(stream_seed(seed, {a, r}), path);
        rejected[r] = null.test(path).rejected ? 1 : 0;
      });
      for (unsigned char v : rejected) point.rejections += v;
      point.power = static_cast<double>(point.rejections) / static_cast<double>(replicates);
    } catch (const std::exception& e) {
      point.failed = true;
      point.failure = e.what();
      point.power = std::numeric_limits<double>::quiet_NaN();
    }
    curve.points.push_back(std::move(point));
  }
  return curve;
}

PowerCurve power_study(const TestConfig& config, std::span<const ProcessSpec> alternatives,
                       std::size_t replicates, std::uint64_t seed, SimulationMethod method) {
  if (replicates < 1) throw DomainError("power study needs at least one replicate");
  return power_study(NullModel(config), alternatives, replicates, seed, method);
}

void write_power_header(std::ostream& os) {
  os << "alt_kind,alt_H,alt_lambda,statistic,tau,N,M,power,status\n";
}

void write_power_rows(std::ostream& os, const PowerCurve& curve) {
  for (const PowerPoint& p : curve.points) {
    os << to_string(p.alternative.kind) << ',' << textio::fmt(p.alternative.hurst) << ','
       << textio::fmt(p.alternative.lambda) << ',' << to_string(curve.config.statistic.kind)
       << ',' << curve.config.statistic.tau << ',' << curve.config.n << ',' << curve.replicates
       << ',' << (p.failed ? std::string("nan") : textio::fmt(p.power)) << ','
       << (p.failed ? "failed" : "ok") << '\n';
  }
}

void write_csv(std::ostream& os, const PowerCurve& curve) {
  const TestConfig& c = curve.config;
  os << "# null_kind=" << to_string(c.null_spec.kind) << ",null_H=" << textio::fmt(c.null_spec.hurst)
     << ",null_lambda=" << textio::fmt(c.null_spec.lambda) << ",c=" << textio::fmt(c.significance)
     << ",L=" << c.null_draws << ",seed=" << c.seed << ",dt=" << textio::fmt(c.time_step) << '\n';
  write_power_header(os);
  write_power_rows(os, curve);
}

}  // namespace tfbm
