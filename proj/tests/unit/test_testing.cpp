#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "tfbm/error.hpp"
#include "tfbm/parallel.hpp"
#include "tfbm/simulate.hpp"
#include "tfbm/testing.hpp"

using namespace tfbm;

namespace {

TestConfig config(StatisticKind kind, std::size_t n = 200) {
  TestConfig c;
  c.null_spec = make_spec(ProcessKind::TFBM_I, 0.3, 0.3);
  c.statistic = {kind, default_tau(kind)};
  c.n = n;
  c.null_draws = 4000;
  c.seed = 5;
  return c;
}

}  // namespace

TEST_CASE("default lags") {
  CHECK(default_tau(StatisticKind::ACVF) == 1);
  CHECK(default_tau(StatisticKind::TAMSD) == 1);
  CHECK(default_tau(StatisticKind::DMA) == 2);
}

TEST_CASE("ACVF acts on increments with X(0) = 0") {
  const std::vector<double> levels = {1.0, 3.0, 6.0, 5.0};
  const auto inc = statistic_input(StatisticKind::ACVF, levels);
  CHECK(inc == std::vector<double>{1.0, 2.0, 3.0, -1.0});
  CHECK(statistic_input(StatisticKind::TAMSD, levels) == levels);
  const StatisticSpec acvf{StatisticKind::ACVF, 1};
  CHECK(observed_statistic(acvf, levels) == doctest::Approx((2.0 + 6.0 - 3.0) / 3.0));
  const auto c = null_covariance(config(StatisticKind::ACVF));
  CHECK(c.meaning == CovarianceMeaning::increment_noise);
  CHECK(null_covariance(config(StatisticKind::DMA)).meaning == CovarianceMeaning::detrended);
  CHECK(null_covariance(config(StatisticKind::TAMSD)).meaning ==
        CovarianceMeaning::process_levels);
}

TEST_CASE("a constant path is rejected by TAMSD and DMA") {
  const std::vector<double> zero(200, 0.0);
  CHECK(run_test(zero, config(StatisticKind::TAMSD)).rejected);
  CHECK(run_test(zero, config(StatisticKind::DMA)).rejected);
  CHECK(run_test(zero, config(StatisticKind::TAMSD)).statistic_value == 0.0);
}

TEST_CASE("rejection rate under the null is near the significance level") {
  for (auto kind : {StatisticKind::ACVF, StatisticKind::DMA, StatisticKind::TAMSD}) {
    const NullModel null(config(kind));
    const ProcessSpec alt[] = {null.config().null_spec};
    const auto curve = power_study(null, alt, 2000, 77);
    REQUIRE(curve.points.size() == 1);
    CAPTURE(to_string(kind));
    // Binomial standard error at 0.05 with 2000 replicates is about 0.005.
    CHECK(curve.points[0].power > 0.03);
    CHECK(curve.points[0].power < 0.07);
    CHECK(curve.points[0].replicates == 2000);
    CHECK_FALSE(curve.points[0].failed);
  }
}

TEST_CASE("a distant alternative is rejected") {
  auto c = config(StatisticKind::TAMSD, 500);
  // On a unit grid every FBM has V(1) = 1, so lag-one TAMSD needs a finer step.
  c.null_spec = make_spec(ProcessKind::FBM, 0.3);
  c.time_step = 0.01;
  const ProcessSpec alt[] = {make_spec(ProcessKind::FBM, 0.8)};
  const auto curve = power_study(c, alt, 200, 3);
  CHECK(curve.points[0].power > 0.95);
}

TEST_CASE("decisions are invariant when path and null are scaled together") {
  // Scaling X by k multiplies the statistic by k^2; FBM with the matching
  // time step has Var scaled by k^2 as well (dt^(2H) = k^2).
  const double h = 0.5;
  const double k = 3.0;
  auto base = config(StatisticKind::DMA);
  base.null_spec = make_spec(ProcessKind::FBM, h);
  auto scaled = base;
  scaled.time_step = std::pow(k, 1.0 / h);
  const auto batch = simulate_process(base.null_spec, base.n, 50, SimulationMethod::automatic, 8);
  const NullModel a(base), b(scaled);
  CHECK(b.region().lower == doctest::Approx(k * k * a.region().lower).epsilon(1e-10));
  for (Eigen::Index r = 0; r < batch.m(); ++r) {
    std::vector<double> x(batch.values.row(r).begin(), batch.values.row(r).end());
    std::vector<double> y = x;
    for (auto& v : y) v *= k;
    const auto oa = a.test(x);
    const auto ob = b.test(y);
    CHECK(ob.statistic_value == doctest::Approx(k * k * oa.statistic_value).epsilon(1e-12));
    CHECK(oa.rejected == ob.rejected);
  }
}

TEST_CASE("power studies are reproducible and thread independent") {
  const auto c = config(StatisticKind::ACVF, 100);
  const ProcessSpec alts[] = {make_spec(ProcessKind::TFBM_II, 0.5, 0.3),
                              make_spec(ProcessKind::FBM, 0.4)};
  const unsigned saved = thread_count();
  set_thread_count(1);
  const auto a = power_study(c, alts, 300, 12);
  set_thread_count(4);
  const auto b = power_study(c, alts, 300, 12);
  set_thread_count(saved);
  for (std::size_t i = 0; i < 2; ++i) CHECK(a.points[i].rejections == b.points[i].rejections);
  std::ostringstream sa, sb;
  write_csv(sa, a);
  write_csv(sb, b);
  CHECK(sa.str() == sb.str());
}

TEST_CASE("a failing alternative is marked instead of aborting the study") {
  const auto c = config(StatisticKind::TAMSD, 100);
  const ProcessSpec alts[] = {ProcessSpec{ProcessKind::TFBM_III, 0.4, 0.3},
                              make_spec(ProcessKind::FBM, 0.3)};
  const auto curve = power_study(c, alts, 50, 1);
  REQUIRE(curve.points.size() == 2);
  CHECK(curve.points[0].failed);
  CHECK(std::isnan(curve.points[0].power));
  CHECK_FALSE(curve.points[0].failure.empty());
  CHECK_FALSE(curve.points[1].failed);
  std::ostringstream os;
  write_power_rows(os, curve);
  CHECK(os.str().find("tfbm3,0.4,0.3,tamsd,1,100,50,nan,failed") != std::string::npos);
}

TEST_CASE("power CSV layout") {
  const auto c = config(StatisticKind::DMA, 50);
  const ProcessSpec alts[] = {make_spec(ProcessKind::FBM, 0.3)};
  const auto curve = power_study(c, alts, 20, 1);
  std::ostringstream os;
  write_csv(os, curve);
  std::istringstream is(os.str());
  std::string meta, header, row;
  std::getline(is, meta);
  std::getline(is, header);
  std::getline(is, row);
  CHECK(meta.rfind("# null_kind=tfbm1", 0) == 0);
  CHECK(header == "alt_kind,alt_H,alt_lambda,statistic,tau,N,M,power,status");
  CHECK(row.rfind("fbm,0.3,0,dma,2,50,20,", 0) == 0);
}

TEST_CASE("configuration errors") {
  auto c = config(StatisticKind::TAMSD);
  c.significance = 1.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = config(StatisticKind::DMA);
  c.statistic.tau = 1;
  CHECK_THROWS_AS(NullModel{c}, DomainError);
  c = config(StatisticKind::TAMSD);
  c.null_draws = 1;
  CHECK_THROWS_AS(c.validate(), DomainError);
  const NullModel null(config(StatisticKind::TAMSD));
  const std::vector<double> short_path(50, 1.0);
  CHECK_THROWS_AS(null.test(short_path), DomainError);
}
