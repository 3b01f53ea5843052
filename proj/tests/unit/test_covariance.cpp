#include <doctest.h>

#include <cmath>
#include <sstream>
#include <tuple>

#include "oracles.hpp"
#include "tfbm/covariance.hpp"
#include "tfbm/error.hpp"

using namespace tfbm;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

ProcessSpec spec(ProcessKind k, double h, double l) { return make_spec(k, h, l); }

const ProcessSpec kCorners[] = {
    {ProcessKind::TFBM_I, 0.3, 0.3},  {ProcessKind::TFBM_I, 0.7, 2.0},
    {ProcessKind::TFBM_I, 0.9, 0.1},  {ProcessKind::TFBM_II, 0.3, 0.3},
    {ProcessKind::TFBM_II, 0.7, 2.0}, {ProcessKind::TFBM_II, 0.1, 3.0},
    {ProcessKind::TFBM_III, 0.7, 0.3}, {ProcessKind::TFBM_III, 0.55, 2.0},
    {ProcessKind::TFBM_III, 0.95, 0.1}, {ProcessKind::FBM, 0.2, 0.0},
    {ProcessKind::FBM, 0.5, 0.0},     {ProcessKind::FBM, 0.9, 0.0},
};

}  // namespace

TEST_CASE("FBM variance and covariance") {
  const auto bm = spec(ProcessKind::FBM, 0.5, 0.0);
  CHECK(process_variance(bm, 4.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(process_covariance(bm, 2.0, 5.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(increment_acvf(bm, 1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(variance_scale(spec(ProcessKind::FBM, 0.3, 0.0), 7.0) == 1.0);
  const auto f = spec(ProcessKind::FBM, 0.8, 0.0);
  // Fractional Gaussian noise: ((k+1)^2H - 2k^2H + (k-1)^2H) / 2.
  for (long k : {0L, 1L, 5L, 40L}) {
    const double kk = static_cast<double>(k);
    const double ref = 0.5 * (std::pow(kk + 1, 1.6) - 2 * std::pow(kk, 1.6) +
                              std::pow(std::abs(kk - 1), 1.6));
    CHECK(increment_acvf(f, k) == doctest::Approx(ref).epsilon(1e-13));
  }
}

TEST_CASE("tempered variances vanish at zero and are even") {
  for (const auto& s : kCorners) {
    CHECK(process_variance(s, 0.0) == 0.0);
    CHECK(process_variance(s, -3.5) == process_variance(s, 3.5));
  }
  CHECK_THROWS_AS(variance_scale(spec(ProcessKind::TFBM_I, 0.3, 0.3), 0.0), DomainError);
  CHECK_THROWS_AS(variance_scale(spec(ProcessKind::TFBM_II, 0.3, 0.3), 0.0), DomainError);
  CHECK_THROWS_AS(variance_scale(spec(ProcessKind::TFBM_III, 0.7, 0.3), -1.0), DomainError);
}

TEST_CASE("kind I variance against the spectral integral") {
  for (double h : {0.1, 0.3, 0.5, 0.7, 0.9, 1.4}) {
    for (double l : {0.1, 0.3, 2.0}) {
      for (double t : {0.5, 1.0, 2.0, 10.0, 60.0}) {
        CAPTURE(h);
        CAPTURE(l);
        CAPTURE(t);
        const double ref = oracle::tfbm1_variance_spectral(h, l, t);
        CHECK(rel(process_variance(spec(ProcessKind::TFBM_I, h, l), t), ref) < 1e-8);
      }
    }
  }
  // 30-digit references from an independent arbitrary-precision quadrature.
  CHECK(rel(process_variance(spec(ProcessKind::TFBM_I, 0.3, 0.3), 1.0), 1.776750807871744936) <
        1e-13);
  CHECK(rel(process_variance(spec(ProcessKind::TFBM_I, 0.7, 2.0), 10.0), 0.2547996207603109378) <
        1e-13);
}

TEST_CASE("kind II variance against the spectral integral") {
  for (double h : {0.1, 0.3, 0.7, 0.9, 1.3}) {
    for (double l : {0.1, 0.3, 2.0}) {
      for (double t : {0.5, 1.0, 3.0, 10.0}) {
        CAPTURE(h);
        CAPTURE(l);
        CAPTURE(t);
        const double ref = oracle::tfbm2_variance_spectral(h, l, t);
        CHECK(rel(process_variance(spec(ProcessKind::TFBM_II, h, l), t), ref) < 1e-8);
      }
    }
  }
  const std::tuple<double, double, double, double> refs[] = {
      {0.3, 0.3, 1.0, 1.919082601204833063},  {0.7, 2.0, 10.0, 6.287081934705971795},
      {0.7, 2.0, 60.0, 38.23209085191664474}, {0.3, 2.0, 10.0, 18.40358383876479174},
      {0.9, 0.3, 10.0, 16.97805100741466713},
  };
  for (const auto& [h, l, t, v] : refs) {
    CAPTURE(h);
    CAPTURE(t);
    CHECK(rel(process_variance(spec(ProcessKind::TFBM_II, h, l), t), v) < 1e-12);
  }
}

TEST_CASE("kind II is continuous where the closed form hands over to the asymptote") {
  for (double h : {0.2, 0.7, 0.95}) {
    const auto s = spec(ProcessKind::TFBM_II, h, 2.0);
    const double below = process_variance(s, 25.0 - 1e-12);
    const double above = process_variance(s, 25.0 + 1e-12);
    CAPTURE(h);
    CHECK(rel(above, below) < 1e-12);
  }
}

TEST_CASE("kind III variance against the extended-precision series") {
  for (double h : {0.55, 0.7, 0.9, 0.99}) {
    for (double l : {0.1, 0.3, 2.0}) {
      for (double t : {0.25, 1.0, 10.0, 100.0}) {
        const oracle::Huge e =
            oracle::mittag_leffler(1.0, 3.0 - 2.0 * h, 1.0 - 2.0 * h, -l * t);
        const double ref = 2.0 * std::pow(t, 2.0 - 2.0 * h) * static_cast<double>(e);
        CAPTURE(h);
        CAPTURE(l);
        CAPTURE(t);
        CHECK(rel(process_variance(spec(ProcessKind::TFBM_III, h, l), t), ref) < 1e-12);
      }
    }
  }
  CHECK(rel(process_variance(spec(ProcessKind::TFBM_III, 0.7, 0.3), 10.0), 13.99703043786223246) <
        1e-13);
}

TEST_CASE("kinds I and II obey the tempered scaling law") {
  // X_lambda(c t) has the law of c^H X_{c lambda}(t).
  for (auto kind : {ProcessKind::TFBM_I, ProcessKind::TFBM_II}) {
    for (double h : {0.3, 0.7}) {
      for (double c : {0.5, 2.0, 10.0}) {
        for (double t : {0.7, 3.0}) {
          const double lhs = process_variance(spec(kind, h, 0.4), c * t);
          const double rhs = std::pow(c, 2 * h) * process_variance(spec(kind, h, 0.4 * c), t);
          CHECK(rel(lhs, rhs) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("weak tempering is self-similar over short horizons") {
  for (auto kind : {ProcessKind::TFBM_I, ProcessKind::TFBM_II}) {
    for (double h : {0.4, 0.7}) {
      const auto s = spec(kind, h, 1e-8);
      const double c1 = process_variance(s, 1.0);
      for (double t = 2.0; t <= 20.0; t += 1.0) {
        CHECK(rel(process_variance(s, t) / std::pow(t, 2 * h), c1) < 1e-3);
      }
    }
  }
}

TEST_CASE("increment autocovariances sum to the level variance") {
  // V(n) = sum_{|k| < n} (n - |k|) gamma(k).
  for (const auto& s : kCorners) {
    for (long n : {1L, 7L, 100L}) {
      double sum = 0.0;
      for (long k = -(n - 1); k <= n - 1; ++k) {
        sum += static_cast<double>(n - std::abs(k)) * increment_acvf(s, k);
      }
      CAPTURE(describe(s));
      CAPTURE(n);
      CHECK(rel(sum, process_variance(s, static_cast<double>(n))) < 1e-8);
    }
  }
  CHECK(increment_acvf(kCorners[0], 0) == doctest::Approx(process_variance(kCorners[0], 1.0)));
}

TEST_CASE("kind I increments have vanishing total autocovariance") {
  // Var X(t) saturates, so sum_{|k| <= K} gamma(k) = V(K+1) - V(K) -> 0.
  const auto s = spec(ProcessKind::TFBM_I, 0.7, 2.0);
  double sum = 0.0;
  for (long k = -200; k <= 200; ++k) sum += increment_acvf(s, k);
  CHECK(std::abs(sum) < 1e-8);
}

TEST_CASE("covariance matrices are symmetric and positive semidefinite") {
  for (const auto& s : kCorners) {
    for (auto meaning : {CovarianceMeaning::process_levels, CovarianceMeaning::increment_noise}) {
      for (double dt : {1.0, 0.05}) {
        CAPTURE(describe(s));
        const auto c = covariance_matrix(s, 200, meaning, dt);
        CHECK(c.entries.rows() == 200);
        CHECK((c.entries - c.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
        const auto r = eigen_range(c.entries);
        CHECK(r.min >= -1e-8 * r.max);
      }
    }
  }
}

TEST_CASE("increment covariance is the differenced level covariance") {
  for (const auto& s : kCorners) {
    const std::size_t n = 40;
    const double dt = 0.25;
    const auto lev = covariance_matrix(s, n, CovarianceMeaning::process_levels, dt);
    const auto inc = covariance_matrix(s, n, CovarianceMeaning::increment_noise, dt);
    Eigen::MatrixXd d = Eigen::MatrixXd::Identity(n, n);
    for (std::size_t i = 1; i < n; ++i) d(i, i - 1) = -1.0;
    const Eigen::MatrixXd ref = d * lev.entries * d.transpose();
    CAPTURE(describe(s));
    CHECK((inc.entries - ref).cwiseAbs().maxCoeff() < 1e-10 * ref.cwiseAbs().maxCoeff());
    CHECK(lev.entries(2, 5) ==
          doctest::Approx(process_covariance(s, 3 * dt, 6 * dt)).epsilon(1e-14));
  }
}

TEST_CASE("kind III velocity autocorrelation") {
  CHECK(velocity_acf_iii(1.0, 0.75, 1.0) == doctest::Approx(0.2075538).epsilon(1e-6));
  for (double tau : {0.3, 1.0, 4.0}) {
    const double ratio = velocity_acf_iii(2 * tau, 0.8, 0.5) / velocity_acf_iii(tau, 0.8, 0.5);
    CHECK(ratio == doctest::Approx(std::pow(2.0, -0.4) * std::exp(-0.5 * tau)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(velocity_acf_iii(0.0, 0.7, 1.0), DomainError);
  CHECK_THROWS_AS(velocity_acf_iii(1.0, 0.4, 1.0), DomainError);
}

TEST_CASE("covariance CSV round trip") {
  const auto c = covariance_matrix(spec(ProcessKind::TFBM_II, 0.3, 0.3), 12,
                                   CovarianceMeaning::increment_noise, 0.5);
  std::stringstream ss;
  write_csv(ss, c);
  const auto back = read_covariance_csv(ss);
  CHECK(back.spec == c.spec);
  CHECK(back.meaning == c.meaning);
  CHECK((back.entries - c.entries).cwiseAbs().maxCoeff() == 0.0);
  std::stringstream bad("# tfbm1,0.3\n1,2\n");
  CHECK_THROWS_AS(read_covariance_csv(bad), DomainError);
}

TEST_CASE("invalid parameters are rejected with the violated constraint") {
  CHECK_THROWS_AS(make_spec(ProcessKind::TFBM_III, 0.4, 0.3), DomainError);
  CHECK_THROWS_AS(make_spec(ProcessKind::TFBM_I, 0.3, 0.0), DomainError);
  CHECK_THROWS_AS(make_spec(ProcessKind::TFBM_II, 1.0, 0.3), DomainError);
  CHECK_THROWS_AS(make_spec(ProcessKind::FBM, 1.0), DomainError);
  CHECK_THROWS_AS(make_spec(ProcessKind::TFBM_I, -0.1, 1.0), DomainError);
  try {
    make_spec(ProcessKind::TFBM_III, 0.4, 0.3);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("H > 0.5") != std::string::npos);
  }
  CHECK(parse_kind("TFBM_II") == ProcessKind::TFBM_II);
  CHECK_THROWS_AS(parse_kind("tfbm4"), DomainError);
  // Integer H is allowed for kind I (the Bessel form has no pole there).
  CHECK(std::isfinite(process_variance(spec(ProcessKind::TFBM_I, 1.0, 0.5), 2.0)));
}
