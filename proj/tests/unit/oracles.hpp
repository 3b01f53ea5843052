#pragma once

// Reference implementations used only by the tests. Each one reaches the
// same quantity as the library through a different route (Fourier
// integrals, extended-precision series, closed forms).

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cmath>
#include <numbers>

namespace oracle {

using Big = boost::multiprecision::cpp_dec_float_50;
using Huge = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<160>>;

/// Partial sums of sum_k (a1)_k (a2)_k / ((b1)_k (b2)_k (b3)_k k!) z^k in 50 digits.
inline Big hyp_2f3(double a1, double a2, double b1, double b2, double b3, double z) {
  Big sum = 1, term = 1;
  for (int k = 0; k < 50000; ++k) {
    term = term * (Big(a1) + k) * (Big(a2) + k) / ((Big(b1) + k) * (Big(b2) + k) * (Big(b3) + k)) *
           Big(z) / (k + 1);
    sum += term;
    if (k > 30 && abs(term) < Big("1e-48") * abs(sum)) break;
  }
  return sum;
}

/// sum_k (delta)_k z^k / (k! Gamma(alpha k + beta)) in 160 digits.
inline Huge mittag_leffler(double alpha, double beta, double delta, double z) {
  Huge sum = 0, poch = 1, zk = 1, fact = 1;
  for (int k = 0; k < 20000; ++k) {
    if (k > 0) {
      poch *= Huge(delta) + (k - 1);
      zk *= Huge(z);
      fact *= k;
    }
    const Huge term = poch * zk / (fact * boost::math::tgamma(Huge(alpha) * k + Huge(beta)));
    sum += term;
    if (k > 2 * std::abs(z) + 30 && abs(term) < Huge("1e-60") * (abs(sum) + Huge("1e-300"))) break;
  }
  return sum;
}

/// Var X(t) of TFBM I from its spectral density:
///   Gamma(H+1/2)^2 / pi * int_0^inf 4 sin^2(w t / 2) (lambda^2 + w^2)^(-H-1/2) dw
///   = 2 c [ int g - int cos(w t) g ],
/// with the cosine transform done by Ooura's double-exponential rule.
inline double tfbm1_variance_spectral(double h, double lambda, double t) {
  const double c = std::pow(std::tgamma(h + 0.5), 2) / std::numbers::pi;
  const double g0 = std::pow(lambda, -2.0 * h) * std::sqrt(std::numbers::pi) * std::tgamma(h) /
                    (2.0 * std::tgamma(h + 0.5));
  boost::math::quadrature::ooura_fourier_cos<double> cosine;
  const auto g = [&](double w) { return std::pow(lambda * lambda + w * w, -h - 0.5); };
  const double ct = cosine.integrate(g, t).first;
  return 2.0 * c * (g0 - ct);
}

/// Var X(t) of TFBM II from its spectral density
///   Gamma(H+1/2)^2 / pi * int_0^inf 4 sin^2(w t / 2) / w^2 (lambda^2 + w^2)^(1/2-H) dw,
/// by Gauss-Kronrod panels up to W = 2 pi K / t and an explicit tail.
inline double tfbm2_variance_spectral(double h, double lambda, double t, int periods = 40) {
  using boost::math::quadrature::gauss_kronrod;
  const double c = std::pow(std::tgamma(h + 0.5), 2) / std::numbers::pi;
  const auto g = [&](double w) { return std::pow(lambda * lambda + w * w, 0.5 - h); };
  const auto f = [&](double w) {
    const double u = 0.5 * w * t;
    const double sinc = u == 0.0 ? 1.0 : std::sin(u) / u;
    return t * t * sinc * sinc * g(w);
  };
  const double period = 2.0 * std::numbers::pi / t;
  double body = 0.0;
  for (int k = 0; k < 4 * periods; ++k) {
    body += gauss_kronrod<double, 61>::integrate(f, k * period / 4, (k + 1) * period / 4, 0, 1e-14);
  }
  const double w_end = periods * period;
  boost::math::quadrature::exp_sinh<double> half_line;
  const double flat = half_line.integrate(
      [&](double x) { return 2.0 * g(x + w_end) / ((x + w_end) * (x + w_end)); });
  boost::math::quadrature::ooura_fourier_cos<double> cosine;
  const double osc =
      cosine.integrate([&](double x) { return g(x + w_end) / ((x + w_end) * (x + w_end)); }, t)
          .first;
  return c * (body + flat - 2.0 * osc);
}

}  // namespace oracle
