#pragma once

// Scalar special functions used by the closed-form variance scales.

#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>

#include "tfbm/error.hpp"

namespace tfbm::specfun {

/// Gamma function. Throws DomainError at the poles 0, -1, -2, ...
double gamma_fn(double x);

/// Reciprocal gamma, entire: returns 0 at the poles of gamma.
double rgamma(double x);

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.
double pochhammer(double a, unsigned n);

/// Modified Bessel function of the second kind K_nu(x), x > 0.
double bessel_k(double nu, double x);

/// exp(x) * K_nu(x); finite for large x where K_nu itself underflows.
double bessel_k_scaled(double nu, double x);

/// Stopping rule for hypergeometric partial sums.
struct SeriesControl {
  double rel_tol = 1e-16;
  std::size_t stable_terms = 50;
  std::size_t max_terms = 100000;
};

/// Sum of the 2F3 series with the n = 0 term removed, i.e. 2F3(...) - 1.
///
/// Templated so callers that need more headroom against cancellation can run
/// it in an extended-precision type. The series stops once the running term
/// has stayed below `rel_tol * |partial sum|` for `stable_terms` consecutive
/// terms (measured against the tail itself, which keeps 2F3 - 1 accurate
/// for small z); a factor that is exactly zero terminates it.
template <typename Real>
Real hyp_2f3_tail(const Real& a1, const Real& a2, const Real& b1, const Real& b2,
                  const Real& b3, const Real& z, const SeriesControl& ctl = {}) {
  using std::abs;
  Real sum = 0;
  Real term = 1;
  std::size_t quiet = 0;
  for (std::size_t n = 0; n < ctl.max_terms; ++n) {
    const Real k = static_cast<Real>(n);
    const Real num = (a1 + k) * (a2 + k);
    if (num == 0) return sum;  // terminating series
    const Real den = (b1 + k) * (b2 + k) * (b3 + k);
    if (den == 0) {
      throw DomainError("hyp_2f3: lower parameter hits a non-positive integer");
    }
    term *= num / den * z / (k + 1);
    sum += term;
    if (abs(term) <= Real(ctl.rel_tol) * abs(sum)) {
      if (++quiet >= ctl.stable_terms) return sum;
    } else {
      quiet = 0;
    }
  }
  std::ostringstream msg;
  msg << "hyp_2f3: no convergence after " << ctl.max_terms << " terms";
  throw ConvergenceError(msg.str());
}

/// Generalised hypergeometric 2F3({a1,a2},{b1,b2,b3},z) by direct summation.
double hyp_2f3(double a1, double a2, double b1, double b2, double b3, double z);

/// Options for the three-parameter Mittag-Leffler function.
struct MittagLefflerOptions {
  /// For alpha < 1 and z < 0 the asymptotic expansion is used once
  /// |z|^(1/alpha) reaches this value (truncation error near exp(-value)).
  /// alpha == 1 uses a Kummer-transformed series for every z < 0.
  double asymptotic_from = 60.0;
};

/// Three-parameter (Prabhakar) Mittag-Leffler function E^delta_{alpha,beta}(z)
/// for real arguments, alpha > 0 and beta > 0. The power series falls back to
/// 50-digit arithmetic when the double sum cancels; ConvergenceError is thrown
/// beyond that (large negative z with alpha > 1).
double mittag_leffler_3p(double alpha, double beta, double delta, double z,
                         const MittagLefflerOptions& opts = {});

}  // namespace tfbm::specfun
