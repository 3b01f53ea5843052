#include "tfbm/specfun.hpp"

#include <math.h>  // lgamma_r

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace tfbm::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double log_gamma(double x, int* sign) {
  int s = 1;
  const double v = ::lgamma_r(x, &s);
  if (sign) *sign = s;
  return v;
}

// Taylor coefficients of 1/Gamma(z) about z = 0, c[k] multiplies z^k.
constexpr std::array<double, 30> kRGammaTaylor = {
    0.0,
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
    -2.2987456844353702066e-19,
};

// Temme's auxiliary gamma quantities for |mu| <= 1/2:
//   gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu),  gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2
// evaluated from the Taylor series of 1/Gamma so that gam1 stays accurate as mu -> 0.
struct TemmeGammas {
  double gam1, gam2, gampl, gammi;
};

TemmeGammas temme_gammas(double mu) {
  double odd = 0.0;   // sum over even k of c_k mu^(k-2)  -> -gam1
  double even = 0.0;  // sum over odd k of c_k mu^(k-1)   ->  gam2
  for (std::size_t k = kRGammaTaylor.size() - 1; k >= 1; --k) {
    if (k % 2 == 0) {
      odd = odd * mu * mu + kRGammaTaylor[k];
    } else {
      even = even * mu * mu + kRGammaTaylor[k];
    }
  }
  TemmeGammas g{};
  g.gam1 = -odd;
  g.gam2 = even;
  g.gampl = g.gam2 - mu * g.gam1;  // 1/Gamma(1+mu)
  g.gammi = g.gam2 + mu * g.gam1;  // 1/Gamma(1-mu)
  return g;
}

// K_mu(x) and K_{mu+1}(x), each multiplied by exp(x) when `scaled`.
// |mu| <= 1/2. Temme's series for x < 2, Steed's continued fraction otherwise.
std::pair<double, double> bessel_k_pair(double mu, double x, bool scaled) {
  constexpr double pi = std::numbers::pi;
  constexpr int kMaxIter = 100000;
  double k_mu = 0.0;
  double k_mu1 = 0.0;
  if (x < 2.0) {
    const double x2 = 0.5 * x;
    const double pimu = pi * mu;
    const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.gampl;
    double q = 0.5 / (e * g.gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
      ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu * mu);
      c *= d / i;
      p /= (i - mu);
      q /= (i + mu);
      const double del = c * ff;
      sum += del;
      const double del1 = c * (p - i * ff);
      sum1 += del1;
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    if (i > kMaxIter) throw ConvergenceError("bessel_k: Temme series did not converge");
    k_mu = sum;
    k_mu1 = sum1 * (2.0 / x);
    if (scaled) {
      const double ex = std::exp(x);
      k_mu *= ex;
      k_mu1 *= ex;
    }
  } else {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25 - mu * mu;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i <= kMaxIter; ++i) {
      a -= 2 * (i - 1);
      c = -a * c / i;
      const double qnew = (q1 - b * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += c * qnew;
      b += 2.0;
      d = 1.0 / (b + a * d);
      delh = (b * d - 1.0) * delh;
      h += delh;
      const double dels = q * delh;
      s += dels;
      if (std::abs(dels / s) < kEps) break;
    }
    if (i > kMaxIter) throw ConvergenceError("bessel_k: continued fraction did not converge");
    h = a1 * h;
    k_mu = std::sqrt(pi / (2.0 * x)) / s;
    if (!scaled) k_mu *= std::exp(-x);
    k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
  }
  return {k_mu, k_mu1};
}

double bessel_k_impl(double nu, double x, bool scaled) {
  if (!(x > 0.0)) throw DomainError("bessel_k: argument must be positive");
  nu = std::abs(nu);
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  auto [k_mu, k_mu1] = bessel_k_pair(mu, x, scaled);
  const double xi2 = 2.0 / x;
  for (int i = 1; i <= nl; ++i) {
    const double next = (mu + i) * xi2 * k_mu1 + k_mu;
    k_mu = k_mu1;
    k_mu1 = next;
  }
  return k_mu;
}

// Signed log-magnitude terms of a power series, summed after rescaling by
// the largest term. Used where individual terms overflow a double.
struct LogTerm {
  double log_abs;
  int sign;
};

struct LogSum {
  double log_abs;   // log |sum|
  int sign;         // sign of the sum (0 if exactly zero)
  double cancel;    // sum |t_k| / |sum t_k|
};

LogSum sum_log_terms(const std::vector<LogTerm>& terms) {
  double peak = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    if (t.sign != 0 && t.log_abs > peak) peak = t.log_abs;
  }
  if (!std::isfinite(peak)) return {peak, 0, 1.0};
  // Neumaier compensated summation of the rescaled terms.
  double s = 0.0;
  double comp = 0.0;
  double abs_sum = 0.0;
  for (const auto& t : terms) {
    if (t.sign == 0) continue;
    const double v = t.sign * std::exp(t.log_abs - peak);
    abs_sum += std::abs(v);
    const double next = s + v;
    if (std::abs(s) >= std::abs(v)) {
      comp += (s - next) + v;
    } else {
      comp += (v - next) + s;
    }
    s = next;
  }
  s += comp;
  if (s == 0.0) return {-std::numeric_limits<double>::infinity(), 0,
                        std::numeric_limits<double>::infinity()};
  return {peak + std::log(std::abs(s)), s > 0 ? 1 : -1, abs_sum / std::abs(s)};
}

constexpr std::size_t kMlMaxTerms = 100000;
constexpr double kMlCancelLimit = 1e7;

// Same series in 50-digit arithmetic, for arguments where the double sum
// cancels. Good for cancellation up to about 1e34.
double ml_power_series_mp(double alpha, double beta, double delta, double z) {
  using Real = boost::multiprecision::cpp_bin_float_50;
  const Real a(alpha);
  const Real b(beta);
  const Real zz(z);
  Real poch_over_fact = 1;  // (delta)_k z^k / k!
  Real sum = 0;
  Real abs_sum = 0;
  Real peak = 0;
  std::size_t quiet = 0;
  for (std::size_t k = 0; k < kMlMaxTerms; ++k) {
    if (k > 0) {
      const Real f = Real(delta) + static_cast<double>(k - 1);
      if (f == 0) break;
      poch_over_fact *= f * zz / static_cast<double>(k);
    }
    const Real arg = a * static_cast<double>(k) + b;
    const Real term = poch_over_fact / boost::math::tgamma(arg);
    sum += term;
    abs_sum += abs(term);
    if (abs(term) > peak) peak = abs(term);
    if (abs(term) < peak * 1e-50 && static_cast<double>(k) > std::abs(z)) {
      if (++quiet >= 10) {
        if (sum == 0 || abs_sum / abs(sum) > 1e34) {
          throw ConvergenceError(
              "mittag_leffler_3p: cancellation in the power series exceeds 50 digits");
        }
        return static_cast<double>(sum);
      }
    } else {
      quiet = 0;
    }
  }
  throw ConvergenceError("mittag_leffler_3p: series did not converge");
}

// Sum_k (delta)_k / Gamma(alpha k + beta) z^k / k!  (direct power series).
double ml_power_series(double alpha, double beta, double delta, double z) {
  std::vector<LogTerm> terms;
  const double log_abs_z = z == 0.0 ? -std::numeric_limits<double>::infinity()
                                    : std::log(std::abs(z));
  const int z_sign = z < 0.0 ? -1 : 1;
  double log_poch = 0.0;  // log |(delta)_k|
  int poch_sign = 1;
  double peak = -std::numeric_limits<double>::infinity();
  std::size_t quiet = 0;
  for (std::size_t k = 0; k < kMlMaxTerms; ++k) {
    if (k > 0) {
      const double f = delta + static_cast<double>(k - 1);
      if (f == 0.0) break;  // (delta)_k vanishes from here on
      log_poch += std::log(std::abs(f));
      if (f < 0.0) poch_sign = -poch_sign;
      if (z == 0.0) break;
    }
    int g_sign = 1;
    const double arg = alpha * static_cast<double>(k) + beta;
    const double lg = log_gamma(arg, &g_sign);
    const double lt = log_poch + (k == 0 ? 0.0 : static_cast<double>(k) * log_abs_z) -
                      log_gamma(static_cast<double>(k) + 1.0, nullptr) - lg;
    int sign = poch_sign * g_sign;
    if (k % 2 == 1 && z_sign < 0) sign = -sign;
    terms.push_back({lt, sign});
    if (lt > peak) peak = lt;
    // Past the peak and 40 orders of magnitude down: the tail is negligible.
    if (lt < peak - 92.0 && static_cast<double>(k) > std::abs(z)) {
      if (++quiet >= 10) break;
    } else {
      quiet = 0;
    }
    if (k + 1 == kMlMaxTerms) {
      throw ConvergenceError("mittag_leffler_3p: series did not converge");
    }
  }
  const LogSum s = sum_log_terms(terms);
  if (s.sign == 0) return 0.0;
  if (s.cancel > kMlCancelLimit) return ml_power_series_mp(alpha, beta, delta, z);
  return s.sign * std::exp(s.log_abs);
}

// alpha = 1: E^delta_{1,beta}(-x) = exp(-x) 1F1(beta - delta; beta; x) / Gamma(beta),
// whose transformed series has no alternating cancellation for large x.
double ml_alpha1_negative(double beta, double delta, double x) {
  const double c = beta - delta;
  std::vector<LogTerm> terms;
  double log_t = 0.0;
  int sign = 1;
  double peak = 0.0;
  std::size_t quiet = 0;
  const double log_x = std::log(x);
  terms.push_back({0.0, 1});
  for (std::size_t k = 0; k + 1 < kMlMaxTerms; ++k) {
    const double kk = static_cast<double>(k);
    const double f = c + kk;
    if (f == 0.0) break;
    log_t += std::log(std::abs(f)) - std::log(beta + kk) + log_x - std::log(kk + 1.0);
    if (f < 0.0) sign = -sign;
    terms.push_back({log_t, sign});
    if (log_t > peak) peak = log_t;
    if (log_t < peak - 92.0 && kk > x) {
      if (++quiet >= 10) break;
    } else {
      quiet = 0;
    }
    if (k + 2 == kMlMaxTerms) {
      throw ConvergenceError("mittag_leffler_3p: Kummer series did not converge");
    }
  }
  const LogSum s = sum_log_terms(terms);
  if (s.sign == 0) return 0.0;
  if (s.cancel > kMlCancelLimit) {
    throw ConvergenceError("mittag_leffler_3p: cancellation in the Kummer series");
  }
  return s.sign * std::exp(s.log_abs - x - log_gamma(beta, nullptr));
}

// Algebraic asymptotic expansion on the negative real axis. Complete for
// 0 < alpha < 1; for larger alpha exponentially small oscillating terms are
// missing, so it is not used there.
//   E ~ sum_k (-1)^k (delta)_k / k! x^(-delta-k) / Gamma(beta - alpha (delta + k)).
// Truncated where the envelope |(delta)_k / k!| x^(-delta-k) Gamma(1 - beta + alpha (delta + k)) / pi
// of the terms is smallest; the terms themselves oscillate with sin(pi (beta - ...)).
double ml_asymptotic_negative(double alpha, double beta, double delta, double x) {
  double sum = 0.0;
  double log_pf = 0.0;  // log |(delta)_k / k!|
  int pf_sign = 1;
  double prev_env = std::numeric_limits<double>::infinity();
  const double log_x = std::log(x);
  for (int k = 0; k < 2000; ++k) {
    if (k > 0) {
      const double f = (delta + k - 1) / k;
      if (f == 0.0) break;
      log_pf += std::log(std::abs(f));
      if (f < 0.0) pf_sign = -pf_sign;
    }
    const double e = delta + k;
    const double y = 1.0 - beta + alpha * e;
    const double log_mag = log_pf - e * log_x;
    if (y > 0.5) {
      const double env = log_mag + log_gamma(y, nullptr) - std::log(std::numbers::pi);
      if (env > prev_env) break;
      prev_env = env;
      if (env < std::log(1e-17) + std::log(std::abs(sum) + 1e-300)) {
        sum += ((k % 2) ? -1.0 : 1.0) * pf_sign * std::exp(log_mag) * rgamma(beta - alpha * e);
        break;
      }
    }
    sum += ((k % 2) ? -1.0 : 1.0) * pf_sign * std::exp(log_mag) * rgamma(beta - alpha * e);
  }
  return sum;
}

}  // namespace

double gamma_fn(double x) {
  if (is_nonpositive_integer(x)) throw DomainError("gamma_fn: pole at a non-positive integer");
  return std::tgamma(x);
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 171.0) return 0.0;
  return 1.0 / std::tgamma(x);
}

double pochhammer(double a, unsigned n) {
  double p = 1.0;
  for (unsigned k = 0; k < n; ++k) p *= a + k;
  return p;
}

double bessel_k(double nu, double x) { return bessel_k_impl(nu, x, false); }

double bessel_k_scaled(double nu, double x) { return bessel_k_impl(nu, x, true); }

double hyp_2f3(double a1, double a2, double b1, double b2, double b3, double z) {
  return 1.0 + hyp_2f3_tail<double>(a1, a2, b1, b2, b3, z);
}

double mittag_leffler_3p(double alpha, double beta, double delta, double z,
                         const MittagLefflerOptions& opts) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw DomainError("mittag_leffler_3p: requires alpha > 0 and beta > 0");
  }
  if (!std::isfinite(z)) throw DomainError("mittag_leffler_3p: non-finite argument");
  if (z < 0.0 && alpha == 1.0) return ml_alpha1_negative(beta, delta, -z);
  if (z < 0.0 && alpha < 1.0 && std::pow(-z, 1.0 / alpha) >= opts.asymptotic_from) {
    return ml_asymptotic_negative(alpha, beta, delta, -z);
  }
  return ml_power_series(alpha, beta, delta, z);
}

}  // namespace tfbm::specfun
