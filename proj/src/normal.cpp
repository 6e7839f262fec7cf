#include "panelprec/normal.hpp"

#include <algorithm>
#include <array>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numbers>

#include "panelprec/errors.hpp"

namespace panelprec::normal {
namespace {

// Gauss-Legendre half-rules on [-1, 1] (positive nodes, n = 6, 12, 20).
constexpr std::array<double, 3> kW6 = {0.1713244923791705, 0.3607615730481384, 0.4679139345726904};
constexpr std::array<double, 3> kX6 = {0.9324695142031522, 0.6612093864662647, 0.2386191860831970};
constexpr std::array<double, 6> kW12 = {0.04717533638651177, 0.1069393259953183, 0.1600783285433464,
                                        0.2031674267230659,  0.2334925365383547, 0.2491470458134029};
constexpr std::array<double, 6> kX12 = {0.9815606342467191, 0.9041172563704750, 0.7699026741943050,
                                        0.5873179542866171, 0.3678314989981802, 0.1252334085114692};
constexpr std::array<double, 10> kW20 = {0.01761400713915212, 0.04060142980038694, 0.06267204833410906,
                                         0.08327674157670475, 0.1019301198172404,  0.1181945319615184,
                                         0.1316886384491766,  0.1420961093183821,  0.1491729864726037,
                                         0.1527533871307259};
constexpr std::array<double, 10> kX20 = {0.9931285991850949, 0.9639719272779138, 0.9122344282513259,
                                         0.8391169718222188, 0.7463319064601508, 0.6360536807265150,
                                         0.5108670019508271, 0.3737060887154196, 0.2277858511416451,
                                         0.07652652113349733};

struct Rule {
  const double* w;
  const double* x;
  std::size_t n;
};

Rule rule_for(double abs_rho) {
  if (abs_rho < 0.3) return {kW6.data(), kX6.data(), kW6.size()};
  if (abs_rho < 0.75) return {kW12.data(), kX12.data(), kW12.size()};
  return {kW20.data(), kX20.data(), kW20.size()};
}

// Upper orthant P(X > h, Y > k) for |rho| < 1, after Genz (2004), "Numerical
// computation of rectangular bivariate and trivariate normal and t
// probabilities". Fixed Gauss-Legendre nodes on the correlation integral;
// a tail-adjusted substitution for |rho| >= 0.925.
double genz_upper(double h, double k, double r) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const Rule rule = rule_for(std::abs(r));
  double hk = h * k;
  double bvn = 0.0;

  if (std::abs(r) < 0.925) {
    const double hs = (h * h + k * k) / 2.0;
    const double asr = std::asin(r) / 2.0;
    for (std::size_t i = 0; i < rule.n; ++i) {
      for (const double node : {1.0 - rule.x[i], 1.0 + rule.x[i]}) {
        const double sn = std::sin(asr * node);
        bvn += rule.w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
      }
    }
    return bvn * asr / two_pi + survival(h) * survival(k);
  }

  if (r < 0.0) {
    k = -k;
    hk = -hk;
  }
  const double as = 1.0 - r * r;
  double a = std::sqrt(as);
  const double bs = (h - k) * (h - k);
  const double c = (4.0 - hk) / 8.0;
  const double d = (12.0 - hk) / 80.0;
  double asr = -(bs / as + hk) / 2.0;
  if (asr > -100.0) bvn = a * std::exp(asr) * (1.0 - c * (bs - as) * (1.0 - d * bs) / 3.0 + c * d * as * as);
  if (hk > -100.0) {
    const double b = std::sqrt(bs);
    const double sp = std::sqrt(two_pi) * cdf(-b / a);
    bvn -= std::exp(-hk / 2.0) * sp * b * (1.0 - c * bs * (1.0 - d * bs) / 3.0);
  }
  a /= 2.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.n; ++i) {
    for (const double node : {1.0 - rule.x[i], 1.0 + rule.x[i]}) {
      const double xs = (a * node) * (a * node);
      asr = -(bs / xs + hk) / 2.0;
      if (asr <= -100.0) continue;
      const double sp = 1.0 + c * xs * (1.0 + 5.0 * d * xs);
      const double rs = std::sqrt(1.0 - xs);
      const double ep = std::exp(-(hk / 2.0) * xs / ((1.0 + rs) * (1.0 + rs))) / rs;
      sum += rule.w[i] * std::exp(asr) * (sp - ep);
    }
  }
  bvn = (a * sum - bvn) / two_pi;

  if (r > 0.0) return bvn + survival(std::max(h, k));
  if (h >= k) return -bvn;
  const double gap = h < 0.0 ? cdf(k) - cdf(h) : survival(h) - survival(k);
  return gap - bvn;
}

}  // namespace

double cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double survival(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal quantile: p must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double bivariate_upper(double h, double k, double rho) {
  if (!(rho >= -1.0 && rho <= 1.0)) throw DomainError("bivariate normal: rho must lie in [-1, 1]");
  if (std::isinf(h) && h > 0) return 0.0;
  if (std::isinf(k) && k > 0) return 0.0;
  if (std::isinf(h)) return std::isinf(k) ? 1.0 : survival(k);
  if (std::isinf(k)) return survival(h);
  if (rho == 0.0) return survival(h) * survival(k);
  if (rho == 1.0) return survival(std::max(h, k));
  if (rho == -1.0) return std::max(0.0, survival(h) - cdf(k));
  return std::clamp(genz_upper(h, k, rho), 0.0, 1.0);
}

double bivariate_cdf(double z1, double z2, double rho) { return bivariate_upper(-z1, -z2, rho); }

}  // namespace panelprec::normal
