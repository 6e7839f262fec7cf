#include "panelprec/core_model.hpp"

#include <algorithm>
#include <cmath>

#include "panelprec/errors.hpp"

namespace panelprec::model {
namespace {

void check_quantile(double q, const char* what) {
  if (!(q > 0.0 && q <= 1.0)) throw DomainError(std::string(what) + ": q must lie in (0, 1]");
}

void check_rho(double rho, const char* what) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError(std::string(what) + ": rho must lie in [0, 1]");
}

void check_n(int n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + ": panel size must be >= 1");
}

}  // namespace

void PanelQuery::validate() const {
  check_quantile(q, "PanelQuery");
  check_rho(rho, "PanelQuery");
  check_n(n, "PanelQuery");
}

double clip_quantile(double q) {
  check_quantile(q, "clip_quantile");
  return std::clamp(q, kClipLow, kClipHigh);
}

double efficiency_exponent(double q, double rho, ExponentForm form) {
  check_quantile(q, "efficiency_exponent");
  check_rho(rho, "efficiency_exponent");
  const double base = form == ExponentForm::Clipped ? clip_quantile(q) : q;
  return base + kRhoSlope * (1.0 - rho);
}

double effective_rho(int n, double rho, double b) {
  check_n(n, "effective_rho");
  check_rho(rho, "effective_rho");
  if (!(b > 0.0)) throw DomainError("effective_rho: b must be positive");
  const double nb = std::pow(static_cast<double>(n), b);
  return rho * nb / (1.0 + (nb - 1.0) * rho);
}

double panel_precision(const PanelQuery& query, ExponentForm form) {
  query.validate();
  const double b = efficiency_exponent(query.q, query.rho, form);
  const double nb = std::pow(static_cast<double>(query.n), b);
  const double p = (query.rho * nb + query.q * (1.0 - query.rho)) / (1.0 + (nb - 1.0) * query.rho);
  return std::clamp(p, 0.0, 1.0);
}

double single_precision_linear(double q, double rho) {
  check_quantile(q, "single_precision_linear");
  check_rho(rho, "single_precision_linear");
  return rho + q * (1.0 - rho);
}

double p20_single(double rho) {
  check_rho(rho, "p20_single");
  return 0.2 + 0.5 * rho + 0.3 * std::pow(rho, 10);
}

double single_precision_above20(double q, double rho, Above20Form form) {
  check_quantile(q, "single_precision_above20");
  check_rho(rho, "single_precision_above20");
  const double linear = form == Above20Form::Refined ? 0.625 : 0.6;
  return q + (1.0 - q) * (linear * rho + (1.0 - linear) * std::pow(rho, 10));
}

double spearman_brown(int n, double rho_bar) {
  check_n(n, "spearman_brown");
  check_rho(rho_bar, "spearman_brown");
  const double k = static_cast<double>(n);
  return k * rho_bar / (1.0 + (k - 1.0) * rho_bar);
}

double pearson_from_model(const LinearScoreModel& model) {
  if (!(model.a > 0.0)) throw DomainError("pearson_from_model: gain a must be positive");
  if (!(model.sigma_v > 0.0)) throw DomainError("pearson_from_model: sigma_v must be positive");
  if (!(model.sigma_eps >= 0.0)) throw DomainError("pearson_from_model: sigma_eps must be >= 0");
  const double signal = model.a * model.sigma_v;
  return signal / std::hypot(signal, model.sigma_eps);
}

std::optional<int> required_panel_size(double q, double rho, double target, int n_max,
                                       ExponentForm form) {
  if (!(target > 0.0 && target < 1.0)) throw DomainError("required_panel_size: target must lie in (0, 1)");
  if (n_max < 1) throw DomainError("required_panel_size: n_max must be >= 1");
  for (int n = 1; n <= n_max; ++n) {
    if (panel_precision({q, rho, n}, form) >= target) return n;
  }
  return std::nullopt;
}

std::vector<std::string> regime_warnings(double q, double rho) {
  std::vector<std::string> out;
  if (q < 0.05) out.emplace_back("q < 0.05: the efficiency exponent is not reliable for very small quantiles");
  if (rho > 0.9) out.emplace_back("rho > 0.9: the efficiency exponent drops off sharply and the law overestimates");
  return out;
}

}  // namespace panelprec::model
