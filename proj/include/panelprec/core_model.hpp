#pragma once

#include <optional>
#include <string>
#include <vector>

// Closed-form precision laws for a panel of n correlated scorers selecting
// the top q-quantile of m candidates.
namespace panelprec::model {

/// Which quantile enters the efficiency exponent b.
enum class ExponentForm {
  Clipped,    ///< b = clip(q, 0.07, 0.22) + 0.8 (1 - rho); the headline law.
  Unclipped,  ///< b = q + 0.8 (1 - rho).
};

/// Coefficient set for the single-scorer law above the 20% quantile.
enum class Above20Form {
  Refined,  ///< 0.625 rho + 0.375 rho^10
  Crude,    ///< 0.6 rho + 0.4 rho^10
};

inline constexpr double kClipLow = 0.07;
inline constexpr double kClipHigh = 0.22;
inline constexpr double kRhoSlope = 0.8;

struct PanelQuery {
  double q = 0.2;    ///< selection quantile in (0, 1]
  double rho = 0.5;  ///< mean pairwise correlation in [0, 1]
  int n = 1;         ///< panel size >= 1

  void validate() const;
};

/// X_ij = a v_j + c + eps_ij with signal sd sigma_v and noise sd sigma_eps.
struct LinearScoreModel {
  double a = 1.0;
  double c = 0.0;
  double sigma_v = 1.0;
  double sigma_eps = 0.0;
};

double clip_quantile(double q);

double efficiency_exponent(double q, double rho, ExponentForm form = ExponentForm::Clipped);

/// rho n^b / (1 + (n^b - 1) rho); b = 1 reproduces Spearman-Brown.
double effective_rho(int n, double rho, double b);

double panel_precision(const PanelQuery& query, ExponentForm form = ExponentForm::Clipped);

/// rho + q (1 - rho).
double single_precision_linear(double q, double rho);

/// 0.2 + 0.5 rho + 0.3 rho^10.
double p20_single(double rho);

/// q + (1 - q)(alpha rho + (1 - alpha) rho^10). Intended for q >= 0.2; smaller
/// q is evaluated anyway (see regime_warnings).
double single_precision_above20(double q, double rho, Above20Form form = Above20Form::Refined);

double spearman_brown(int n, double rho_bar);

/// Pearson correlation between the signal and a scorer under the linear model.
double pearson_from_model(const LinearScoreModel& model);

/// Smallest n in [1, n_max] with panel_precision >= target, by linear scan.
std::optional<int> required_panel_size(double q, double rho, double target, int n_max,
                                       ExponentForm form = ExponentForm::Clipped);

/// Human-readable notes for inputs where the panel law is known to be
/// unreliable (q < 0.05 or rho > 0.9). Empty when the regime is fine.
std::vector<std::string> regime_warnings(double q, double rho);

}  // namespace panelprec::model
