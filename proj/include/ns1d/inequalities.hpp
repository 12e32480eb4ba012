#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ns1d {

/// Exponents of a one-dimensional Caffarelli-Kohn-Nirenberg inequality
///   || |x|^kappa h ||_r <= C || |x|^alpha_w h' ||_p^theta || |x|^beta_w h ||_q^(1-theta).
/// `a` and `b` are the Hardy-case parameters the tuple was built from, if any.
struct CknCase {
  std::string name;
  double a = 0.0, b = 0.0;
  double kappa = 0.0, alpha_w = 0.0, beta_w = 0.0, sigma = 0.0;
  double p = 2.0, q = 2.0, r = 2.0;
  double theta = 1.0;
  bool balance_ok = false;

  /// Range checks on the exponents. Throws ConfigError.
  void validate() const;
};

/// Hardy case b = a - 1, p = 2, written as a CknCase with theta = 1.
CknCase hardy_case(double a);

/// theta = 1/2, p = q = 2, alpha_w = 1, beta_w = 0, so r = 4, kappa = 1/4, sigma = 1/2.
CknCase balanced_interpolation_case();

struct BalanceReport {
  double scale_defect = 0.0;  ///< |1/r + kappa - theta(1/p + alpha_w - 1) - (1-theta)(1/q + beta_w)|
  double kappa_defect = 0.0;  ///< |kappa - theta sigma - (1-theta) beta_w|
  bool balanced = false;      ///< both defects <= 1e-12
};

BalanceReport balance_check(const CknCase& c);

/// The standard side condition on sigma (0 <= alpha_w - sigma, and <= 1 when the
/// scale relation is tight). Reported, never enforced.
bool sigma_condition_holds(const CknCase& c);

enum class TestKind { gaussian, bump, random_fourier, regularized_power };

/// Smooth decaying test function with an analytic derivative.
///   gaussian:          exp(-y^2)
///   bump:              exp(-1/(1-y^2)) on |y| < 1
///   random_fourier:    exp(-y^2) (1 + sum_k c_k cos(k y) + s_k sin(k y)), coefficients from `seed`
///   regularized_power: (eps^2 + y^2)^(s/2) exp(-y^2)
/// with y = x / scale.
class TestFunction {
public:
  static TestFunction gaussian();
  static TestFunction bump();
  static TestFunction random_fourier(std::uint64_t seed, int modes = 4);
  static TestFunction regularized_power(double s, double eps);

  /// h(x / lambda); dilations compose.
  TestFunction dilated(double lambda) const;
  /// c * h
  TestFunction scaled(double c) const;

  double value(double x) const;
  double derivative(double x) const;

  TestKind kind() const { return kind_; }
  double scale() const { return scale_; }
  std::string describe() const;

private:
  TestKind kind_ = TestKind::gaussian;
  double scale_ = 1.0;
  double factor_ = 1.0;
  double s_ = 0.0, eps_ = 0.0;
  std::uint64_t seed_ = 0;
  std::vector<double> cos_, sin_;
};

struct CknNorms {
  double lhs = 0.0;       ///< || |x|^kappa h ||_r
  double gradient = 0.0;  ///< || |x|^alpha_w h' ||_p
  double weight = 0.0;    ///< || |x|^beta_w h ||_q
  double ratio = 0.0;     ///< lhs / (gradient^theta weight^(1-theta))
};

/// Throws ConfigError for unbalanced cases or h == 0, QuadratureError when an integral diverges.
CknNorms ckn_norms(const CknCase& c, const TestFunction& h);
double ckn_ratio(const CknCase& c, const TestFunction& h);

struct HardyProbe {
  double a = 0.0;
  std::size_t family_size = 0;
  double sup_ratio = 0.0;
  double best_s = 0.0, best_eps = 0.0;
  double gaussian_ratio = 0.0;
  double quoted_constant = 0.0;   ///< |2a - 1| / 2
  double derived_constant = 0.0;  ///< 2 / |2a - 1|
  bool within_derived = false;    ///< sup <= derived + 1e-6
  bool exceeds_quoted = false;    ///< some member beats the quoted constant
};

/// Sweeps regularized_power members with s from the non-integrable endpoint
/// -(2a-1)/2 upward and eps in [1e-12, 1e-1], plus the Gaussian. Requires a > 1/2.
HardyProbe hardy_best_constant_probe(double a, std::size_t family_size);

} // namespace ns1d
