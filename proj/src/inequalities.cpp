#include "ns1d/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ns1d/errors.hpp"
#include "ns1d/quadrature.hpp"

namespace ns1d {

namespace {

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

} // namespace

void CknCase::validate() const {
  if (!(std::isfinite(p) && p >= 1.0)) throw ConfigError("ckn: p must satisfy 1 <= p < inf");
  if (!(std::isfinite(q) && q >= 1.0)) throw ConfigError("ckn: q must satisfy 1 <= q < inf");
  if (!finite_positive(r)) throw ConfigError("ckn: r must satisfy 0 < r < inf");
  if (!(theta >= 0.0 && theta <= 1.0)) throw ConfigError("ckn: theta must lie in [0, 1]");
  if (!(1.0 / p + alpha_w > 0.0)) throw ConfigError("ckn: need 1/p + alpha_w > 0");
  if (!(1.0 / q + beta_w > 0.0)) throw ConfigError("ckn: need 1/q + beta_w > 0");
  if (!(1.0 / r + kappa > 0.0)) throw ConfigError("ckn: need 1/r + kappa > 0");
}

CknCase hardy_case(double a) {
  CknCase c;
  std::ostringstream name;
  name << "hardy a=" << a;
  c.name = name.str();
  c.a = a;
  c.b = a - 1.0;
  c.kappa = a - 1.0;
  c.r = 2.0;
  c.alpha_w = a;
  c.p = 2.0;
  c.theta = 1.0;
  c.sigma = a - 1.0;
  c.beta_w = 0.0;
  c.q = 2.0;
  c.balance_ok = balance_check(c).balanced;
  return c;
}

CknCase balanced_interpolation_case() {
  CknCase c;
  c.name = "interpolation theta=1/2";
  c.theta = 0.5;
  c.p = 2.0;
  c.q = 2.0;
  c.alpha_w = 1.0;
  c.beta_w = 0.0;
  c.r = 4.0;
  c.kappa = 0.25;
  c.sigma = 0.5;
  c.balance_ok = balance_check(c).balanced;
  return c;
}

BalanceReport balance_check(const CknCase& c) {
  BalanceReport out;
  const double lhs = 1.0 / c.r + c.kappa;
  const double rhs = c.theta * (1.0 / c.p + c.alpha_w - 1.0) + (1.0 - c.theta) * (1.0 / c.q + c.beta_w);
  out.scale_defect = std::abs(lhs - rhs);
  out.kappa_defect = std::abs(c.kappa - c.theta * c.sigma - (1.0 - c.theta) * c.beta_w);
  out.balanced = out.scale_defect <= 1e-12 && out.kappa_defect <= 1e-12;
  return out;
}

bool sigma_condition_holds(const CknCase& c) {
  if (c.theta <= 0.0) return true;
  const double gap = c.alpha_w - c.sigma;
  if (gap < 0.0) return false;
  const bool tight = std::abs(1.0 / c.p + c.alpha_w - 1.0 - (1.0 / c.r + c.kappa)) <= 1e-12;
  return !tight || gap <= 1.0 + 1e-12;
}

TestFunction TestFunction::gaussian() { return TestFunction{}; }

TestFunction TestFunction::bump() {
  TestFunction h;
  h.kind_ = TestKind::bump;
  return h;
}

TestFunction TestFunction::random_fourier(std::uint64_t seed, int modes) {
  TestFunction h;
  h.kind_ = TestKind::random_fourier;
  h.seed_ = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-0.5, 0.5);
  for (int k = 1; k <= modes; ++k) {
    h.cos_.push_back(coeff(rng) / k);
    h.sin_.push_back(coeff(rng) / k);
  }
  return h;
}

TestFunction TestFunction::regularized_power(double s, double eps) {
  if (!(eps > 0.0)) throw ConfigError("regularized_power: eps must be positive");
  TestFunction h;
  h.kind_ = TestKind::regularized_power;
  h.s_ = s;
  h.eps_ = eps;
  return h;
}

TestFunction TestFunction::dilated(double lambda) const {
  if (!finite_positive(lambda)) throw ConfigError("dilation factor must be positive");
  TestFunction h = *this;
  h.scale_ *= lambda;
  return h;
}

TestFunction TestFunction::scaled(double c) const {
  TestFunction h = *this;
  h.factor_ *= c;
  return h;
}

double TestFunction::value(double x) const {
  const double y = x / scale_;
  switch (kind_) {
  case TestKind::gaussian: return factor_ * std::exp(-y * y);
  case TestKind::bump: return std::abs(y) < 1.0 ? factor_ * std::exp(-1.0 / (1.0 - y * y)) : 0.0;
  case TestKind::random_fourier: {
    double sum = 1.0;
    for (std::size_t k = 0; k < cos_.size(); ++k) {
      const double ky = double(k + 1) * y;
      sum += cos_[k] * std::cos(ky) + sin_[k] * std::sin(ky);
    }
    return factor_ * std::exp(-y * y) * sum;
  }
  case TestKind::regularized_power:
    return factor_ * std::pow(eps_ * eps_ + y * y, 0.5 * s_) * std::exp(-y * y);
  }
  return 0.0;
}

double TestFunction::derivative(double x) const {
  const double y = x / scale_;
  double dg = 0.0;
  switch (kind_) {
  case TestKind::gaussian: dg = -2.0 * y * std::exp(-y * y); break;
  case TestKind::bump:
    if (std::abs(y) < 1.0) {
      const double w = 1.0 - y * y;
      dg = std::exp(-1.0 / w) * (-2.0 * y / (w * w));
    }
    break;
  case TestKind::random_fourier: {
    double sum = 1.0, dsum = 0.0;
    for (std::size_t k = 0; k < cos_.size(); ++k) {
      const double kk = double(k + 1);
      sum += cos_[k] * std::cos(kk * y) + sin_[k] * std::sin(kk * y);
      dsum += kk * (sin_[k] * std::cos(kk * y) - cos_[k] * std::sin(kk * y));
    }
    dg = std::exp(-y * y) * (dsum - 2.0 * y * sum);
    break;
  }
  case TestKind::regularized_power: {
    const double base = eps_ * eps_ + y * y;
    dg = std::pow(base, 0.5 * s_) * std::exp(-y * y) * (s_ * y / base - 2.0 * y);
    break;
  }
  }
  return factor_ * dg / scale_;
}

std::string TestFunction::describe() const {
  std::ostringstream out;
  switch (kind_) {
  case TestKind::gaussian: out << "gaussian"; break;
  case TestKind::bump: out << "bump"; break;
  case TestKind::random_fourier: out << "random_fourier(seed=" << seed_ << ")"; break;
  case TestKind::regularized_power: out << "power(s=" << s_ << ", eps=" << eps_ << ")"; break;
  }
  if (scale_ != 1.0) out << " dilated by " << scale_;
  return out.str();
}

CknNorms ckn_norms(const CknCase& c, const TestFunction& h) {
  c.validate();
  if (!balance_check(c).balanced) throw ConfigError("ckn_ratio: case " + c.name + " is not balanced");

  // Integrate in y = x / scale so the dyadic shells sit where h lives, however far
  // it has been dilated: int |x|^(wp) |g(x)|^p dx = scale^(1 + wp) int |y|^(wp) |g(scale y)|^p dy.
  const double scale = h.scale();
  const auto weighted_norm = [scale](double weight, double power, auto&& g, const std::string& label) {
    const double integral = integrate_line(
        [&](double y) {
          const double v = std::abs(g(scale * y));
          return v == 0.0 ? 0.0 : std::pow(std::abs(y), weight * power) * std::pow(v, power);
        },
        label);
    return std::pow(integral, 1.0 / power) * std::pow(scale, (1.0 + weight * power) / power);
  };

  CknNorms n;
  n.lhs = weighted_norm(c.kappa, c.r, [&](double x) { return h.value(x); }, "|| |x|^kappa h ||_r");
  if (n.lhs == 0.0) throw ConfigError("ckn_ratio: test function vanishes");
  n.gradient = weighted_norm(c.alpha_w, c.p, [&](double x) { return h.derivative(x); },
                             "|| |x|^alpha_w h' ||_p");
  n.weight = c.theta == 1.0 ? 1.0
                            : weighted_norm(c.beta_w, c.q, [&](double x) { return h.value(x); },
                                            "|| |x|^beta_w h ||_q");
  n.ratio = n.lhs / (std::pow(n.gradient, c.theta) * std::pow(n.weight, 1.0 - c.theta));
  return n;
}

double ckn_ratio(const CknCase& c, const TestFunction& h) { return ckn_norms(c, h).ratio; }

HardyProbe hardy_best_constant_probe(double a, std::size_t family_size) {
  if (!(a > 0.5)) throw ConfigError("hardy probe needs a > 1/2");
  if (family_size < 1) throw ConfigError("hardy probe needs a nonempty family");
  const CknCase c = hardy_case(a);

  HardyProbe out;
  out.a = a;
  out.family_size = family_size;
  out.quoted_constant = std::abs(2.0 * a - 1.0) / 2.0;
  out.derived_constant = 2.0 / std::abs(2.0 * a - 1.0);
  out.gaussian_ratio = ckn_ratio(c, TestFunction::gaussian());
  out.sup_ratio = out.gaussian_ratio;

  const double s_star = -(2.0 * a - 1.0) / 2.0;
  const auto n_s = static_cast<std::size_t>(std::ceil(std::sqrt(double(family_size))));
  const std::size_t n_eps = (family_size + n_s - 1) / n_s;
  std::size_t member = 0;
  for (std::size_t i = 0; i < n_s && member < family_size; ++i) {
    const double d = n_s == 1 ? 0.0 : -0.5 + 1.5 * double(i) / double(n_s - 1);
    const double s = s_star + std::abs(s_star) * d;
    for (std::size_t j = 0; j < n_eps && member < family_size; ++j, ++member) {
      const double e = n_eps == 1 ? -12.0 : -12.0 + 11.0 * double(j) / double(n_eps - 1);
      const double eps = std::pow(10.0, e);
      const double ratio = ckn_ratio(c, TestFunction::regularized_power(s, eps));
      if (ratio > out.sup_ratio) {
        out.sup_ratio = ratio;
        out.best_s = s;
        out.best_eps = eps;
      }
    }
  }
  out.within_derived = out.sup_ratio <= out.derived_constant + 1e-6;
  out.exceeds_quoted = out.sup_ratio > out.quoted_constant;
  return out;
}

} // namespace ns1d
