#include "ns1d/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include <Eigen/Eigenvalues>

#include "ns1d/errors.hpp"

namespace ns1d {

GaussLegendre gauss_legendre(int n) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi, Eigen::EigenvaluesOnly);

  GaussLegendre rule;
  rule.nodes = eig.eigenvalues().array();
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = rule.nodes[i];
    double dp = 1.0;
    for (int it = 0; it < 4; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      x -= p1 / dp;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

namespace {

const GaussLegendre& cached_rule(int n) {
  static std::mutex lock;
  static std::map<int, GaussLegendre> rules;
  std::lock_guard<std::mutex> guard(lock);
  auto it = rules.find(n);
  if (it == rules.end()) it = rules.emplace(n, gauss_legendre(n)).first;
  return it->second;
}

double apply(const GaussLegendre& rule, const std::function<double(double)>& f, double lo, double hi) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

double adapt(const std::function<double(double)>& f, double lo, double hi, double coarse, int depth,
             double abs_floor, const std::string& label, const QuadratureOptions& opt) {
  const double fine = apply(cached_rule(40), f, lo, hi);
  if (!std::isfinite(fine)) throw QuadratureError(label, "non-finite integrand");
  if (std::abs(fine - coarse) <= std::max(opt.rel_tol * std::abs(fine), abs_floor)) return fine;
  if (depth >= opt.max_depth) throw QuadratureError(label, "panel refinement did not converge");
  const double mid = 0.5 * (lo + hi);
  return adapt(f, lo, mid, apply(cached_rule(20), f, lo, mid), depth + 1, 0.5 * abs_floor, label, opt) +
         adapt(f, mid, hi, apply(cached_rule(20), f, mid, hi), depth + 1, 0.5 * abs_floor, label, opt);
}

} // namespace

double integrate_interval(const std::function<double(double)>& f, double lo, double hi,
                          const std::string& label, const QuadratureOptions& opt) {
  // Panels whose signed integral cancels are judged against the integral of |f|.
  const double magnitude = apply(cached_rule(40), [&](double x) { return std::abs(f(x)); }, lo, hi);
  return adapt(f, lo, hi, apply(cached_rule(20), f, lo, hi), 0, opt.rel_tol * magnitude, label, opt);
}

namespace {

// Sums shells k = first, first + step, ... until the remainder is negligible. The
// remainder is estimated as a geometric series once consecutive shells shrink.
double sum_shells(const std::function<double(double)>& f, int first, int step, double scale,
                  const std::string& label, const std::string& side, const QuadratureOptions& opt) {
  double total = 0.0;
  double last = 0.0;
  int zeros = 0;
  for (int n = 0;; ++n) {
    if (n >= opt.max_shells) throw QuadratureError(label, "integral does not converge " + side);
    const int k = first + step * n;
    const double c = integrate_interval(f, std::ldexp(1.0, k), std::ldexp(1.0, k + 1), label, opt);
    total += c;
    if (c == 0.0) {
      if (++zeros >= 8) break;
      last = c;
      continue;
    }
    zeros = 0;
    if (n >= 2 && last != 0.0) {
      const double ratio = c / last;
      if (ratio > 0.0 && ratio < 0.999) {
        const double tail = c * ratio / (1.0 - ratio);
        if (std::abs(tail) <= opt.rel_tol * std::abs(total + scale)) {
          total += tail;
          break;
        }
      } else if (n > 200 && ratio >= 1.0) {
        throw QuadratureError(label, "shells " + side + " stopped shrinking (weight too singular)");
      }
    }
    last = c;
  }
  return total;
}

} // namespace

double integrate_half_line(const std::function<double(double)>& f, const std::string& label,
                           const QuadratureOptions& opt) {
  const double outer = sum_shells(f, 0, 1, 0.0, label, "at infinity", opt);
  return outer + sum_shells(f, -1, -1, outer, label, "at 0", opt);
}

double integrate_line(const std::function<double(double)>& f, const std::string& label,
                      const QuadratureOptions& opt) {
  return integrate_half_line([&](double x) { return f(x) + f(-x); }, label, opt);
}

} // namespace ns1d
