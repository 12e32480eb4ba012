#pragma once

#include <functional>
#include <string>

#include <Eigen/Core>

namespace ns1d {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;
};

/// n-point rule. Golub-Welsch for the start values, then Newton on P_n.
GaussLegendre gauss_legendre(int n);

struct QuadratureOptions {
  double rel_tol = 1e-14;  ///< 20- vs 40-point agreement per panel
  int max_depth = 40;      ///< panel bisections before giving up
  int max_shells = 1000;   ///< dyadic shells on either side of x = 1
};

/// Adaptive 20/40-point Gauss-Legendre on [lo, hi]. Throws QuadratureError naming `label`.
double integrate_interval(const std::function<double(double)>& f, double lo, double hi,
                          const std::string& label, const QuadratureOptions& opt = {});

/// Integral of f over (0, inf), summed shell by shell on [2^k, 2^(k+1)]. The shells
/// toward 0 are closed off with a geometric tail estimate; a tail that stops shrinking
/// raises QuadratureError naming `label`.
double integrate_half_line(const std::function<double(double)>& f, const std::string& label,
                           const QuadratureOptions& opt = {});

/// Integral over the whole line: f(x) + f(-x) on (0, inf).
double integrate_line(const std::function<double(double)>& f, const std::string& label,
                      const QuadratureOptions& opt = {});

} // namespace ns1d
