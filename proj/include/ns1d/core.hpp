#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include <Eigen/Core>

#include "ns1d/errors.hpp"

namespace ns1d {

template <typename Scalar>
using Field = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

using FieldD = Field<double>;

// Physical closures. R = b = 1 throughout: P = rho^gamma, mu = 1 + rho^beta.
// std::pow(0, 0) == 1, so mu(0) == 2 when beta == 0.

template <typename Scalar>
Scalar pressure(Scalar rho, Scalar gamma) {
  if (rho < Scalar(0)) throw DomainError("pressure: negative density");
  return std::pow(rho, gamma);
}

template <typename Scalar>
Scalar viscosity(Scalar rho, Scalar beta) {
  if (rho < Scalar(0)) throw DomainError("viscosity: negative density");
  return Scalar(1) + std::pow(rho, beta);
}

/// eta(rho) = int_1^rho mu(s)/s ds. Vacuum maps to -inf; see is_vacuum_sentinel().
template <typename Scalar>
Scalar eta(Scalar rho, Scalar beta) {
  if (!(rho > Scalar(0))) return -std::numeric_limits<Scalar>::infinity();
  if (beta == Scalar(0)) return Scalar(2) * std::log(rho);
  return std::log(rho) + std::expm1(beta * std::log(rho)) / beta;
}

template <typename Scalar>
bool is_vacuum_sentinel(Scalar value) {
  return std::isinf(value) && value < Scalar(0);
}

/// Inverse of eta on (0, inf). Bisection in log(rho); eta is strictly increasing.
double eta_inverse(double value, double beta);

// Elementwise forms for whole fields. Inputs are assumed nonnegative (State invariant).
template <typename Derived>
auto pressure_field(const Eigen::ArrayBase<Derived>& rho, typename Derived::Scalar gamma) {
  return rho.pow(gamma);
}

template <typename Derived>
auto viscosity_field(const Eigen::ArrayBase<Derived>& rho, typename Derived::Scalar beta) {
  return typename Derived::Scalar(1) + rho.pow(beta);
}

// --- Admissible weight exponent ------------------------------------------------

/// 1 + 2 / cbrt(1 + cbrt(4)), evaluated in long double, kept to 15 significant digits.
inline constexpr double kAlphaUpperBound = 2.45682956183656;

/// Recomputes the endpoint from the radicals in extended precision.
long double alpha_upper_bound_extended();

struct AlphaReport {
  double alpha = 0.0;
  bool admissible = false;
  double theta = 0.0;       ///< (2 alpha - 1) / (3 alpha)
  double coeff = 0.0;       ///< alpha (alpha - 1)^3 / 8
  double upper_bound = kAlphaUpperBound;
};

AlphaReport alpha_check(double alpha);

// --- Parameters and grid ---------------------------------------------------------

struct Params {
  double gamma = 2.0;
  double beta = 1.0;
  double alpha = 2.3;
  double half_width = 10.0;
  std::ptrdiff_t n_cells = 1024;
  double cfl_adv = 0.4;
  double cfl_visc = 0.25;
  double rho_floor = 1e-12;
  double t_end = 1.0;
  std::ptrdiff_t snapshot_every = 0;  ///< 0 disables periodic snapshots
  bool weighted = true;               ///< weighted diagnostics need an admissible alpha

  /// Throws ConfigError naming the first violated invariant.
  void validate() const;
};

template <typename Scalar>
struct BasicGrid {
  Field<Scalar> centers;
  Field<Scalar> faces;
  Scalar dx{};
  Scalar half_width{};

  std::ptrdiff_t n_cells() const { return centers.size(); }
  std::ptrdiff_t n_faces() const { return faces.size(); }
};

using Grid = BasicGrid<double>;

/// Uniform staggered grid on [-L, L] with N cells.
template <typename Scalar>
BasicGrid<Scalar> make_grid(Scalar half_width, std::ptrdiff_t n_cells) {
  if (!(half_width > Scalar(0))) throw ConfigError("grid half-width must be positive");
  if (n_cells < 8) throw ConfigError("grid needs at least 8 cells");
  BasicGrid<Scalar> grid;
  grid.half_width = half_width;
  grid.dx = Scalar(2) * half_width / Scalar(n_cells);
  grid.faces.resize(n_cells + 1);
  grid.centers.resize(n_cells);
  for (std::ptrdiff_t j = 0; j <= n_cells; ++j)
    grid.faces[j] = -half_width + Scalar(j) * grid.dx;
  grid.faces[n_cells] = half_width;
  for (std::ptrdiff_t i = 0; i < n_cells; ++i)
    grid.centers[i] = Scalar(0.5) * (grid.faces[i] + grid.faces[i + 1]);
  return grid;
}

inline Grid make_grid(const Params& params) {
  return make_grid<double>(params.half_width, params.n_cells);
}

} // namespace ns1d
