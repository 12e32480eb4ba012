#pragma once

#include <string>

#include "ns1d/core.hpp"

namespace ns1d {

namespace detail {

template <typename Scalar>
void check_staggered_length(std::ptrdiff_t n, const BasicGrid<Scalar>& grid, const char* op) {
  if (n != grid.n_cells() && n != grid.n_faces())
    throw ShapeError(std::string(op) + ": field of length " + std::to_string(n) +
                     " matches neither cells (" + std::to_string(grid.n_cells()) + ") nor faces (" +
                     std::to_string(grid.n_faces()) + ")");
}

} // namespace detail

/// First derivative of a cell- or face-located field. Second-order central in the
/// interior, second-order one-sided at both ends; exact on quadratics.
template <typename Derived, typename Scalar>
Field<Scalar> gradient(const Eigen::ArrayBase<Derived>& f, const BasicGrid<Scalar>& grid, int order = 2) {
  if (order != 2) throw DomainError("gradient: only order 2 stencils are implemented");
  const std::ptrdiff_t n = f.size();
  detail::check_staggered_length(n, grid, "gradient");
  const Scalar h2 = Scalar(2) * grid.dx;
  Field<Scalar> g(n);
  g.segment(1, n - 2) = (f.tail(n - 2) - f.head(n - 2)) / h2;
  g[0] = (Scalar(-3) * f[0] + Scalar(4) * f[1] - f[2]) / h2;
  g[n - 1] = (Scalar(3) * f[n - 1] - Scalar(4) * f[n - 2] + f[n - 3]) / h2;
  return g;
}

/// Second derivative: three-point stencil inside, four-point one-sided stencil at
/// the ends. Exact on cubics everywhere.
template <typename Derived, typename Scalar>
Field<Scalar> second_derivative(const Eigen::ArrayBase<Derived>& f, const BasicGrid<Scalar>& grid) {
  const std::ptrdiff_t n = f.size();
  detail::check_staggered_length(n, grid, "second_derivative");
  const Scalar h2 = grid.dx * grid.dx;
  Field<Scalar> d(n);
  d.segment(1, n - 2) = (f.tail(n - 2) - Scalar(2) * f.segment(1, n - 2) + f.head(n - 2)) / h2;
  d[0] = (Scalar(2) * f[0] - Scalar(5) * f[1] + Scalar(4) * f[2] - f[3]) / h2;
  d[n - 1] = (Scalar(2) * f[n - 1] - Scalar(5) * f[n - 2] + Scalar(4) * f[n - 3] - f[n - 4]) / h2;
  return d;
}

/// Midpoint-rule integral of a cell- or face-located density. Face values own dual
/// cells of width dx, halved at the two boundary faces.
template <typename Derived, typename Scalar>
Scalar integrate(const Eigen::ArrayBase<Derived>& f, const BasicGrid<Scalar>& grid) {
  const std::ptrdiff_t n = f.size();
  detail::check_staggered_length(n, grid, "integrate");
  if (n == grid.n_cells()) return f.sum() * grid.dx;
  return (f.sum() - Scalar(0.5) * (f[0] + f[n - 1])) * grid.dx;
}

} // namespace ns1d
