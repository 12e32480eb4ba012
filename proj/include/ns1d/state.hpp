#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include "ns1d/core.hpp"

namespace ns1d {

/// Staggered discrete state: density at cell centers, velocity and momentum at faces.
template <typename Scalar>
struct BasicState {
  Scalar t{};
  Field<Scalar> rho;  ///< N cell densities
  Field<Scalar> u;    ///< N+1 face velocities; the wall faces mirror their neighbours
  Field<Scalar> m;    ///< N+1 face momenta, rho_face * u

  std::ptrdiff_t n_cells() const { return rho.size(); }
};

using State = BasicState<double>;

/// Face densities: arithmetic mean of the adjacent cells; boundary faces see the
/// mirrored ghost cell, i.e. the adjacent interior density.
template <typename Derived>
Field<typename Derived::Scalar> face_density(const Eigen::ArrayBase<Derived>& rho) {
  const std::ptrdiff_t n = rho.size();
  Field<typename Derived::Scalar> out(n + 1);
  out[0] = rho[0];
  out[n] = rho[n - 1];
  out.segment(1, n - 1) = typename Derived::Scalar(0.5) * (rho.head(n - 1) + rho.tail(n - 1));
  return out;
}

/// Cell-centred velocity: mean of the two bounding faces.
template <typename Derived>
Field<typename Derived::Scalar> center_average(const Eigen::ArrayBase<Derived>& face_values) {
  const std::ptrdiff_t n = face_values.size() - 1;
  return typename Derived::Scalar(0.5) * (face_values.head(n) + face_values.tail(n));
}

/// Staggered natural gradient (u[i+1] - u[i]) / dx, one value per cell.
template <typename Derived>
Field<typename Derived::Scalar> face_difference(const Eigen::ArrayBase<Derived>& face_values,
                                                typename Derived::Scalar dx) {
  const std::ptrdiff_t n = face_values.size() - 1;
  return (face_values.tail(n) - face_values.head(n)) / dx;
}

template <typename Scalar>
BasicState<Scalar> make_state(Scalar t, Field<Scalar> rho, Field<Scalar> u) {
  BasicState<Scalar> s;
  s.t = t;
  s.rho = std::move(rho);
  s.u = std::move(u);
  s.m = face_density(s.rho) * s.u;
  return s;
}

inline State vacuum_state(const Grid& grid, double t = 0.0) {
  return make_state<double>(t, FieldD::Zero(grid.n_cells()), FieldD::Zero(grid.n_faces()));
}

/// First invariant violation of a state paired with a grid, or nullopt.
template <typename Scalar>
std::optional<std::string> state_violation(const BasicState<Scalar>& s, const BasicGrid<Scalar>& grid) {
  if (s.rho.size() != grid.n_cells()) return "density length does not match the grid";
  if (s.u.size() != grid.n_faces() || s.m.size() != grid.n_faces())
    return "face field length does not match the grid";
  for (std::ptrdiff_t i = 0; i < s.rho.size(); ++i) {
    if (!std::isfinite(s.rho[i])) return "non-finite density at cell " + std::to_string(i);
    if (s.rho[i] < Scalar(0)) return "negative density at cell " + std::to_string(i);
  }
  for (std::ptrdiff_t j = 0; j < s.u.size(); ++j)
    if (!std::isfinite(s.u[j]) || !std::isfinite(s.m[j]))
      return "non-finite velocity at face " + std::to_string(j);
  return std::nullopt;
}

} // namespace ns1d
