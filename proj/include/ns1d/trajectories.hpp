#pragma once

#include <vector>

#include "ns1d/core.hpp"
#include "ns1d/state.hpp"

namespace ns1d {

/// Lagrangian markers carrying xi + eta, where xi(x) = int_{-L}^x rho u.
struct ParticleSet {
  FieldD positions;
  FieldD xi_eta;      ///< -inf for markers sitting in vacuum
  double initial_sup = 0.0;
  Eigen::Array<bool, Eigen::Dynamic, 1> clamped;  ///< marker hit the domain edge at least once

  std::ptrdiff_t size() const { return positions.size(); }
  double sup() const;  ///< max over non-vacuum markers, -inf if all are in vacuum
};

/// Cumulative trapezoidal integral of the face momenta from the left wall.
FieldD xi_field(const State& state, const Grid& grid);

/// Linear interpolation of a face field; constant beyond the walls.
double interpolate_faces(const FieldD& values, const Grid& grid, double x);

/// Linear interpolation between cell centres; the half cells next to the walls
/// take the adjacent centre value (mirrored ghost).
double interpolate_cells(const FieldD& values, const Grid& grid, double x);

/// xi + eta(rho) at an arbitrary point.
double sample_xi_eta(const FieldD& xi, const State& state, const Grid& grid, double x, double beta);

/// count markers spread uniformly over {rho > support_fraction * max rho} plus one
/// at the density maximum. initial_sup is the sup of xi + eta over faces, centres
/// and markers.
ParticleSet seed_particles(const State& state, const Grid& grid, const Params& params,
                           std::ptrdiff_t count, double support_fraction = 1e-3);

/// Heun update of the positions: predictor with `before`, corrector with `after`
/// (pass the same state twice for a frozen field). xi + eta is resampled on `after`.
ParticleSet advect_particles(const ParticleSet& ps, const State& before, const State& after, double dt,
                             const Grid& grid, const Params& params);

struct ResidualField {
  FieldD residual;  ///< faces
  double linf = 0.0;
};

/// (xi(t+dt) - xi(t)) / dt + rho u^2 - mu(rho) u_x + p at faces. The spatial terms
/// use the average of the two states. Holds when the walls carry no density and no stress.
ResidualField momentum_potential_residual(const State& state_n, const State& state_np1, double dt,
                                          const Grid& grid, const Params& params);

struct BoundReport {
  double sup_xi_eta = 0.0;
  double initial_sup = 0.0;
  double momentum_bound = 0.0;  ///< running sup of ||sqrt(rho) u||_2 ||rho||_1^{1/2}
  double rho_cap = 0.0;         ///< eta(rho_cap) = initial_sup + momentum_bound
  double max_rho = 0.0;
  bool violated = false;
};

/// Carries the running sup of the momentum bound between calls.
class DensityBoundMonitor {
public:
  explicit DensityBoundMonitor(double tolerance = 1e-3) : tolerance_(tolerance) {}

  BoundReport update(const ParticleSet& ps, const State& state, const Grid& grid, const Params& params);

private:
  double tolerance_;
  double momentum_bound_ = 0.0;
};

/// Rise of each marker's xi + eta above its own running minimum; the discrete
/// trajectory relation says this stays at zero up to discretisation drift.
class DriftAudit {
public:
  void update(const ParticleSet& ps);
  double max_particle_rise() const { return max_particle_rise_; }
  double max_sup_rise() const { return max_sup_rise_; }

private:
  FieldD running_min_;
  double sup_min_ = 0.0;
  bool started_ = false;
  double max_particle_rise_ = 0.0;
  double max_sup_rise_ = 0.0;
};

} // namespace ns1d
