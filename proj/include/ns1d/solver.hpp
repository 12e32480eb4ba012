#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ns1d/core.hpp"
#include "ns1d/state.hpp"

namespace ns1d {

enum class DensityKind { compact_bump, gaussian_times_cutoff, custom_table };
enum class VelocityKind { zero, sine_in_support, custom_table };

/// Initial data recipe.
///
/// compact_bump:          rho0 = A (1 - (x/R)^2)^k on |x| < R, zero outside.
/// gaussian_times_cutoff: rho0 = A exp(-(x/R)^2) chi(x), chi a C-infinity window equal
///                        to 1 on |x| <= 0.8 L and 0 on |x| >= 0.95 L.
/// sine_in_support:       u0 = V sin(pi x / R) (1 - (x/R)^2)^3 on |x| < R.
/// custom_table:          values taken from `table` (cell densities, face velocities).
struct InitialProfile {
  DensityKind kind = DensityKind::gaussian_times_cutoff;
  double amplitude = 1.0;
  double support_radius = 2.0;
  int smoothness = 4;
  VelocityKind velocity_kind = VelocityKind::zero;
  double velocity_amplitude = 0.0;
  std::optional<State> table;

  void validate() const;
};

std::string to_string(DensityKind kind);
std::string to_string(VelocityKind kind);

/// Defect of [mu(rho0) u0_x]_x - [p(rho0)]_x = sqrt(rho0) g and the weighted
/// moments required of admissible initial data.
struct CompatibilityReport {
  FieldD g_values;              ///< g at cell centres, 0 where rho0 <= rho_floor
  Eigen::Array<bool, Eigen::Dynamic, 1> positive;  ///< rho0 > rho_floor
  double weighted_l2 = 0.0;     ///< || sqrt(rho0) g (1 + |x|^{alpha/2}) ||_2
  double g_l2 = 0.0;            ///< || g ||_2 over the positive set
  double max_residual = 0.0;    ///< largest |[mu u0_x]_x - p_x| where rho0 <= rho_floor
  double moment_u = 0.0;        ///< || sqrt(rho0) u0 (1 + |x|^{alpha/2}) ||_2
  double moment_rho_beta = 0.0; ///< || |x|^{alpha/2} rho0^{beta/2} ||_2
  double moment_rho_gamma = 0.0;///< || |x|^{alpha/2} rho0^{gamma/2} ||_2
};

struct InitialData {
  State state;
  CompatibilityReport report;
};

InitialData build_initial_data(const InitialProfile& profile, const Grid& grid, const Params& params);

/// Explicit stability bound: min over cells of
///   cfl_adv dx / (|u| + c)   and   cfl_visc dx^2 max(rho, rho_floor) / mu(rho),
/// with c = sqrt(gamma rho^(gamma-1)) and |u| the larger of the two bounding faces.
double cfl_dt(const State& state, const Grid& grid, const Params& params);

/// Step size used by run(): the advective part of cfl_dt with the signal speed
/// floored at 1. The viscous term is integrated implicitly, see step().
double run_dt(const State& state, const Grid& grid, const Params& params);

/// Thrown by step() when dt would let an upwind stage drive a density negative.
class CflViolation : public IntegrationError {
public:
  using IntegrationError::IntegrationError;
};

/// One two-stage update. Density: Heun average of two upwind Euler stages.
/// Momentum: the convective and pressure increments of both stages are averaged
/// (Heun), while the viscous term is taken backward in time, once per stage, with a
/// tridiagonal solve. The wall cells carry no viscous stress and the wall faces
/// copy the velocity of their neighbours; the wall mass flux is always zero.
State step(const State& state, double dt, const Grid& grid, const Params& params);

/// Tridiagonal solve (Thomas algorithm). Sub/diag/super have equal length; sub[0]
/// and super[n-1] are ignored.
FieldD solve_tridiagonal(const FieldD& sub, const FieldD& diag, const FieldD& super, FieldD rhs);

/// Mass flux at faces, upwinded on the face velocity sign. Zero at both walls.
FieldD upwind_mass_flux(const State& state);

} // namespace ns1d
