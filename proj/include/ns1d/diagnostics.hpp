#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "ns1d/core.hpp"
#include "ns1d/state.hpp"
#include "ns1d/stencils.hpp"

namespace ns1d {

/// One row of estimate functionals. Squared-norm fields (`*_l2`) hold the integral
/// of the square, matching the form in which the bounds are stated. Fields that
/// need snapshot history are absent (nullopt) until enough snapshots exist.
struct DiagRecord {
  double t = 0.0;
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
  double dissipation_cum = 0.0;
  double max_rho = 0.0;
  double ux_l2 = 0.0;
  double ux_linf = 0.0;
  double rho_x_l2 = 0.0;
  double rho_gamma_x_l2 = 0.0;
  double rho_beta_x_l2 = 0.0;
  double rho_u_pow = 0.0;
  double wmoment = 0.0;
  double wdiss_cum = 0.0;
  std::optional<double> rho_ut_l2;
  double uxx_l2 = 0.0;
  std::optional<double> mat_l2;
  std::optional<double> mat_w;
  std::optional<double> udot_x_l2;
  double evf_linf = 0.0;
  std::optional<double> tw1;
  std::optional<double> tw2;
  std::optional<double> tw3;
  double tw4 = 0.0;
  double sup_xi_eta = 0.0;
};

inline constexpr std::size_t kDiagFieldCount = 25;

/// Field names in declaration (and CSV column) order.
const std::array<std::string_view, kDiagFieldCount>& diag_field_names();

/// Values in declaration order; nullopt marks an absent field.
std::array<std::optional<double>, kDiagFieldCount> diag_values(const DiagRecord& r);

// ---- Pointwise building blocks ---------------------------------------------------

struct TimeDerivative {
  FieldD u_t;    ///< faces
  FieldD rho_t;  ///< cells
};

/// Backward difference (next - prev) / (next.t - prev.t).
TimeDerivative time_derivative(const State& prev, const State& next);

/// u_t + u u_x at faces, u and u_x taken from `next`.
FieldD material_derivative(const State& prev, const State& next, const Grid& grid);

struct FluxReport {
  FieldD flux;       ///< mu(rho) u_x - rho^gamma at cell centres
  double linf = 0.0;
};

FluxReport effective_viscous_flux(const State& state, const Grid& grid, const Params& params);

/// Viscosity at faces: arithmetic mean of the adjacent cell-centred values.
FieldD face_viscosity(const State& state, const Params& params);

// ---- Groups ------------------------------------------------------------------------

/// mass, momentum, energy, max_rho, ux_l2, ux_linf, rho_x_l2, rho_gamma_x_l2, rho_beta_x_l2.
DiagRecord first_order_group(const State& state, const Grid& grid, const Params& params);

/// int mu(rho) u_x^2 with the staggered natural gradient; integrand of dissipation_cum.
double dissipation_rate(const State& state, const Grid& grid, const Params& params);

/// rho_u_pow and wmoment. Throws ConfigError if alpha is not admissible.
DiagRecord weighted_group(const State& state, const Grid& grid, const Params& params);

/// int |x|^alpha mu(rho) u_x^2; integrand of wdiss_cum.
double weighted_dissipation_rate(const State& state, const Grid& grid, const Params& params);

/// rho_ut_l2, uxx_l2, mat_l2, mat_w, udot_x_l2, tw1..tw4 at next.t.
/// `older` feeds the backward difference of the material derivative (tw2).
DiagRecord higher_order_group(const State* older, const State* prev, const State& next,
                              const Grid& grid, const Params& params);

struct TransportResiduals {
  double rho_beta = 0.0;   ///< || (rho^b)_t + u (rho^b)_x + b rho^b u_x ||_2
  double rho_gamma = 0.0;  ///< same with gamma
};

/// Residuals of the renormalised transport equations between two snapshots; the
/// spatial terms are evaluated on the average of the two states.
TransportResiduals transport_residuals(const State& prev, const State& next, const Grid& grid,
                                       const Params& params);

struct InterpolationReport {
  double lhs = 0.0;    ///< ||u||_inf
  double rhs = 0.0;    ///< ||u||_{2/(alpha-1)}^{1/alpha} ||u_x||_2^{1-1/alpha}
  double ratio = 0.0;  ///< lhs / rhs, 0 for a vanishing field
};

InterpolationReport uinf_interpolation_check(const State& state, const Grid& grid, const Params& params);

// ---- Streaming engine ----------------------------------------------------------------

/// Produces one DiagRecord per observed snapshot, holding the short history the
/// time-differenced fields need and the left-endpoint time integrals.
class DiagnosticsEngine {
public:
  DiagnosticsEngine(Grid grid, Params params);

  DiagRecord observe(const State& state, double sup_xi_eta);

private:
  Grid grid_;
  Params params_;
  std::optional<State> prev_;
  std::optional<State> older_;
  double dissipation_cum_ = 0.0;
  double wdiss_cum_ = 0.0;
  double last_rate_ = 0.0;
  double last_wrate_ = 0.0;
};

} // namespace ns1d
