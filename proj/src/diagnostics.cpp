#include "ns1d/diagnostics.hpp"

#include <cmath>
#include <string>

namespace ns1d {

const std::array<std::string_view, kDiagFieldCount>& diag_field_names() {
  static const std::array<std::string_view, kDiagFieldCount> names = {
      "t",          "mass",         "momentum",  "energy",         "dissipation_cum",
      "max_rho",    "ux_l2",        "ux_linf",   "rho_x_l2",       "rho_gamma_x_l2",
      "rho_beta_x_l2", "rho_u_pow", "wmoment",   "wdiss_cum",      "rho_ut_l2",
      "uxx_l2",     "mat_l2",       "mat_w",     "udot_x_l2",      "evf_linf",
      "tw1",        "tw2",          "tw3",       "tw4",            "sup_xi_eta"};
  return names;
}

std::array<std::optional<double>, kDiagFieldCount> diag_values(const DiagRecord& r) {
  return {r.t,          r.mass,      r.momentum, r.energy,         r.dissipation_cum,
          r.max_rho,    r.ux_l2,     r.ux_linf,  r.rho_x_l2,       r.rho_gamma_x_l2,
          r.rho_beta_x_l2, r.rho_u_pow, r.wmoment, r.wdiss_cum,    r.rho_ut_l2,
          r.uxx_l2,     r.mat_l2,    r.mat_w,    r.udot_x_l2,      r.evf_linf,
          r.tw1,        r.tw2,       r.tw3,      r.tw4,            r.sup_xi_eta};
}

namespace {

void require_same_shape(const State& a, const State& b) {
  if (a.rho.size() != b.rho.size() || a.u.size() != b.u.size())
    throw ShapeError("snapshots live on different grids");
}

double elapsed(const State& prev, const State& next) {
  const double dt = next.t - prev.t;
  if (!(dt > 0.0)) throw DomainError("snapshots must be strictly increasing in time");
  return dt;
}

} // namespace

TimeDerivative time_derivative(const State& prev, const State& next) {
  require_same_shape(prev, next);
  const double dt = elapsed(prev, next);
  return {(next.u - prev.u) / dt, (next.rho - prev.rho) / dt};
}

FieldD material_derivative(const State& prev, const State& next, const Grid& grid) {
  const TimeDerivative d = time_derivative(prev, next);
  return d.u_t + next.u * gradient(next.u, grid);
}

FieldD face_viscosity(const State& state, const Params& params) {
  return face_density(viscosity_field(state.rho, params.beta).eval());
}

FluxReport effective_viscous_flux(const State& state, const Grid& grid, const Params& params) {
  FluxReport out;
  out.flux = viscosity_field(state.rho, params.beta) * face_difference(state.u, grid.dx) -
             pressure_field(state.rho, params.gamma);
  out.linf = out.flux.abs().maxCoeff();
  return out;
}

DiagRecord first_order_group(const State& s, const Grid& grid, const Params& params) {
  DiagRecord r;
  r.t = s.t;
  const FieldD rho_f = face_density(s.rho);
  const FieldD ux = face_difference(s.u, grid.dx);
  r.mass = integrate(s.rho, grid);
  r.momentum = integrate(s.m, grid);
  r.energy = integrate((0.5 * rho_f * s.u.square()).eval(), grid) +
             integrate(pressure_field(s.rho, params.gamma).eval(), grid) / (params.gamma - 1.0);
  r.max_rho = s.rho.maxCoeff();
  r.ux_l2 = integrate(ux.square().eval(), grid);
  r.ux_linf = gradient(s.u, grid).abs().maxCoeff();
  r.rho_x_l2 = integrate(gradient(s.rho, grid).square().eval(), grid);
  r.rho_gamma_x_l2 = integrate(gradient(pressure_field(s.rho, params.gamma).eval(), grid).square().eval(), grid);
  r.rho_beta_x_l2 = integrate(gradient(s.rho.pow(params.beta).eval(), grid).square().eval(), grid);
  return r;
}

double dissipation_rate(const State& s, const Grid& grid, const Params& params) {
  const FieldD ux = face_difference(s.u, grid.dx);
  return integrate((viscosity_field(s.rho, params.beta) * ux.square()).eval(), grid);
}

DiagRecord weighted_group(const State& s, const Grid& grid, const Params& params) {
  if (!alpha_check(params.alpha).admissible)
    throw ConfigError("weighted diagnostics need an admissible alpha, got " + std::to_string(params.alpha));
  DiagRecord r;
  r.t = s.t;
  const double a = params.alpha;
  const FieldD rho_f = face_density(s.rho);
  const FieldD wf = grid.faces.abs().pow(a);
  const FieldD wc = grid.centers.abs().pow(a);
  r.rho_u_pow = integrate((rho_f * s.u.abs().pow(a + 2.0)).eval(), grid);
  r.wmoment = integrate((wf * rho_f * s.u.square()).eval(), grid) +
              integrate((wc * (s.rho.pow(params.gamma) + s.rho.pow(params.beta))).eval(), grid);
  return r;
}

double weighted_dissipation_rate(const State& s, const Grid& grid, const Params& params) {
  const FieldD ux = face_difference(s.u, grid.dx);
  const FieldD wc = grid.centers.abs().pow(params.alpha);
  return integrate((wc * viscosity_field(s.rho, params.beta) * ux.square()).eval(), grid);
}

DiagRecord higher_order_group(const State* older, const State* prev, const State& next,
                              const Grid& grid, const Params& params) {
  DiagRecord r;
  r.t = next.t;
  const double t = next.t;
  const FieldD uxx = second_derivative(next.u, grid);
  const FieldD uxxx = gradient(uxx, grid);
  r.uxx_l2 = integrate(uxx.square().eval(), grid);
  r.tw4 = t * integrate(uxxx.square().eval(), grid);
  if (prev == nullptr) return r;

  const FieldD rho_f = face_density(next.rho);
  const FieldD mu_f = face_viscosity(next, params);
  const TimeDerivative d = time_derivative(*prev, next);
  const FieldD udot = material_derivative(*prev, next, grid);
  const FieldD udot_x = gradient(udot, grid);
  const FieldD wf = grid.faces.abs().pow(params.alpha);

  r.rho_ut_l2 = integrate((rho_f * d.u_t.square()).eval(), grid);
  r.mat_l2 = integrate((rho_f * udot.square()).eval(), grid);
  r.mat_w = integrate((rho_f * udot.square() * wf).eval(), grid);
  r.udot_x_l2 = integrate(udot_x.square().eval(), grid);
  r.tw1 = t * integrate((mu_f * udot_x.square()).eval(), grid);
  r.tw3 = t * integrate((mu_f * wf.sqrt() * udot_x.square()).eval(), grid);
  if (older != nullptr) {
    const FieldD udot_prev = material_derivative(*older, *prev, grid);
    const FieldD udot_t = (udot - udot_prev) / (next.t - prev->t);
    r.tw2 = t * t * integrate((rho_f * udot_t.square()).eval(), grid);
  }
  return r;
}

TransportResiduals transport_residuals(const State& prev, const State& next, const Grid& grid,
                                       const Params& params) {
  require_same_shape(prev, next);
  const double dt = elapsed(prev, next);
  const FieldD rho = 0.5 * (prev.rho + next.rho);
  const FieldD u = 0.5 * (prev.u + next.u);
  const FieldD uc = center_average(u);
  const FieldD ux = face_difference(u, grid.dx);

  const auto residual = [&](double k) {
    const FieldD q = rho.pow(k);
    const FieldD qt = (next.rho.pow(k) - prev.rho.pow(k)) / dt;
    const FieldD res = qt + uc * gradient(q, grid) + k * q * ux;
    return std::sqrt(integrate(res.square().eval(), grid));
  };
  return {residual(params.beta), residual(params.gamma)};
}

InterpolationReport uinf_interpolation_check(const State& s, const Grid& grid, const Params& params) {
  InterpolationReport out;
  out.lhs = s.u.abs().maxCoeff();
  if (out.lhs == 0.0) return out;
  const double a = params.alpha;
  const double q = 2.0 / (a - 1.0);
  const double uq = std::pow(integrate(s.u.abs().pow(q).eval(), grid), 1.0 / q);
  const double ux2 = std::sqrt(integrate(face_difference(s.u, grid.dx).square().eval(), grid));
  out.rhs = std::pow(uq, 1.0 / a) * std::pow(ux2, 1.0 - 1.0 / a);
  out.ratio = out.lhs / out.rhs;
  return out;
}

DiagnosticsEngine::DiagnosticsEngine(Grid grid, Params params)
    : grid_(std::move(grid)), params_(std::move(params)) {}

DiagRecord DiagnosticsEngine::observe(const State& state, double sup_xi_eta) {
  if (prev_) {
    const double dt = state.t - prev_->t;
    dissipation_cum_ += dt * last_rate_;
    wdiss_cum_ += dt * last_wrate_;
  }

  DiagRecord r = first_order_group(state, grid_, params_);
  r.dissipation_cum = dissipation_cum_;
  if (params_.weighted) {
    const DiagRecord w = weighted_group(state, grid_, params_);
    r.rho_u_pow = w.rho_u_pow;
    r.wmoment = w.wmoment;
    last_wrate_ = weighted_dissipation_rate(state, grid_, params_);
  }
  r.wdiss_cum = wdiss_cum_;

  const DiagRecord h = higher_order_group(older_ ? &*older_ : nullptr, prev_ ? &*prev_ : nullptr,
                                          state, grid_, params_);
  r.rho_ut_l2 = h.rho_ut_l2;
  r.uxx_l2 = h.uxx_l2;
  r.mat_l2 = h.mat_l2;
  r.mat_w = h.mat_w;
  r.udot_x_l2 = h.udot_x_l2;
  r.tw1 = h.tw1;
  r.tw2 = h.tw2;
  r.tw3 = h.tw3;
  r.tw4 = h.tw4;
  r.evf_linf = effective_viscous_flux(state, grid_, params_).linf;
  r.sup_xi_eta = sup_xi_eta;

  last_rate_ = dissipation_rate(state, grid_, params_);
  older_ = std::move(prev_);
  prev_ = state;
  return r;
}

} // namespace ns1d
