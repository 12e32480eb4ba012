#include "ns1d/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ns1d/stencils.hpp"

namespace ns1d {

namespace {

/// C-infinity step: 0 for s <= 0, 1 for s >= 1.
double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / s);
  const double b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

struct ProfileFunctions {
  std::function<double(double)> rho;
  std::function<double(double)> u;
};

ProfileFunctions analytic_functions(const InitialProfile& p, double half_width) {
  ProfileFunctions f;
  const double A = p.amplitude;
  const double R = p.support_radius;
  switch (p.kind) {
  case DensityKind::compact_bump: {
    const int k = p.smoothness;
    f.rho = [A, R, k](double x) {
      const double s = x / R;
      return std::abs(s) < 1.0 ? A * std::pow(1.0 - s * s, k) : 0.0;
    };
    break;
  }
  case DensityKind::gaussian_times_cutoff: {
    const double inner = 0.8 * half_width;
    const double outer = 0.95 * half_width;
    f.rho = [A, R, inner, outer](double x) {
      const double window = 1.0 - smooth_step((std::abs(x) - inner) / (outer - inner));
      return A * std::exp(-(x / R) * (x / R)) * window;
    };
    break;
  }
  case DensityKind::custom_table:
    break;
  }
  switch (p.velocity_kind) {
  case VelocityKind::zero:
    f.u = [](double) { return 0.0; };
    break;
  case VelocityKind::sine_in_support: {
    const double V = p.velocity_amplitude;
    f.u = [V, R](double x) {
      const double s = x / R;
      if (std::abs(s) >= 1.0) return 0.0;
      return V * std::sin(std::numbers::pi * s) * std::pow(1.0 - s * s, 3);
    };
    break;
  }
  case VelocityKind::custom_table:
    break;
  }
  return f;
}

// Fourth-order central differences of a callable.
double d1(const std::function<double(double)>& f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

} // namespace

std::string to_string(DensityKind kind) {
  switch (kind) {
  case DensityKind::compact_bump: return "compact_bump";
  case DensityKind::gaussian_times_cutoff: return "gaussian_times_cutoff";
  case DensityKind::custom_table: return "custom_table";
  }
  return "?";
}

std::string to_string(VelocityKind kind) {
  switch (kind) {
  case VelocityKind::zero: return "zero";
  case VelocityKind::sine_in_support: return "sine_in_support";
  case VelocityKind::custom_table: return "custom_table";
  }
  return "?";
}

void InitialProfile::validate() const {
  const bool needs_table = kind == DensityKind::custom_table || velocity_kind == VelocityKind::custom_table;
  if (needs_table && !table) throw ConfigError("custom_table profile needs a table");
  if (kind != DensityKind::custom_table) {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw ConfigError("amplitude must be finite and >= 0");
    if (!(support_radius > 0.0)) throw ConfigError("support_radius must be positive");
    if (kind == DensityKind::compact_bump && smoothness < 2) throw ConfigError("smoothness must be >= 2");
  }
  if (velocity_kind == VelocityKind::sine_in_support && !std::isfinite(velocity_amplitude))
    throw ConfigError("velocity_amplitude must be finite");
}

InitialData build_initial_data(const InitialProfile& profile, const Grid& grid, const Params& params) {
  profile.validate();
  const std::ptrdiff_t n = grid.n_cells();
  const ProfileFunctions f = analytic_functions(profile, grid.half_width);

  FieldD rho(n);
  FieldD u(n + 1);
  if (profile.kind == DensityKind::custom_table) {
    if (profile.table->rho.size() != n) throw ShapeError("custom table density does not match the grid");
    rho = profile.table->rho;
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) rho[i] = f.rho(grid.centers[i]);
  }
  if (profile.velocity_kind == VelocityKind::custom_table) {
    if (profile.table->u.size() != n + 1) throw ShapeError("custom table velocity does not match the grid");
    u = profile.table->u;
  } else {
    for (std::ptrdiff_t j = 0; j <= n; ++j) u[j] = f.u(grid.faces[j]);
  }
  u[0] = 0.0;
  u[n] = 0.0;
  if ((rho < 0.0).any() || !rho.isFinite().all() || !u.isFinite().all())
    throw ConfigError("initial data must be finite with nonnegative density");

  InitialData out{make_state<double>(0.0, rho, u), {}};
  CompatibilityReport& rep = out.report;

  // [mu(rho0) u0_x]_x - [rho0^gamma]_x at cell centres.
  FieldD defect(n);
  if (profile.kind != DensityKind::custom_table && profile.velocity_kind != VelocityKind::custom_table) {
    const double h = 1e-3 * std::min(grid.dx, profile.support_radius);
    const double beta = params.beta;
    const double gamma = params.gamma;
    const std::function<double(double)> flux = [&](double x) {
      return viscosity(f.rho(x), beta) * d1(f.u, x, h);
    };
    const std::function<double(double)> pres = [&](double x) { return pressure(f.rho(x), gamma); };
    for (std::ptrdiff_t i = 0; i < n; ++i)
      defect[i] = d1(flux, grid.centers[i], h) - d1(pres, grid.centers[i], h);
  } else {
    const FieldD stress = viscosity_field(rho, params.beta) * face_difference(u, grid.dx);
    defect = gradient(stress, grid) - gradient(pressure_field(rho, params.gamma).eval(), grid);
  }

  const FieldD xc_w = grid.centers.abs().pow(0.5 * params.alpha);
  const FieldD xf_w = grid.faces.abs().pow(0.5 * params.alpha);
  rep.positive = rho > params.rho_floor;
  rep.g_values = FieldD::Zero(n);
  double g2 = 0.0;
  double w2 = 0.0;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (rep.positive[i]) {
      const double g = defect[i] / std::sqrt(rho[i]);
      rep.g_values[i] = g;
      g2 += g * g * grid.dx;
      const double w = defect[i] * (1.0 + xc_w[i]);
      w2 += w * w * grid.dx;
    } else {
      rep.max_residual = std::max(rep.max_residual, std::abs(defect[i]));
    }
  }
  rep.g_l2 = std::sqrt(g2);
  rep.weighted_l2 = std::sqrt(w2);
  const FieldD rho_f = face_density(rho);
  rep.moment_u = std::sqrt(integrate((rho_f * (u * (1.0 + xf_w)).square()).eval(), grid));
  rep.moment_rho_beta = std::sqrt(integrate((xc_w.square() * rho.pow(params.beta)).eval(), grid));
  rep.moment_rho_gamma = std::sqrt(integrate((xc_w.square() * rho.pow(params.gamma)).eval(), grid));

  if (!std::isfinite(rep.weighted_l2) || !std::isfinite(rep.g_l2))
    throw ConfigError("compatibility norm is not finite: the density vanishes too abruptly at the "
                      "vacuum boundary (raise the smoothness exponent k of the bump)");
  return out;
}

double cfl_dt(const State& state, const Grid& grid, const Params& params) {
  const std::ptrdiff_t n = grid.n_cells();
  double dt = std::numeric_limits<double>::infinity();
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double rho = state.rho[i];
    const double umax = std::max(std::abs(state.u[i]), std::abs(state.u[i + 1]));
    if (!std::isfinite(rho) || !std::isfinite(umax))
      throw IntegrationError("cfl_dt: non-finite state", i, 0);
    const double c = std::sqrt(params.gamma * std::pow(rho, params.gamma - 1.0));
    const double speed = umax + c;
    if (speed > 0.0) dt = std::min(dt, params.cfl_adv * grid.dx / speed);
    dt = std::min(dt, params.cfl_visc * grid.dx * grid.dx * std::max(rho, params.rho_floor) /
                          viscosity(rho, params.beta));
  }
  return dt;
}

double run_dt(const State& state, const Grid& grid, const Params& params) {
  const std::ptrdiff_t n = grid.n_cells();
  double speed = 1.0;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double rho = state.rho[i];
    const double umax = std::max(std::abs(state.u[i]), std::abs(state.u[i + 1]));
    if (!std::isfinite(rho) || !std::isfinite(umax))
      throw IntegrationError("run_dt: non-finite state", i, 0);
    speed = std::max(speed, umax + std::sqrt(params.gamma * std::pow(rho, params.gamma - 1.0)));
  }
  return params.cfl_adv * grid.dx / speed;
}

FieldD solve_tridiagonal(const FieldD& sub, const FieldD& diag, const FieldD& super, FieldD rhs) {
  const std::ptrdiff_t n = diag.size();
  FieldD c(n);
  double denom = diag[0];
  c[0] = super[0] / denom;
  rhs[0] /= denom;
  for (std::ptrdiff_t i = 1; i < n; ++i) {
    denom = diag[i] - sub[i] * c[i - 1];
    c[i] = super[i] / denom;
    rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / denom;
  }
  for (std::ptrdiff_t i = n - 2; i >= 0; --i) rhs[i] -= c[i] * rhs[i + 1];
  return rhs;
}

FieldD upwind_mass_flux(const State& s) {
  const std::ptrdiff_t n = s.rho.size();
  FieldD flux = FieldD::Zero(n + 1);
  for (std::ptrdiff_t j = 1; j < n; ++j)
    flux[j] = s.u[j] * (s.u[j] > 0.0 ? s.rho[j - 1] : s.rho[j]);
  return flux;
}

namespace {

// Explicit part of one stage: upwind density update and the convective plus
// pressure increment of the face momentum, interior faces only.
struct ExplicitIncrement {
  FieldD rho;       // density after the upwind update
  FieldD momentum;  // -(dt/dx) * (conv + pressure) differences, faces 1..n-1
};

ExplicitIncrement explicit_increment(const State& s, double dt, const Grid& grid, const Params& params,
                                     int stage) {
  const std::ptrdiff_t n = grid.n_cells();
  const double lam = dt / grid.dx;

  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double outflow = std::max(s.u[i + 1], 0.0) - std::min(s.u[i], 0.0);
    if (lam * outflow > 1.0) throw CflViolation("upwind stage would produce negative density", i, stage);
  }

  const FieldD flux = upwind_mass_flux(s);
  ExplicitIncrement out;
  out.rho = s.rho - lam * (flux.tail(n) - flux.head(n));
  out.rho = out.rho.max(0.0);  // clears -0.0 and sub-ulp negatives from cancellation

  // Convection through the dual cells, whose boundaries sit at the cell centres.
  FieldD conv(n);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double dual_flux = 0.5 * (flux[i] + flux[i + 1]);
    conv[i] = dual_flux * (dual_flux >= 0.0 ? s.u[i] : s.u[i + 1]);
  }
  const FieldD p = pressure_field(s.rho, params.gamma);
  out.momentum = -lam * ((conv.tail(n - 1) - conv.head(n - 1)) + (p.tail(n - 1) - p.head(n - 1)));

  for (std::ptrdiff_t i = 0; i < n; ++i)
    if (!std::isfinite(out.rho[i])) throw IntegrationError("non-finite density", i, stage);
  return out;
}

// Backward-Euler viscous solve for the face velocities given the new density and
// the explicit momentum. The wall cells carry no stress: their ghost layer mirrors
// the gradient to zero, and the wall faces copy their neighbours.
State viscous_solve(double t, FieldD rho, const FieldD& momentum, double dt, const Grid& grid,
                    const Params& params, int stage) {
  const std::ptrdiff_t n = grid.n_cells();
  const FieldD rho_f = face_density(rho);
  const FieldD mu = viscosity_field(rho, params.beta);
  const double vis = dt / (grid.dx * grid.dx);

  const std::ptrdiff_t m = n - 1;
  FieldD sub(m), diag(m), super(m);
  for (std::ptrdiff_t k = 0; k < m; ++k) {
    const std::ptrdiff_t j = k + 1;
    const double mu_left = j == 1 ? 0.0 : mu[j - 1];
    const double mu_right = j == n - 1 ? 0.0 : mu[j];
    sub[k] = -vis * mu_left;
    super[k] = -vis * mu_right;
    diag[k] = rho_f[j] + vis * (mu_left + mu_right);
  }

  State out;
  out.t = t;
  out.u = FieldD::Zero(n + 1);
  // Without any mass the operator only sees constants; take the rest state.
  if (rho_f.maxCoeff() > 0.0) out.u.segment(1, m) = solve_tridiagonal(sub, diag, super, momentum);
  out.u[0] = out.u[1];
  out.u[n] = out.u[n - 1];
  for (std::ptrdiff_t j = 0; j <= n; ++j)
    if (!std::isfinite(out.u[j])) throw IntegrationError("non-finite velocity", j, stage);
  out.m = rho_f * out.u;
  out.rho = std::move(rho);
  return out;
}

} // namespace

State step(const State& state, double dt, const Grid& grid, const Params& params) {
  const std::ptrdiff_t m = grid.n_cells() - 1;
  const FieldD m0 = state.m.segment(1, m);

  const ExplicitIncrement e0 = explicit_increment(state, dt, grid, params, 1);
  const State s1 = viscous_solve(state.t + dt, e0.rho, m0 + e0.momentum, dt, grid, params, 1);

  // Heun average of the explicit parts; the velocity comes from one more implicit
  // solve so that it stays slaved to the viscous balance where the density vanishes.
  const ExplicitIncrement e1 = explicit_increment(s1, dt, grid, params, 2);
  FieldD rho = 0.5 * (state.rho + e1.rho);
  return viscous_solve(state.t + dt, std::move(rho), m0 + 0.5 * (e0.momentum + e1.momentum), dt, grid,
                       params, 2);
}

} // namespace ns1d
