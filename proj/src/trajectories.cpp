#include "ns1d/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ns1d/stencils.hpp"

namespace ns1d {

double ParticleSet::sup() const {
  double best = -std::numeric_limits<double>::infinity();
  for (std::ptrdiff_t p = 0; p < xi_eta.size(); ++p)
    if (!is_vacuum_sentinel(xi_eta[p])) best = std::max(best, xi_eta[p]);
  return best;
}

FieldD xi_field(const State& s, const Grid& grid) {
  const std::ptrdiff_t nf = s.m.size();
  FieldD xi(nf);
  xi[0] = 0.0;
  for (std::ptrdiff_t j = 1; j < nf; ++j) xi[j] = xi[j - 1] + 0.5 * (s.m[j - 1] + s.m[j]) * grid.dx;
  return xi;
}

double interpolate_faces(const FieldD& values, const Grid& grid, double x) {
  const std::ptrdiff_t n = grid.n_cells();
  const double s = (x + grid.half_width) / grid.dx;
  if (s <= 0.0) return values[0];
  if (s >= double(n)) return values[n];
  const auto j = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(s), n - 1);
  const double w = s - double(j);
  return (1.0 - w) * values[j] + w * values[j + 1];
}

double interpolate_cells(const FieldD& values, const Grid& grid, double x) {
  const std::ptrdiff_t n = grid.n_cells();
  const double s = (x + grid.half_width) / grid.dx - 0.5;
  if (s <= 0.0) return values[0];
  if (s >= double(n - 1)) return values[n - 1];
  const auto i = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(s), n - 2);
  const double w = s - double(i);
  return (1.0 - w) * values[i] + w * values[i + 1];
}

double sample_xi_eta(const FieldD& xi, const State& state, const Grid& grid, double x, double beta) {
  return interpolate_faces(xi, grid, x) + eta(interpolate_cells(state.rho, grid, x), beta);
}

ParticleSet seed_particles(const State& state, const Grid& grid, const Params& params,
                           std::ptrdiff_t count, double support_fraction) {
  ParticleSet ps;
  std::ptrdiff_t imax = 0;
  const double rho_max = state.rho.maxCoeff(&imax);
  const FieldD xi = xi_field(state, grid);

  std::ptrdiff_t first = -1, last = -1;
  for (std::ptrdiff_t i = 0; i < grid.n_cells(); ++i) {
    if (rho_max > 0.0 && state.rho[i] > support_fraction * rho_max) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0 || count < 1) {
    ps.positions = FieldD::Constant(1, grid.centers[imax]);
  } else {
    const double a = grid.centers[first];
    const double b = grid.centers[last];
    ps.positions.resize(count + 1);
    for (std::ptrdiff_t p = 0; p < count; ++p)
      ps.positions[p] = count == 1 ? 0.5 * (a + b) : a + (b - a) * double(p) / double(count - 1);
    ps.positions[count] = grid.centers[imax];
  }
  ps.clamped = Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(ps.positions.size(), false);
  ps.xi_eta.resize(ps.positions.size());
  for (std::ptrdiff_t p = 0; p < ps.size(); ++p)
    ps.xi_eta[p] = sample_xi_eta(xi, state, grid, ps.positions[p], params.beta);

  double sup = ps.sup();
  const FieldD rho_f = face_density(state.rho);
  for (std::ptrdiff_t j = 0; j < grid.n_faces(); ++j) {
    const double v = xi[j] + eta(rho_f[j], params.beta);
    if (!is_vacuum_sentinel(v)) sup = std::max(sup, v);
  }
  for (std::ptrdiff_t i = 0; i < grid.n_cells(); ++i) {
    const double v = interpolate_faces(xi, grid, grid.centers[i]) + eta(state.rho[i], params.beta);
    if (!is_vacuum_sentinel(v)) sup = std::max(sup, v);
  }
  ps.initial_sup = sup;
  return ps;
}

ParticleSet advect_particles(const ParticleSet& ps, const State& before, const State& after, double dt,
                             const Grid& grid, const Params& params) {
  ParticleSet out = ps;
  const double lo = -grid.half_width;
  const double hi = grid.half_width;
  for (std::ptrdiff_t p = 0; p < ps.size(); ++p) {
    const double x = ps.positions[p];
    const double v0 = interpolate_faces(before.u, grid, x);
    const double predicted = x + dt * v0;
    const double v1 = interpolate_faces(after.u, grid, predicted);
    double next = x + 0.5 * dt * (v0 + v1);
    if (next <= lo || next >= hi) {
      next = std::clamp(next, lo, hi);
      out.clamped[p] = true;
    }
    out.positions[p] = next;
  }
  const FieldD xi = xi_field(after, grid);
  for (std::ptrdiff_t p = 0; p < ps.size(); ++p)
    out.xi_eta[p] = sample_xi_eta(xi, after, grid, out.positions[p], params.beta);
  return out;
}

ResidualField momentum_potential_residual(const State& state_n, const State& state_np1, double dt,
                                          const Grid& grid, const Params& params) {
  const FieldD xi_t = (xi_field(state_np1, grid) - xi_field(state_n, grid)) / dt;
  const FieldD rho = 0.5 * (state_n.rho + state_np1.rho);
  const FieldD u = 0.5 * (state_n.u + state_np1.u);
  const FieldD rho_f = face_density(rho);
  const FieldD mu_f = face_density(viscosity_field(rho, params.beta).eval());
  const FieldD p_f = face_density(pressure_field(rho, params.gamma).eval());
  ResidualField out;
  out.residual = xi_t + rho_f * u.square() - mu_f * gradient(u, grid) + p_f;
  out.linf = out.residual.abs().maxCoeff();
  return out;
}

BoundReport DensityBoundMonitor::update(const ParticleSet& ps, const State& state, const Grid& grid,
                                        const Params& params) {
  const FieldD rho_f = face_density(state.rho);
  const double kinetic = std::sqrt(integrate((rho_f * state.u.square()).eval(), grid));
  const double mass = integrate(state.rho, grid);
  momentum_bound_ = std::max(momentum_bound_, kinetic * std::sqrt(mass));

  BoundReport r;
  r.sup_xi_eta = ps.sup();
  r.initial_sup = ps.initial_sup;
  r.momentum_bound = momentum_bound_;
  r.max_rho = state.rho.maxCoeff();
  r.rho_cap = std::isfinite(ps.initial_sup) ? eta_inverse(ps.initial_sup + momentum_bound_, params.beta)
                                            : 0.0;
  r.violated = r.max_rho > r.rho_cap * (1.0 + tolerance_);
  return r;
}

void DriftAudit::update(const ParticleSet& ps) {
  const double sup = ps.sup();
  if (!started_) {
    running_min_ = ps.xi_eta;
    sup_min_ = sup;
    started_ = true;
    return;
  }
  for (std::ptrdiff_t p = 0; p < ps.size(); ++p) {
    const double v = ps.xi_eta[p];
    if (is_vacuum_sentinel(v)) continue;
    if (is_vacuum_sentinel(running_min_[p])) {
      running_min_[p] = v;  // marker left vacuum; start its series here
      continue;
    }
    max_particle_rise_ = std::max(max_particle_rise_, v - running_min_[p]);
    running_min_[p] = std::min(running_min_[p], v);
  }
  if (std::isfinite(sup)) {
    if (std::isfinite(sup_min_)) max_sup_rise_ = std::max(max_sup_rise_, sup - sup_min_);
    sup_min_ = std::isfinite(sup_min_) ? std::min(sup_min_, sup) : sup;
  }
}

} // namespace ns1d
