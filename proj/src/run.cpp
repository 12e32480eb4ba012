#include "ns1d/run.hpp"

#include <algorithm>
#include <cmath>

namespace ns1d {

namespace {

void note(std::vector<Violation>& list, const std::string& kind, std::ptrdiff_t step, double t, double value,
          double limit) {
  for (Violation& v : list) {
    if (v.kind == kind) {
      ++v.occurrences;
      return;
    }
  }
  list.push_back({kind, step, t, value, limit, 1});
}

} // namespace

RunResult run(const Params& params, const InitialProfile& profile, const RunSinks& sinks,
              const RunOptions& options) {
  params.validate();
  RunResult result;
  result.grid = make_grid(params);
  const Grid& grid = result.grid;
  const MonitorTolerances& tol = options.tolerances;

  InitialData init = build_initial_data(profile, grid, params);
  result.compatibility = init.report;
  State state = std::move(init.state);

  const std::ptrdiff_t count = options.particle_count > 0 ? options.particle_count : grid.n_cells() / 4;
  ParticleSet particles = seed_particles(state, grid, params, count, options.support_fraction);
  DensityBoundMonitor bound_monitor(tol.cap);
  DriftAudit drift;
  DiagnosticsEngine engine(grid, params);

  const double mass0 = integrate(state.rho, grid);
  const double energy0 = first_order_group(state, grid, params).energy;
  const double amplitude = std::max(profile.amplitude, state.rho.maxCoeff());
  double energy_prev = energy0;
  bool boundary_warned = false;
  result.min_rho = state.rho.minCoeff();

  const auto observe = [&](std::ptrdiff_t step_index) {
    drift.update(particles);
    result.bound = bound_monitor.update(particles, state, grid, params);
    const double sup = particles.sup();
    const DiagRecord rec = engine.observe(state, std::isfinite(sup) ? sup : 0.0);
    if (sinks.on_record) sinks.on_record(rec);
    if (options.keep_records) result.records.push_back(rec);
    if (sinks.on_particles) sinks.on_particles(step_index, particles);

    const double t = state.t;
    result.min_rho = std::min(result.min_rho, state.rho.minCoeff());
    const double mass_drift = mass0 > 0.0 ? std::abs(rec.mass - mass0) / mass0 : std::abs(rec.mass);
    result.max_mass_drift = std::max(result.max_mass_drift, mass_drift);
    if (mass_drift > tol.mass) note(result.violations, "mass_drift", step_index, t, mass_drift, tol.mass);

    if (step_index > 0 && energy0 > 0.0) {
      const double rise = (rec.energy - energy_prev) / energy0;
      result.max_energy_increase = std::max(result.max_energy_increase, rise);
      if (rise > tol.energy) note(result.violations, "energy_increase", step_index, t, rise, tol.energy);
    }
    energy_prev = rec.energy;

    result.max_particle_rise = drift.max_particle_rise();
    result.max_sup_rise = drift.max_sup_rise();
    if (drift.max_particle_rise() > tol.drift)
      note(result.violations, "xi_eta_drift", step_index, t, drift.max_particle_rise(), tol.drift);
    if (std::isfinite(sup) && sup > particles.initial_sup + tol.drift)
      note(result.violations, "xi_eta_sup_growth", step_index, t, sup - particles.initial_sup, tol.drift);

    if (result.bound.rho_cap > 0.0)
      result.max_cap_excess = std::max(result.max_cap_excess, result.bound.max_rho / result.bound.rho_cap - 1.0);
    if (result.bound.violated)
      note(result.violations, "density_cap", step_index, t, result.bound.max_rho, result.bound.rho_cap);

    if (params.weighted) {
      const InterpolationReport ir = uinf_interpolation_check(state, grid, params);
      result.max_interpolation_ratio = std::max(result.max_interpolation_ratio, ir.ratio);
      if (ir.ratio > 1.0 + tol.interpolation)
        note(result.violations, "uinf_interpolation", step_index, t, ir.ratio, 1.0 + tol.interpolation);
    }

    const double wall = std::max(state.rho[0], state.rho[grid.n_cells() - 1]);
    if (!boundary_warned && wall > tol.boundary_density * amplitude) {
      result.warnings.push_back("density reached the wall at t = " + std::to_string(t) +
                                "; enlarge L so the support stays inside the window");
      boundary_warned = true;
    }

    if (sinks.on_snapshot && params.snapshot_every > 0 && step_index % params.snapshot_every == 0)
      sinks.on_snapshot(step_index, state);
  };

  observe(0);
  std::ptrdiff_t steps = 0;
  const double t_end = params.t_end;
  while (t_end - state.t > 1e-14 * std::max(1.0, t_end)) {
    double dt = std::min(run_dt(state, grid, params), t_end - state.t);
    const double rate = dissipation_rate(state, grid, params);
    State next;
    try {
      for (int attempt = 0;; ++attempt) {
        try {
          next = step(state, dt, grid, params);
          break;
        } catch (const CflViolation&) {
          if (attempt >= 40) throw;
          dt *= 0.5;
        }
      }
    } catch (const IntegrationError& e) {
      result.aborted = true;
      result.abort_reason = e.what();
      result.last_good = state;
      note(result.violations, "integration_error", steps + 1, state.t, 0.0, 0.0);
      break;
    }
    if (t_end - next.t <= 1e-14 * std::max(1.0, t_end)) next.t = t_end;
    const double energy_before = energy_prev;
    particles = advect_particles(particles, state, next, dt, grid, params);
    state = std::move(next);
    ++steps;
    observe(steps);
    result.max_energy_residual =
        std::max(result.max_energy_residual, std::abs(energy_prev - energy_before + dt * rate));
  }

  result.steps = steps;
  if (sinks.on_snapshot && params.snapshot_every > 0 && steps % params.snapshot_every != 0)
    sinks.on_snapshot(steps, state);
  result.final_state = std::move(state);
  return result;
}

} // namespace ns1d
