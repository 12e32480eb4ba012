#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ns1d/diagnostics.hpp"
#include "ns1d/solver.hpp"
#include "ns1d/trajectories.hpp"

namespace ns1d {

/// Thresholds at which a monitored bound counts as violated.
struct MonitorTolerances {
  double energy = 1e-8;            ///< per-step energy increase, relative to E(0)
  double drift = 1e-3;             ///< rise of xi + eta along a marker, absolute
  double cap = 1e-3;               ///< max rho above the eta-implied cap, relative
  double mass = 1e-12;             ///< mass drift, relative to M(0)
  double interpolation = 1e-6;     ///< ||u||_inf interpolation ratio above 1
  double boundary_density = 1e-10; ///< wall density warning, relative to amplitude
};

struct Violation {
  std::string kind;
  std::ptrdiff_t step = 0;
  double t = 0.0;
  double value = 0.0;
  double limit = 0.0;
  std::ptrdiff_t occurrences = 1;
};

struct RunOptions {
  MonitorTolerances tolerances;
  std::ptrdiff_t particle_count = 0;  ///< 0 selects N/4
  double support_fraction = 1e-3;
  bool keep_records = true;
};

struct RunSinks {
  std::function<void(const DiagRecord&)> on_record;
  std::function<void(std::ptrdiff_t step, const State&)> on_snapshot;
  std::function<void(std::ptrdiff_t step, const ParticleSet&)> on_particles;
};

struct RunResult {
  State final_state;
  Grid grid;
  CompatibilityReport compatibility;
  std::vector<DiagRecord> records;
  std::vector<Violation> violations;
  std::vector<std::string> warnings;
  BoundReport bound;
  std::ptrdiff_t steps = 0;

  // Audits over the whole run.
  double min_rho = 0.0;
  double max_mass_drift = 0.0;        ///< relative
  double max_energy_increase = 0.0;   ///< per step, relative to E(0)
  double max_energy_residual = 0.0;   ///< |E_{n+1} - E_n + dt D_n|, per step
  double max_particle_rise = 0.0;
  double max_sup_rise = 0.0;
  double max_interpolation_ratio = 0.0;
  double max_cap_excess = 0.0;        ///< max over steps of max_rho / rho_cap - 1

  bool aborted = false;
  std::string abort_reason;
  std::optional<State> last_good;
};

/// Integrates from t = 0 to params.t_end. Every accepted step feeds the diagnostics
/// engine, the particle tracker and the bound monitors. Bounds that fail are
/// reported as violations; the run continues. A non-finite state aborts the run and
/// leaves the last good state in `last_good`.
RunResult run(const Params& params, const InitialProfile& profile, const RunSinks& sinks = {},
              const RunOptions& options = {});

} // namespace ns1d
