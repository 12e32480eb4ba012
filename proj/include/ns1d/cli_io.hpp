#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ns1d/run.hpp"

namespace ns1d {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;     ///< config or IO error
inline constexpr int kExitViolation = 2;  ///< monitored bound violated, or the integrator failed

struct RunConfig {
  Params params;
  InitialProfile profile;
  RunOptions options;
  std::filesystem::path outputs = "ns1d_out";
  bool emit_snapshots = false;
  bool emit_plots_script = false;
  bool emit_particles = false;
  std::uint64_t seed = 0;
  std::vector<std::ptrdiff_t> convergence_levels{256, 512, 1024};
};

enum class SweepAxis { beta, gamma, alpha, n_cells };

struct SweepConfig {
  RunConfig base;
  SweepAxis axis = SweepAxis::beta;
  std::vector<double> values;

  /// One RunConfig per value, each writing to its own subdirectory of base.outputs.
  std::vector<RunConfig> members() const;
};

using Config = std::variant<RunConfig, SweepConfig>;

/// Flat `key = value` file with `#` comments. Unknown keys, malformed lines and
/// invalid values raise ConfigError carrying the line number. A `table` key is
/// resolved relative to the config file.
Config parse_config(const std::filesystem::path& path);
Config parse_config_text(std::string_view text, const std::filesystem::path& base_dir = {});

std::string sweep_axis_name(SweepAxis axis);

// ---- Files ----------------------------------------------------------------------------

/// Header with every DiagRecord field, then one row per record. Absent fields are empty.
std::string format_timeseries(const std::vector<DiagRecord>& records);
void emit_timeseries(const std::vector<DiagRecord>& records, const std::filesystem::path& path);

/// Columns x_center, rho, x_face, u, m; N + 1 rows, the last with empty center columns.
std::string format_snapshot(const State& state, const Grid& grid);
void emit_snapshot(const State& state, const Grid& grid, const std::filesystem::path& path);

struct Snapshot {
  FieldD x_center;
  FieldD x_face;
  State state;  ///< t is not stored in the file and loads as 0
};

/// Throws ValidationError naming the offending row, IoError if the file cannot be read.
Snapshot load_snapshot(const std::filesystem::path& path);
Snapshot parse_snapshot(std::string_view text);

void emit_violations(const RunResult& result, const std::filesystem::path& path);
void emit_summary(const RunConfig& config, const RunResult& result, const std::filesystem::path& path);
void emit_plot_script(const std::filesystem::path& path);

// ---- Commands -------------------------------------------------------------------------

struct ConvergenceReport {
  std::vector<std::ptrdiff_t> levels;
  std::vector<double> l1_differences;  ///< || R(rho_2N) - rho_N ||_1, one per adjacent pair
  std::vector<double> orders;          ///< log2 of consecutive difference ratios
};

/// Runs every level to params.t_end and compares adjacent levels after restricting
/// the finer density by pairwise averaging. Levels must double.
ConvergenceReport convergence_study(const RunConfig& config);

int cmd_run(const RunConfig& config, std::ostream& out);
int cmd_sweep(const SweepConfig& config, std::ostream& out);
int cmd_convergence(const RunConfig& config, std::ostream& out);
int cmd_ckn_check(const std::vector<double>& a_values, std::size_t family, std::uint64_t seed,
                  std::ostream& out);
int cmd_alpha_check(double alpha, std::ostream& out);

/// Sweep concurrency: NS1D_THREADS when set and positive, else the hardware count.
unsigned sweep_threads();

} // namespace ns1d
