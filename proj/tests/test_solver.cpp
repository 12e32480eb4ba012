#include <doctest.h>

#include <random>

#include <Eigen/Dense>

#include "ns1d/run.hpp"
#include "oracles.hpp"

using namespace ns1d;

namespace {

State random_state(const Grid& g, std::uint64_t seed, double umax) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  FieldD rho(g.n_cells()), u(g.n_faces());
  for (auto& r : rho) r = d(rng) < 0.2 ? 0.0 : 2.0 * d(rng);
  for (auto& v : u) v = umax * (2.0 * d(rng) - 1.0);
  u[0] = u[1];
  u[g.n_faces() - 1] = u[g.n_faces() - 2];
  return make_state<double>(0.0, rho, u);
}

} // namespace

TEST_SUITE("solver") {

TEST_CASE("cfl_dt follows the stated formula") {
  Params p;
  const Grid g = make_grid(1.0, 200);
  State s = make_state<double>(0.0, FieldD::Ones(200), FieldD::Zero(201));
  CHECK(cfl_dt(s, g, p) == doctest::Approx(1.25e-5).epsilon(1e-12));

  const Grid coarse = make_grid(1.0, 100);
  State sc = make_state<double>(0.0, FieldD::Ones(100), FieldD::Zero(101));
  CHECK(cfl_dt(sc, coarse, p) / cfl_dt(s, g, p) == doctest::Approx(4.0).epsilon(1e-14));

  State vac = vacuum_state(g);
  CHECK(cfl_dt(vac, g, p) == doctest::Approx(p.cfl_visc * g.dx * g.dx * p.rho_floor).epsilon(1e-14));

  s.rho[17] = std::nan("");
  CHECK_THROWS_AS(cfl_dt(s, g, p), IntegrationError);
}

TEST_CASE("tridiagonal solve agrees with a dense LU solve") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const int n = 40;
  FieldD sub(n), diag(n), super(n), rhs(n);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    sub[i] = d(rng);
    super[i] = d(rng);
    diag[i] = 3.0 + d(rng);
    rhs[i] = d(rng);
    A(i, i) = diag[i];
    if (i > 0) A(i, i - 1) = sub[i];
    if (i + 1 < n) A(i, i + 1) = super[i];
  }
  const Eigen::VectorXd ref = A.partialPivLu().solve(rhs.matrix());
  const FieldD x = solve_tridiagonal(sub, diag, super, rhs);
  CHECK((x.matrix() - ref).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("upwind flux vanishes at the walls") {
  const Grid g = make_grid(1.0, 16);
  const State s = random_state(g, 4, 1.0);
  const FieldD f = upwind_mass_flux(s);
  CHECK(f[0] == 0.0);
  CHECK(f[16] == 0.0);
  for (int j = 1; j < 16; ++j) CHECK(f[j] == s.u[j] * (s.u[j] > 0 ? s.rho[j - 1] : s.rho[j]));
}

TEST_CASE("constant state at rest is exactly stationary") {
  Params p;
  const Grid g = make_grid(p);
  const State s = make_state<double>(0.0, FieldD::Constant(g.n_cells(), 0.7), FieldD::Zero(g.n_faces()));
  const State next = step(s, 1e-3, g, p);
  CHECK((next.rho == s.rho).all());
  CHECK((next.u == 0.0).all());
}

TEST_CASE("vacuum is a fixed point") {
  Params p;
  const Grid g = make_grid(p);
  const State next = step(vacuum_state(g), 1e-2, g, p);
  CHECK((next.rho == 0.0).all());
  CHECK((next.u == 0.0).all());
}

TEST_CASE("mass conservation and positivity on random states") {
  Params p;
  p.n_cells = 128;
  const Grid g = make_grid(p);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    State s = random_state(g, 100 + seed, 1.0);
    const double dt = 0.4 * g.dx / (1.0 + std::sqrt(2.0 * 2.0));
    std::vector<double> before(s.rho.data(), s.rho.data() + s.rho.size());
    const double m0 = oracle::cell_sum(before, g.dx);
    for (int k = 0; k < 5; ++k) {
      try {
        s = step(s, dt, g, p);
      } catch (const CflViolation&) {
        s = step(s, 0.25 * dt, g, p);
      }
      CHECK(s.rho.minCoeff() >= 0.0);
      std::vector<double> after(s.rho.data(), s.rho.data() + s.rho.size());
      CHECK(std::abs(oracle::cell_sum(after, g.dx) - m0) <= 1e-14 * m0);
      CHECK(s.u[0] == s.u[1]);
      CHECK(s.u[128] == s.u[127]);
    }
  }
}

TEST_CASE("a step beyond the upwind limit is refused") {
  Params p;
  const Grid g = make_grid(1.0, 16);
  State s = make_state<double>(0.0, FieldD::Ones(16), FieldD::Constant(17, 1.0));
  CHECK_THROWS_AS(step(s, 2.0 * g.dx, g, p), CflViolation);
}

TEST_CASE("initial data: compact bump at rest has the closed-form g") {
  Params p;
  const Grid g = make_grid(p);
  InitialProfile prof;
  prof.kind = DensityKind::compact_bump;
  prof.amplitude = 1.0;
  prof.support_radius = 2.0;
  prof.smoothness = 4;
  const InitialData init = build_initial_data(prof, g, p);
  CHECK((init.state.u == 0.0).all());
  int checked = 0;
  for (Eigen::Index i = 0; i < g.n_cells(); ++i) {
    const double x = g.centers[i], s = x / 2.0;
    if (std::abs(s) >= 1.0) {
      CHECK(init.state.rho[i] == 0.0);
      continue;
    }
    const double rho = std::pow(1.0 - s * s, 4);
    CHECK(init.state.rho[i] == doctest::Approx(rho).epsilon(1e-14));
    if (rho <= p.rho_floor) continue;
    const double rho_x = 4.0 * std::pow(1.0 - s * s, 3) * (-2.0 * s / 2.0);
    const double g_ref = -2.0 * rho * rho_x / std::sqrt(rho);
    CHECK(init.report.g_values[i] == doctest::Approx(g_ref).epsilon(1e-7).scale(1e-9));
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("initial data: total vacuum gives zeros") {
  Params p;
  const Grid g = make_grid(p);
  InitialProfile prof;
  prof.amplitude = 0.0;
  const InitialData init = build_initial_data(prof, g, p);
  CHECK((init.state.rho == 0.0).all());
  CHECK((init.state.u == 0.0).all());
  CHECK(init.report.weighted_l2 == 0.0);
  CHECK(init.report.g_l2 == 0.0);
  CHECK(init.report.max_residual == 0.0);
}

TEST_CASE("initial data: weighted norm converges under refinement") {
  Params p;
  InitialProfile prof;
  prof.kind = DensityKind::compact_bump;
  prof.smoothness = 4;
  p.n_cells = 1024;
  const double coarse = build_initial_data(prof, make_grid(p), p).report.weighted_l2;
  p.n_cells = 8192;
  const double fine = build_initial_data(prof, make_grid(p), p).report.weighted_l2;
  CHECK(std::isfinite(coarse));
  CHECK(std::abs(coarse - fine) <= 1e-3 * fine);
}

TEST_CASE("run with t_end = 0 returns the initial state and one record") {
  Params p;
  p.n_cells = 64;
  p.t_end = 0.0;
  const RunResult r = run(p, InitialProfile{});
  CHECK(r.steps == 0);
  CHECK(r.records.size() == 1);
  CHECK(r.final_state.t == 0.0);
}

TEST_CASE("vacuum-free smooth run: energy nonincreasing") {
  Params p;
  p.n_cells = 512;
  p.t_end = 0.5;
  const Grid g = make_grid(p);
  InitialProfile prof;
  prof.kind = DensityKind::custom_table;
  prof.velocity_kind = VelocityKind::custom_table;
  prof.table = make_state<double>(0.0, 0.5 + 0.5 * (-(g.centers / 2.0).square()).exp(),
                                  0.3 * (M_PI * g.faces / g.half_width).sin());
  const RunResult r = run(p, prof);
  CHECK_FALSE(r.aborted);
  CHECK(r.max_energy_increase <= 1e-8);
  CHECK(r.max_mass_drift <= 1e-12);
}

TEST_CASE("compactly supported data stays nonnegative") {
  Params p;
  p.n_cells = 1024;
  InitialProfile prof;
  prof.kind = DensityKind::compact_bump;
  const RunResult r = run(p, prof);
  CHECK_FALSE(r.aborted);
  CHECK(r.min_rho >= 0.0);
  CHECK(r.max_interpolation_ratio <= 1.0 + 1e-6);
}

TEST_CASE("identical params give identical record streams") {
  Params p;
  p.n_cells = 128;
  p.t_end = 0.2;
  const RunResult a = run(p, InitialProfile{});
  const RunResult b = run(p, InitialProfile{});
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) CHECK(diag_values(a.records[k]) == diag_values(b.records[k]));
}

}
