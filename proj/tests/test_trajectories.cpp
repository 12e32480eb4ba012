#include <doctest.h>

#include <cmath>
#include <random>

#include "ns1d/run.hpp"
#include "oracles.hpp"

using namespace ns1d;

namespace {

State gaussian_state(const Grid& g, double t = 0.0) {
  Params p;
  p.half_width = g.half_width;
  p.n_cells = g.n_cells();
  InitialProfile prof;
  State s = build_initial_data(prof, g, p).state;
  s.t = t;
  return s;
}

State evolve(State s, double t_end, const Grid& g, const Params& p) {
  while (s.t < t_end - 1e-14) s = step(s, std::min(run_dt(s, g, p), t_end - s.t), g, p);
  return s;
}

} // namespace

TEST_SUITE("trajectories") {

TEST_CASE("xi field against a running sum") {
  const Grid g = make_grid(3.0, 50);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  FieldD rho(50), u(51);
  for (auto& r : rho) r = 1.0 + d(rng);
  for (auto& v : u) v = d(rng);
  const State s = make_state<double>(0.0, rho, u);
  const FieldD xi = xi_field(s, g);

  double acc = 0.0;
  CHECK(xi[0] == 0.0);
  for (int j = 1; j <= 50; ++j) {
    acc += 0.5 * (s.m[j - 1] + s.m[j]) * g.dx;
    CHECK(xi[j] == doctest::Approx(acc).epsilon(1e-14).scale(1.0));
  }
  std::vector<double> m(s.m.data(), s.m.data() + 51);
  CHECK(xi[50] == doctest::Approx(oracle::face_sum(m, g.dx)).epsilon(1e-14).scale(1.0));
}

TEST_CASE("xi vanishes at the right wall for odd momentum") {
  const Grid g = make_grid(4.0, 64);
  const FieldD rho = (-g.centers.square()).exp();
  const FieldD u = g.faces * (-g.faces.square()).exp();
  const State s = make_state<double>(0.0, rho, u);
  CHECK(std::abs(xi_field(s, g)[64]) < 1e-15);
}

TEST_CASE("interpolation") {
  const Grid g = make_grid(2.0, 16);
  const FieldD lin_f = 3.0 * g.faces - 1.0;
  const FieldD lin_c = 3.0 * g.centers - 1.0;
  for (double x : {-1.9, -0.3, 0.0, 0.77, 1.6})
    CHECK(interpolate_faces(lin_f, g, x) == doctest::Approx(3.0 * x - 1.0).epsilon(1e-14));
  for (double x : {-1.8, -0.3, 0.77, 1.8})
    CHECK(interpolate_cells(lin_c, g, x) == doctest::Approx(3.0 * x - 1.0).epsilon(1e-14));
  CHECK(interpolate_faces(lin_f, g, 5.0) == lin_f[16]);
  CHECK(interpolate_cells(lin_c, g, -1.99) == lin_c[0]);
}

TEST_CASE("seeding") {
  Params p;
  const Grid g = make_grid(10.0, 256);
  const ParticleSet empty = seed_particles(vacuum_state(g), g, p, 64);
  CHECK(empty.size() == 1);
  CHECK(is_vacuum_sentinel(empty.xi_eta[0]));

  const State s = gaussian_state(g);
  const ParticleSet ps = seed_particles(s, g, p, 64);
  REQUIRE(ps.size() == 65);
  CHECK(ps.positions[64] == doctest::Approx(0.0).scale(1.0).epsilon(g.dx));
  CHECK(ps.initial_sup >= ps.sup());
  // at rest xi = 0, so the sup is eta at the peak
  CHECK(ps.initial_sup == doctest::Approx(eta(s.rho.maxCoeff(), p.beta)).epsilon(1e-14));
  for (std::ptrdiff_t k = 0; k < 64; ++k) CHECK(s.rho.maxCoeff() * 1e-3 <= interpolate_cells(s.rho, g, ps.positions[k]));
}

TEST_CASE("advection") {
  Params p;
  const Grid g = make_grid(10.0, 200);
  const State s = gaussian_state(g);
  const ParticleSet ps = seed_particles(s, g, p, 20);

  const ParticleSet same = advect_particles(ps, s, s, 0.1, g, p);
  CHECK((same.positions == ps.positions).all());

  State c = make_state<double>(0.0, s.rho, FieldD::Constant(201, 0.3));
  const ParticleSet shifted = advect_particles(ps, c, c, 0.5, g, p);
  CHECK(((shifted.positions - ps.positions) - 0.15).abs().maxCoeff() < 1e-13);

  // u = k x: x(t) = x0 exp(k t), Heun error O(dt^2)
  const double k = 0.2, t_end = 1.0;
  const State lin = make_state<double>(0.0, s.rho, (k * g.faces).eval());
  double prev_err = 0.0;
  for (int n : {50, 100, 200}) {
    ParticleSet q = ps;
    const double dt = t_end / n;
    for (int i = 0; i < n; ++i) q = advect_particles(q, lin, lin, dt, g, p);
    const double err = (q.positions - ps.positions * std::exp(k * t_end)).abs().maxCoeff();
    if (prev_err > 0.0) CHECK(prev_err / err == doctest::Approx(4.0).epsilon(0.05));
    prev_err = err;
  }

  State push = make_state<double>(0.0, s.rho, FieldD::Constant(201, 50.0));
  const ParticleSet hit = advect_particles(ps, push, push, 1.0, g, p);
  CHECK(hit.clamped.all());
  CHECK((hit.positions == g.half_width).all());
}

TEST_CASE("momentum potential residual") {
  Params p;
  const Grid g = make_grid(10.0, 128);
  const State v0 = vacuum_state(g, 0.0), v1 = vacuum_state(g, 0.1);
  CHECK(momentum_potential_residual(v0, v1, 0.1, g, p).linf == 0.0);

  // density at the wall: the relation picks up the wall pressure
  const State c0 = make_state<double>(0.0, FieldD::Constant(128, 0.5), FieldD::Zero(129));
  State c1 = c0;
  c1.t = 0.1;
  CHECK(momentum_potential_residual(c0, c1, 0.1, g, p).linf == doctest::Approx(std::pow(0.5, p.gamma)));

  // discrete evolution: the residual is first order in dx
  double prev = 0.0;
  for (int n : {256, 512, 1024}) {
    Params q = p;
    q.n_cells = n;
    const Grid gg = make_grid(q);
    const State a = evolve(gaussian_state(gg), 0.2, gg, q);
    const double dt = run_dt(a, gg, q);
    const State b = step(a, dt, gg, q);
    const double r = momentum_potential_residual(a, b, dt, gg, q).linf;
    if (prev > 0.0) {
      CHECK(prev / r > 1.5);
      CHECK(prev / r < 3.0);
    }
    prev = r;
  }
}

TEST_CASE("density bound monitor") {
  Params p;
  const Grid g = make_grid(10.0, 256);
  const State s = make_state<double>(0.0, gaussian_state(g).rho, (0.1 * (g.faces / 3.0).sin()).eval());
  const ParticleSet ps = seed_particles(s, g, p, 32);
  DensityBoundMonitor mon;
  const BoundReport r = mon.update(ps, s, g, p);
  const double kinetic = std::sqrt(((face_density(s.rho) * s.u.square()).sum() -
                                    0.5 * (face_density(s.rho)[0] * s.u[0] * s.u[0] +
                                           face_density(s.rho)[256] * s.u[256] * s.u[256])) *
                                   g.dx);
  const double mass = s.rho.sum() * g.dx;
  CHECK(r.momentum_bound == doctest::Approx(kinetic * std::sqrt(mass)).epsilon(1e-13));
  CHECK(eta(r.rho_cap, p.beta) == doctest::Approx(ps.initial_sup + r.momentum_bound).epsilon(1e-12));
  CHECK(r.max_rho <= r.rho_cap);
  CHECK_FALSE(r.violated);

  // the momentum bound is a running sup
  const State rest = make_state<double>(0.0, s.rho, FieldD::Zero(257));
  CHECK(mon.update(ps, rest, g, p).momentum_bound == r.momentum_bound);
}

TEST_CASE("drift audit") {
  ParticleSet ps;
  ps.positions = FieldD::Zero(3);
  ps.clamped = Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(3, false);
  const double ninf = -std::numeric_limits<double>::infinity();
  ps.xi_eta = FieldD(3);
  ps.xi_eta << 1.0, 0.5, ninf;
  DriftAudit audit;
  audit.update(ps);
  CHECK(audit.max_particle_rise() == 0.0);

  ps.xi_eta << 0.8, 0.5, 0.1;  // marker 2 leaves vacuum: no rise recorded
  audit.update(ps);
  CHECK(audit.max_particle_rise() == 0.0);
  CHECK(audit.max_sup_rise() == 0.0);

  ps.xi_eta << 0.9, 0.5, 0.4;
  audit.update(ps);
  CHECK(audit.max_particle_rise() == doctest::Approx(0.3));
  CHECK(audit.max_sup_rise() == doctest::Approx(0.1));
}

TEST_CASE("run: the recorded sup at t = 0 is the seeded sup") {
  Params p;
  p.n_cells = 256;
  p.t_end = 0.05;
  InitialProfile prof;
  const Grid g = make_grid(p);
  const State s = build_initial_data(prof, g, p).state;
  const ParticleSet ps = seed_particles(s, g, p, 64);
  const RunResult r = run(p, prof);
  REQUIRE_FALSE(r.records.empty());
  CHECK(r.records.front().sup_xi_eta == doctest::Approx(ps.sup()));
  CHECK(r.bound.initial_sup == doctest::Approx(ps.initial_sup));
}

}
