#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rgm/lab.hpp"
#include "rgm/mobility.hpp"
#include "rgm/model.hpp"

using namespace rgm;
using namespace rgm::mobility;

namespace {

constexpr double kPi = 3.14159265358979323846;

MobilityConfig base_config() {
  MobilityConfig cfg;
  cfg.k = 2;
  cfg.d0 = 0.2;
  cfg.v0 = 0.1;
  cfg.T = 1.0;
  cfg.t_link = 0.2;
  cfg.r_link = 0.15;
  cfg.dt = 0.05;
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("mobility");

TEST_CASE("configuration validation") {
  CHECK_NOTHROW(base_config().validate());
  auto cfg = base_config();
  cfg.dt = 0.5;  // dt > t_link
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.t_link = 2.0;  // t_link > T
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.d0 = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.k = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = base_config();
  CHECK(cfg.step_count() == 21);
  CHECK(cfg.required_run() == 5);
}

TEST_CASE("clustered placement") {
  auto cfg = base_config();
  cfg.k = 1;
  cfg.d0 = 0.1;
  const auto pts = sample_initial_positions(cfg, 40, RngKey{301, 0});
  REQUIRE(pts.size() == 40);
  for (const auto& p : pts) {
    CHECK(p[0] >= 0.0);
    CHECK(p[0] < 1.0);
    CHECK(p[1] >= 0.0);
    CHECK(p[1] < 1.0);
  }
  // One pivot: every pair within 2*d0 through the pivot (torus metric).
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double dx = std::abs(pts[i][0] - pts[j][0]);
      double dy = std::abs(pts[i][1] - pts[j][1]);
      dx = std::min(dx, 1.0 - dx);
      dy = std::min(dy, 1.0 - dy);
      CHECK(std::sqrt(dx * dx + dy * dy) <= 2 * cfg.d0 + 1e-12);
    }
  }
  // Deterministic given the key.
  CHECK(sample_initial_positions(cfg, 40, RngKey{301, 0}) == pts);

  // Covering radius: acceptance rate one, uniform draws.
  cfg.d0 = 1.5;
  CHECK_NOTHROW(sample_initial_positions(cfg, 10, RngKey{303, 0}));

  // Negligible acceptance area aborts.
  cfg.d0 = 1e-4;
  CHECK_THROWS(sample_initial_positions(cfg, 10, RngKey{305, 0}));
}

TEST_CASE("kinematics of the straight family") {
  auto cfg = base_config();
  const PhasePoint p{0.5, 0.5, 0.0, {}};
  auto at = position_at(p, cfg, 0.0);
  CHECK(at[0] == doctest::Approx(0.5));
  CHECK(at[1] == doctest::Approx(0.5));
  at = position_at(p, cfg, 1.0);
  CHECK(at[0] == doctest::Approx(0.6));
  CHECK(at[1] == doctest::Approx(0.5));

  // Torus wrap.
  const PhasePoint edge{0.95, 0.5, 0.0, {}};
  at = position_at(edge, cfg, 1.0);
  CHECK(at[0] == doctest::Approx(0.05));

  // Reflection in clipped-square mode.
  cfg.domain_mode = MobilityConfig::DomainMode::ClippedSquare;
  at = position_at(edge, cfg, 1.0);
  CHECK(at[0] == doctest::Approx(0.95));
  CHECK(at[1] == doctest::Approx(0.5));

  CHECK_THROWS(position_at(p, cfg, -0.1));
  CHECK_THROWS(position_at(p, cfg, cfg.T + 0.1));
}

TEST_CASE("arc trajectories close after a full circle") {
  auto cfg = base_config();
  cfg.trajectory_family = MobilityConfig::TrajectoryFamily::Arc;
  const double kappa = 2.0 * kPi / (cfg.v0 * cfg.T);  // full turn within T
  const PhasePoint p{0.3, 0.7, kappa, {}};
  const auto end = position_at(p, cfg, cfg.T);
  CHECK(end[0] == doctest::Approx(0.3).epsilon(1).scale(1e-9));
  CHECK(end[1] == doctest::Approx(0.7).epsilon(1).scale(1e-9));
  // Constant speed: chord of a small step has length ~ v0 * step.
  const auto a = position_at(p, cfg, 0.0);
  const auto b = position_at(p, cfg, 1e-4);
  const double chord = std::hypot(b[0] - a[0], b[1] - a[1]);
  CHECK(chord == doctest::Approx(cfg.v0 * 1e-4).epsilon(1e-4));
}

TEST_CASE("radio distance") {
  auto cfg = base_config();
  const Position a{0.1, 0.1};
  const Position b{0.2, 0.1};
  CHECK(radio_distance(a, b, std::nullopt, cfg) == doctest::Approx(0.1));
  CHECK(radio_distance(a, a, std::nullopt, cfg) == 0.0);
  // Torus metric wraps.
  CHECK(radio_distance({0.05, 0.5}, {0.95, 0.5}, std::nullopt, cfg) ==
        doctest::Approx(0.1));
  // Fading scales multiplicatively but keeps d(x, x) = 0.
  cfg.fading = MobilityConfig::Fading{0.5};
  CHECK(radio_distance(a, b, 1.0, cfg) == doctest::Approx(0.1 * std::exp(0.5)));
  CHECK(radio_distance(a, a, 1.0, cfg) == 0.0);
}

TEST_CASE("link rule") {
  auto cfg = base_config();
  cfg.v0 = 1e-9;  // effectively stationary
  const PhasePoint a{0.4, 0.4, 0.0, {}};
  const PhasePoint near{0.45, 0.4, kPi / 2, {}};
  const PhasePoint far{0.9, 0.9, 0.0, {}};
  CHECK(link_indicator(a, near, cfg, 0.5));   // constant distance 0.05 < 0.15
  CHECK_FALSE(link_indicator(a, far, cfg, 0.5));
  // Identical trajectories always link when r_link > 0.
  CHECK(link_indicator(a, a, cfg, 0.5));
  // r_link = 0 and distinct starts never link.
  auto strict = cfg;
  strict.r_link = 0.0;
  CHECK_FALSE(link_indicator(a, near, strict, 0.5));
}

TEST_CASE("scenario model plugs into the laboratory") {
  const auto model = build_mobility_model(base_config());
  CHECK(model.flags().local);
  CHECK(model.flags().name_invariant);
  CHECK_FALSE(model.flags().free_nodes);

  const auto g1 = sample_graph(model, 25, RngKey{307, 0});
  const auto g2 = sample_graph(model, 25, RngKey{307, 0});
  CHECK(g1 == g2);

  const auto sym = lab::exchangeability_test(model, 12, 2000, 0.01, 311);
  CHECK_FALSE(sym.inconclusive);
  CHECK(sym.pass);
}

TEST_CASE("dense regime sanity") {
  auto cfg = base_config();
  cfg.d0 = 1.5;      // no rejection
  cfg.r_link = 2.0;  // everything in range
  const auto model = build_mobility_model(cfg);
  const auto deg = lab::estimate(model, 12, 50, lab::Statistic::avg_degree(), 313);
  CHECK(deg.mean == doctest::Approx(11.0).epsilon(1e-9));
}

TEST_CASE("sampling-step refinement keeps link estimates stable") {
  auto coarse = base_config();
  coarse.fading.reset();
  auto fine = coarse;
  fine.dt = coarse.dt / 2;
  const auto pa = build_mobility_model(coarse);
  const auto pb = build_mobility_model(fine);
  const auto da = lab::estimate(pa, 20, 120, lab::Statistic::avg_degree(), 317);
  const auto db = lab::estimate(pb, 20, 120, lab::Statistic::avg_degree(), 317);
  CHECK(std::abs(da.mean - db.mean) < 0.5);
}

TEST_CASE("range calibration hits the degree target") {
  auto cfg = base_config();
  const int n = 60;
  const double r = calibrate_r_link(cfg, n, 2.0, 331);
  cfg.r_link = r;
  const auto deg = lab::estimate(build_mobility_model(cfg), n, 80,
                                 lab::Statistic::avg_degree(), 331);
  CHECK(deg.mean == doctest::Approx(2.0).epsilon(0.35));
}

TEST_CASE("trace dump format") {
  auto cfg = base_config();
  std::ostringstream out;
  dump_position_traces(cfg, 2, 1, 337, out);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "trial,node,t,x,y");
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 2 * cfg.step_count());
}

TEST_SUITE_END();
