#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rgm/model.hpp"

namespace rgm::mobility {

using Position = std::array<double, 2>;

/// Full scenario description: clustered placement, trajectory family, radio
/// distance and time-windowed link rule.
struct MobilityConfig {
  int k = 3;            // pivot count
  double d0 = 0.25;     // acceptance radius around pivots
  double v0 = 0.1;      // constant speed
  double T = 1.0;       // time horizon
  double t_link = 0.2;  // required contact duration
  double r_link = 0.1;  // radio range
  double dt = 0.05;     // sampling step

  enum class DomainMode { Torus, ClippedSquare };
  DomainMode domain_mode = DomainMode::Torus;

  enum class TrajectoryFamily { StraightHeading, Arc };
  TrajectoryFamily trajectory_family = TrajectoryFamily::StraightHeading;

  /// Location-dependent circular law for the trajectory parameter: mean
  /// direction mean_bias + position_coupling * (angle to the square's
  /// center), plus wrapped-normal spread. For the arc family the parameter
  /// is a signed curvature with scale curvature_scale.
  struct HeadingLaw {
    double mean_bias = 0.0;
    double position_coupling = 0.0;
    double spread = 3.141592653589793;
    double curvature_scale = 1.0;
  };
  HeadingLaw heading_law;

  /// Log-normal multiplicative fading on the radio distance.
  struct Fading {
    double sigma = 0.0;
  };
  std::optional<Fading> fading;

  /// Base measure P: uniform on the unit square, or a Gaussian mixture
  /// truncated to it.
  struct GaussianComponent {
    double x = 0.5;
    double y = 0.5;
    double sigma = 0.1;
    double weight = 1.0;
  };
  std::vector<GaussianComponent> base_measure;  // empty = uniform

  void validate() const;
  int step_count() const;              // samples at t = 0, dt, ..., <= T
  int required_run() const;            // ceil(t_link/dt) + 1 consecutive samples
};

/// Pivot-clustered placement: k pivots from P, then candidates from P kept
/// only within d0 of some pivot, until n are accepted. Deterministic given
/// key; aborts with a configuration error when the acceptance probability is
/// negligible.
std::vector<Position> sample_initial_positions(const MobilityConfig& cfg, int n,
                                               const RngKey& key);

/// Position at time t of the trajectory identified by p, at constant speed v0.
Position position_at(const PhasePoint& p, const MobilityConfig& cfg, double t);

/// Radio distance: domain metric times exp(sigma * fading_draw) when fading is
/// enabled; exactly 0 for coincident points regardless of fading.
double radio_distance(const Position& a, const Position& b,
                      std::optional<double> fading_draw, const MobilityConfig& cfg);

/// Link rule: 1 iff some run of required_run() consecutive sample times has
/// radio_distance <= r_link. Reads only the two phase points and the
/// independent randomization xi (which seeds the fading draws).
bool link_indicator(const PhasePoint& a, const PhasePoint& b,
                    const MobilityConfig& cfg, double xi);

/// The scenario as a random graph model: phase-point node variables, link
/// indicator edges; local and name invariant by construction.
ModelSpec build_mobility_model(const MobilityConfig& cfg);

/// Bisects r_link until the empirical expected average degree at size n is
/// near target_dbar, using pilot trials with subsampled pairs.
double calibrate_r_link(const MobilityConfig& cfg, int n, double target_dbar,
                        std::uint64_t master_seed, int pilot_trials = 8,
                        int pair_subsample = 4000);

/// Per-trial position traces as CSV (columns: trial, node, t, x, y).
void dump_position_traces(const MobilityConfig& cfg, int n, long trials,
                          std::uint64_t master_seed, std::ostream& out);

}  // namespace rgm::mobility
