#include "rgm/mobility.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace rgm::mobility {

namespace {

constexpr std::uint64_t kPivotStream = 0xffffffff00000003ULL;
constexpr std::uint64_t kFadingStream = 0xffffffff00000004ULL;

double wrap01(double x) {
  x = std::fmod(x, 1.0);
  return x < 0.0 ? x + 1.0 : x;
}

double reflect01(double x) {
  x = std::fmod(x, 2.0);
  if (x < 0.0) x += 2.0;
  return x > 1.0 ? 2.0 - x : x;
}

double axis_dist(double a, double b, bool torus) {
  double d = std::abs(a - b);
  if (torus) d = std::min(d, 1.0 - d);
  return d;
}

Position sample_base_measure(const MobilityConfig& cfg, CounterStream& stream) {
  if (cfg.base_measure.empty()) {
    return {stream.next_uniform(), stream.next_uniform()};
  }
  double total = 0.0;
  for (const auto& c : cfg.base_measure) total += c.weight;
  for (;;) {
    const double u = stream.next_uniform() * total;
    double cum = 0.0;
    const MobilityConfig::GaussianComponent* chosen = &cfg.base_measure.back();
    for (const auto& c : cfg.base_measure) {
      cum += c.weight;
      if (u < cum) {
        chosen = &c;
        break;
      }
    }
    const double x = chosen->x + chosen->sigma * stream.next_normal();
    const double y = chosen->y + chosen->sigma * stream.next_normal();
    if (x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0) return {x, y};
  }
}

double position_dist(const Position& a, const Position& b, const MobilityConfig& cfg) {
  const bool torus = cfg.domain_mode == MobilityConfig::DomainMode::Torus;
  const double dx = axis_dist(a[0], b[0], torus);
  const double dy = axis_dist(a[1], b[1], torus);
  return std::sqrt(dx * dx + dy * dy);
}

double mean_direction(const MobilityConfig::HeadingLaw& law, double x, double y) {
  return law.mean_bias + law.position_coupling * std::atan2(y - 0.5, x - 0.5);
}

class MobilityModel final : public LocalModelImpl {
 public:
  explicit MobilityModel(MobilityConfig cfg) : cfg_(std::move(cfg)) {}

  std::string family() const override { return "mobility"; }
  ModelFlags flags() const override { return {true, true, false}; }

  NodeSample sample_nodes(int n, const RngKey& key) const override {
    const RngKey k = key.with_tag(StreamTag::NodeSampling);
    const auto positions = sample_initial_positions(cfg_, n, k);
    const int steps = cfg_.step_count();

    NodeSample s;
    s.n = n;
    s.points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      // Continues the node's rejection-sampling stream at a disjoint offset.
      CounterStream traj(k, static_cast<std::uint64_t>(i), 1);
      PhasePoint p;
      p.x0 = positions[static_cast<std::size_t>(i)][0];
      p.y0 = positions[static_cast<std::size_t>(i)][1];
      const double mu = mean_direction(cfg_.heading_law, p.x0, p.y0);
      if (cfg_.trajectory_family == MobilityConfig::TrajectoryFamily::StraightHeading) {
        p.traj_param = mu + cfg_.heading_law.spread * traj.next_normal();
      } else {
        p.traj_param = cfg_.heading_law.curvature_scale * traj.next_normal();
      }
      // Immutable per-trial track cache at the sampling times.
      p.track.reserve(static_cast<std::size_t>(steps));
      for (int step = 0; step < steps; ++step) {
        p.track.push_back(position_at(p, cfg_, static_cast<double>(step) * cfg_.dt));
      }
      s.points.push_back(std::move(p));
    }
    return s;
  }

  bool local_edge(const DomainPoint& a, const DomainPoint& b, int, double xi) const override {
    return link_indicator(std::get<PhasePoint>(a), std::get<PhasePoint>(b), cfg_, xi);
  }

  const MobilityConfig& config() const { return cfg_; }

 private:
  MobilityConfig cfg_;
};

}  // namespace

void MobilityConfig::validate() const {
  if (k < 1) throw std::invalid_argument("MobilityConfig: k must be >= 1");
  if (!(d0 > 0.0)) throw std::invalid_argument("MobilityConfig: d0 must be positive");
  if (v0 < 0.0) throw std::invalid_argument("MobilityConfig: v0 must be nonnegative");
  if (!(T > 0.0)) throw std::invalid_argument("MobilityConfig: T must be positive");
  if (!(t_link > 0.0)) throw std::invalid_argument("MobilityConfig: t_link must be positive");
  if (t_link > T) throw std::invalid_argument("MobilityConfig: t_link must not exceed T");
  if (r_link < 0.0) throw std::invalid_argument("MobilityConfig: r_link must be nonnegative");
  if (!(dt > 0.0)) throw std::invalid_argument("MobilityConfig: dt must be positive");
  if (dt > t_link)
    throw std::invalid_argument("MobilityConfig: dt must not exceed t_link");
  if (fading && fading->sigma < 0.0)
    throw std::invalid_argument("MobilityConfig: fading sigma must be nonnegative");
  for (const auto& c : base_measure) {
    if (!(c.sigma > 0.0) || !(c.weight > 0.0))
      throw std::invalid_argument("MobilityConfig: invalid base measure component");
  }
}

int MobilityConfig::step_count() const {
  return static_cast<int>(std::floor(T / dt + 1e-9)) + 1;
}

int MobilityConfig::required_run() const {
  return static_cast<int>(std::ceil(t_link / dt - 1e-9)) + 1;
}

std::vector<Position> sample_initial_positions(const MobilityConfig& cfg, int n,
                                               const RngKey& key) {
  cfg.validate();
  if (n < 1) throw std::invalid_argument("sample_initial_positions: n must be >= 1");

  CounterStream pivot_stream(key, kPivotStream);
  std::vector<Position> pivots;
  pivots.reserve(static_cast<std::size_t>(cfg.k));
  for (int p = 0; p < cfg.k; ++p) pivots.push_back(sample_base_measure(cfg, pivot_stream));

  std::vector<Position> out;
  out.reserve(static_cast<std::size_t>(n));
  long attempts = 0;
  long accepted = 0;
  for (int i = 0; i < n; ++i) {
    CounterStream node(key, static_cast<std::uint64_t>(i));
    for (;;) {
      ++attempts;
      if (attempts >= 100000 && accepted < attempts / 1000000 + 1) {
        throw std::invalid_argument(
            "sample_initial_positions: acceptance probability below 1e-6 "
            "(d0 too small for the base measure)");
      }
      const Position cand = sample_base_measure(cfg, node);
      bool near_pivot = false;
      for (const auto& pv : pivots) {
        if (position_dist(cand, pv, cfg) <= cfg.d0) {
          near_pivot = true;
          break;
        }
      }
      if (near_pivot) {
        ++accepted;
        out.push_back(cand);
        break;
      }
    }
  }
  return out;
}

Position position_at(const PhasePoint& p, const MobilityConfig& cfg, double t) {
  if (t < -1e-12 || t > cfg.T + 1e-9)
    throw std::invalid_argument("position_at: t outside [0, T]");

  double x, y;
  if (cfg.trajectory_family == MobilityConfig::TrajectoryFamily::StraightHeading) {
    x = p.x0 + cfg.v0 * t * std::cos(p.traj_param);
    y = p.y0 + cfg.v0 * t * std::sin(p.traj_param);
  } else {
    const double kappa = p.traj_param;
    const double theta0 = mean_direction(cfg.heading_law, p.x0, p.y0);
    if (std::abs(kappa) < 1e-9) {
      x = p.x0 + cfg.v0 * t * std::cos(theta0);
      y = p.y0 + cfg.v0 * t * std::sin(theta0);
    } else {
      // Constant-speed motion along a circle of radius 1/kappa.
      const double cx = p.x0 - std::sin(theta0) / kappa;
      const double cy = p.y0 + std::cos(theta0) / kappa;
      const double phi = theta0 + cfg.v0 * kappa * t;
      x = cx + std::sin(phi) / kappa;
      y = cy - std::cos(phi) / kappa;
    }
  }
  if (cfg.domain_mode == MobilityConfig::DomainMode::Torus) {
    return {wrap01(x), wrap01(y)};
  }
  return {reflect01(x), reflect01(y)};
}

double radio_distance(const Position& a, const Position& b,
                      std::optional<double> fading_draw, const MobilityConfig& cfg) {
  const double base = position_dist(a, b, cfg);
  if (base == 0.0) return 0.0;
  if (cfg.fading && cfg.fading->sigma > 0.0 && fading_draw) {
    return base * std::exp(cfg.fading->sigma * *fading_draw);
  }
  return base;
}

bool link_indicator(const PhasePoint& a, const PhasePoint& b,
                    const MobilityConfig& cfg, double xi) {
  const int steps = cfg.step_count();
  const int needed = cfg.required_run();
  if (needed > steps) return false;

  const bool fading_on = cfg.fading && cfg.fading->sigma > 0.0;
  // The pair's independent uniform seeds the fading draws, keeping the edge a
  // function of (a, b, xi) only.
  CounterStream fading_stream(RngKey{std::bit_cast<std::uint64_t>(xi), 0,
                                     StreamTag::DistanceNoise},
                              kFadingStream);
  int run = 0;
  for (int step = 0; step < steps; ++step) {
    const Position pa = static_cast<std::size_t>(step) < a.track.size()
                            ? a.track[static_cast<std::size_t>(step)]
                            : position_at(a, cfg, static_cast<double>(step) * cfg.dt);
    const Position pb = static_cast<std::size_t>(step) < b.track.size()
                            ? b.track[static_cast<std::size_t>(step)]
                            : position_at(b, cfg, static_cast<double>(step) * cfg.dt);
    std::optional<double> draw;
    if (fading_on) draw = fading_stream.next_normal();
    if (radio_distance(pa, pb, draw, cfg) <= cfg.r_link) {
      if (++run >= needed) return true;
    } else {
      run = 0;
      if (steps - step - 1 < needed) return false;
    }
  }
  return false;
}

ModelSpec build_mobility_model(const MobilityConfig& cfg) {
  cfg.validate();
  return ModelSpec(std::make_shared<MobilityModel>(cfg));
}

double calibrate_r_link(const MobilityConfig& cfg, int n, double target_dbar,
                        std::uint64_t master_seed, int pilot_trials,
                        int pair_subsample) {
  cfg.validate();
  if (n < 2) throw std::invalid_argument("calibrate_r_link: n must be >= 2");
  if (target_dbar <= 0.0 || target_dbar > static_cast<double>(n - 1))
    throw std::invalid_argument("calibrate_r_link: target out of range");

  // Node samples are independent of r_link; draw the pilot set once.
  const ModelSpec pilot_model = build_mobility_model(cfg);
  std::vector<NodeSample> samples;
  samples.reserve(static_cast<std::size_t>(pilot_trials));
  for (int t = 0; t < pilot_trials; ++t) {
    samples.push_back(
        sample_nodes(pilot_model, n, {master_seed, static_cast<std::uint64_t>(t)}));
  }

  const auto dbar_at = [&](double r) {
    MobilityConfig trial_cfg = cfg;
    trial_cfg.r_link = r;
    long links = 0;
    long evaluated = 0;
    for (int t = 0; t < pilot_trials; ++t) {
      const RngKey edge_key{master_seed, static_cast<std::uint64_t>(t),
                            StreamTag::EdgeRandomization};
      CounterStream pair_stream(
          RngKey{master_seed, static_cast<std::uint64_t>(t), StreamTag::DistanceNoise},
          0xffffffff00000005ULL);
      for (int s = 0; s < pair_subsample; ++s) {
        const int i = static_cast<int>(pair_stream.next_index(static_cast<std::uint64_t>(n)));
        int j = static_cast<int>(pair_stream.next_index(static_cast<std::uint64_t>(n - 1)));
        if (j >= i) ++j;
        const auto& pa =
            std::get<PhasePoint>(samples[static_cast<std::size_t>(t)].points[static_cast<std::size_t>(i)]);
        const auto& pb =
            std::get<PhasePoint>(samples[static_cast<std::size_t>(t)].points[static_cast<std::size_t>(j)]);
        const double xi = uniform01_pair(edge_key, std::min(i, j), std::max(i, j));
        if (link_indicator(pa, pb, trial_cfg, xi)) ++links;
        ++evaluated;
      }
    }
    return static_cast<double>(n - 1) * static_cast<double>(links) /
           static_cast<double>(evaluated);
  };

  double lo = 1e-4;
  double hi = std::numbers::sqrt2;
  for (int iter = 0; iter < 40; ++iter) {
    const double mid = std::sqrt(lo * hi);
    if (dbar_at(mid) < target_dbar)
      lo = mid;
    else
      hi = mid;
    if (hi / lo < 1.001) break;
  }
  return std::sqrt(lo * hi);
}

void dump_position_traces(const MobilityConfig& cfg, int n, long trials,
                          std::uint64_t master_seed, std::ostream& out) {
  const ModelSpec model = build_mobility_model(cfg);
  out << "trial,node,t,x,y\n";
  char line[160];
  for (long trial = 0; trial < trials; ++trial) {
    const NodeSample nodes =
        sample_nodes(model, n, {master_seed, static_cast<std::uint64_t>(trial)});
    for (int i = 0; i < n; ++i) {
      const auto& p = std::get<PhasePoint>(nodes.points[static_cast<std::size_t>(i)]);
      for (std::size_t step = 0; step < p.track.size(); ++step) {
        std::snprintf(line, sizeof(line), "%ld,%d,%.9g,%.9g,%.9g\n", trial, i,
                      static_cast<double>(step) * cfg.dt, p.track[step][0],
                      p.track[step][1]);
        out << line;
      }
    }
  }
}

}  // namespace rgm::mobility
