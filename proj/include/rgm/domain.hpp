#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

namespace rgm {

/// Fixed-length real coordinates (positions on a sphere, the unit square, or
/// a scalar latent carried by every node).
struct RealVector {
  std::vector<double> v;
};

/// Finite list of 0/1 matrices, one per graph size m = 1..n_max. The
/// representation encoders store (m+1) x m matrices (index row appended) or
/// m x m matrices, flagged by extra_row.
struct MatrixSequence {
  // mats[m-1] is row-major with rows_for(m) rows and m columns.
  std::vector<std::vector<std::uint8_t>> mats;
  bool extra_row = false;

  int n_max() const { return static_cast<int>(mats.size()); }
  int rows_for(int m) const { return extra_row ? m + 1 : m; }

  std::uint8_t at(int m, int row, int col) const {
    return mats[static_cast<std::size_t>(m - 1)]
               [static_cast<std::size_t>(row) * static_cast<std::size_t>(m) +
                static_cast<std::size_t>(col)];
  }
  std::uint8_t& at(int m, int row, int col) {
    return mats[static_cast<std::size_t>(m - 1)]
               [static_cast<std::size_t>(row) * static_cast<std::size_t>(m) +
                static_cast<std::size_t>(col)];
  }
};

/// Full mobility state of a node: initial position in the unit square plus the
/// real parameter identifying its trajectory. The sampled track (positions at
/// the simulation time steps) is cached here, immutable within a trial.
struct PhasePoint {
  double x0 = 0.0;
  double y0 = 0.0;
  double traj_param = 0.0;
  std::vector<std::array<double, 2>> track;
};

/// A point of the model domain S. Monostate marks a placeholder for families
/// whose nodes carry no information (purely edge-randomized).
using DomainPoint = std::variant<std::monostate, RealVector, MatrixSequence, PhasePoint>;

/// Realization of the node variables X_1..X_n.
struct NodeSample {
  int n = 0;
  std::vector<DomainPoint> points;

  // Set by the exchangeability wrapper: the base realization and the random
  // permutation sigma with points[i] = base->points[perm[i]].
  std::shared_ptr<const NodeSample> base;
  std::vector<int> perm;
};

}  // namespace rgm
