#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "hyperns/thermo.hpp"

namespace hyperns {

enum class Boundary { periodic, constant_state };

/// Uniform Cartesian mesh with a two-cell ghost layer on every active axis.
struct Grid {
  static constexpr int ghost = 2;

  int dim = 1;
  std::array<int, 3> cells{64, 1, 1};
  std::array<double, 3> lower{0.0, 0.0, 0.0};
  std::array<double, 3> upper{1.0, 1.0, 1.0};
  std::array<Boundary, 3> boundary{Boundary::periodic, Boundary::periodic, Boundary::periodic};

  double dx(int a) const { return (upper[a] - lower[a]) / cells[a]; }
  int padded(int a) const { return a < dim ? cells[a] + 2 * ghost : 1; }
  long stride(int a) const { return a == 0 ? 1 : a == 1 ? padded(0) : long(padded(0)) * padded(1); }
  std::size_t padded_count() const { return std::size_t(padded(0)) * padded(1) * padded(2); }
  std::size_t interior_count() const;
  double cell_volume() const;
  /// Cell-centre coordinate along axis a for interior index i (ghost indices extrapolate).
  double center(int a, int i) const { return lower[a] + (i + 0.5) * dx(a); }
  /// Linear storage index of interior cell (i, j, k); negative or >= cells addresses ghosts.
  long index(int i, int j = 0, int k = 0) const;
  /// Throws ConfigError listing every problem.
  void validate() const;
};

/// Column offsets of the conserved unknowns: rho, m (n), E, q (n), S2.
struct FieldLayout {
  int n;
  int size() const { return 2 * n + 3; }
  int rho() const { return 0; }
  int mom(int d) const { return 1 + d; }
  int energy() const { return n + 1; }
  int q(int d) const { return n + 2 + d; }
  int s2() const { return 2 * n + 2; }
};

/// Conserved cell averages, one column per (padded) cell.
class Field {
 public:
  Field() = default;
  /// Uniform field at `state`; the same state feeds constant-state ghost cells.
  Field(const Grid& grid, const ModelParams& p, const PrimitiveState<double>& state);
  /// Uniform equilibrium (1, 0, 1, 0, 0).
  Field(const Grid& grid, const ModelParams& p);

  const Grid& grid() const { return grid_; }
  FieldLayout layout() const { return {grid_.dim}; }
  int nvar() const { return 2 * grid_.dim + 3; }

  Eigen::ArrayXXd& data() { return data_; }
  const Eigen::ArrayXXd& data() const { return data_; }
  const Eigen::VectorXd& far_field() const { return far_field_; }
  void set_far_field(const Eigen::VectorXd& v) { far_field_ = v; }

  ConservedState<double> conserved(long cell) const;
  void set(long cell, const ConservedState<double>& c);
  PrimitiveState<double> primitive(long cell, const ModelParams& p) const;
  void set_primitive(long cell, const PrimitiveState<double>& s, const ModelParams& p);

  double t = 0.0;
  long step = 0;

 private:
  Grid grid_;
  Eigen::ArrayXXd data_;
  Eigen::VectorXd far_field_;
};

/// Periodic wrap or frozen far-field state in the ghost layers.
void fill_ghosts(Field& f);

/// Visits interior cells in storage order: fn(linear_index, i, j, k).
template <typename Fn>
void for_each_interior(const Grid& g, Fn&& fn) {
  const int nk = g.dim > 2 ? g.cells[2] : 1;
  const int nj = g.dim > 1 ? g.cells[1] : 1;
  for (int k = 0; k < nk; ++k)
    for (int j = 0; j < nj; ++j)
      for (int i = 0; i < g.cells[0]; ++i) fn(g.index(i, j, k), i, j, k);
}

/// Physical position of an interior cell centre.
SpaceVector<double> cell_position(const Grid& g, int i, int j, int k);

}  // namespace hyperns
