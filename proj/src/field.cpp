#include "hyperns/field.hpp"

#include <algorithm>
#include <cmath>

namespace hyperns {

std::size_t Grid::interior_count() const {
  std::size_t c = 1;
  for (int a = 0; a < dim; ++a) c *= std::size_t(cells[a]);
  return c;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= dx(a);
  return v;
}

long Grid::index(int i, int j, int k) const {
  const int g = ghost;
  long idx = i + g;
  if (dim > 1) idx += (j + g) * stride(1);
  if (dim > 2) idx += (k + g) * stride(2);
  return idx;
}

void Grid::validate() const {
  std::vector<std::string> issues;
  if (dim < 1 || dim > 3) issues.push_back("grid.cells: dimension must be 1, 2 or 3");
  for (int a = 0; a < std::min(std::max(dim, 0), 3); ++a) {
    const std::string ax = std::to_string(a);
    if (cells[a] < 8) issues.push_back("grid.cells[" + ax + "]: at least 8 cells per axis");
    if (!(upper[a] > lower[a])) issues.push_back("grid.upper[" + ax + "]: must exceed lower");
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
}

SpaceVector<double> cell_position(const Grid& g, int i, int j, int k) {
  SpaceVector<double> x(g.dim);
  const int idx[3] = {i, j, k};
  for (int a = 0; a < g.dim; ++a) x(a) = g.center(a, idx[a]);
  return x;
}

Field::Field(const Grid& grid, const ModelParams& p, const PrimitiveState<double>& state) : grid_(grid) {
  grid_.validate();
  const auto c = primitive_to_conserved(state, p);
  far_field_.resize(nvar());
  const FieldLayout l = layout();
  far_field_(l.rho()) = c.rho;
  far_field_(l.energy()) = c.etot;
  far_field_(l.s2()) = c.s2;
  for (int d = 0; d < grid_.dim; ++d) {
    far_field_(l.mom(d)) = c.mom(d);
    far_field_(l.q(d)) = c.q(d);
  }
  data_ = far_field_.replicate(1, static_cast<Eigen::Index>(grid_.padded_count())).array();
}

Field::Field(const Grid& grid, const ModelParams& p)
    : Field(grid, p, PrimitiveState<double>::equilibrium(grid.dim)) {}

ConservedState<double> Field::conserved(long cell) const {
  const FieldLayout l = layout();
  const int n = grid_.dim;
  ConservedState<double> c{data_(l.rho(), cell), SpaceVector<double>(n), data_(l.energy(), cell),
                           SpaceVector<double>(n), data_(l.s2(), cell)};
  for (int d = 0; d < n; ++d) {
    c.mom(d) = data_(l.mom(d), cell);
    c.q(d) = data_(l.q(d), cell);
  }
  return c;
}

void Field::set(long cell, const ConservedState<double>& c) {
  const FieldLayout l = layout();
  data_(l.rho(), cell) = c.rho;
  data_(l.energy(), cell) = c.etot;
  data_(l.s2(), cell) = c.s2;
  for (int d = 0; d < grid_.dim; ++d) {
    data_(l.mom(d), cell) = c.mom(d);
    data_(l.q(d), cell) = c.q(d);
  }
}

PrimitiveState<double> Field::primitive(long cell, const ModelParams& p) const {
  return conserved_to_primitive(conserved(cell), p);
}

void Field::set_primitive(long cell, const PrimitiveState<double>& s, const ModelParams& p) {
  set(cell, primitive_to_conserved(s, p));
}

void fill_ghosts(Field& f) {
  const Grid& g = f.grid();
  auto& u = f.data();
  const int G = Grid::ghost;
  for (int a = 0; a < g.dim; ++a) {
    const int n = g.cells[a];
    const long s = g.stride(a);
    // Iterate over all padded positions of the other axes so corners get filled too.
    const int n1 = g.padded((a + 1) % 3), n2 = g.padded((a + 2) % 3);
    const long s1 = g.stride((a + 1) % 3), s2 = g.stride((a + 2) % 3);
    for (int p2 = 0; p2 < n2; ++p2) {
      for (int p1 = 0; p1 < n1; ++p1) {
        const long base = p1 * s1 + p2 * s2;
        for (int gi = 0; gi < G; ++gi) {
          const long lo = base + gi * s;
          const long hi = base + (n + G + gi) * s;
          if (g.boundary[a] == Boundary::periodic) {
            u.col(lo) = u.col(base + (n + gi) * s);
            u.col(hi) = u.col(base + (G + gi) * s);
          } else {
            u.col(lo) = f.far_field();
            u.col(hi) = f.far_field();
          }
        }
      }
    }
  }
}

}  // namespace hyperns
