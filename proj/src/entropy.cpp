#include "hyperns/entropy.hpp"

#include <cmath>

namespace hyperns {

namespace {

// Centred velocity gradient at an interior cell; ghosts must be current.
SpaceMatrix<double> centred_velocity_gradient(const Field& f, long cell) {
  const Grid& g = f.grid();
  const FieldLayout l = f.layout();
  const auto& u = f.data();
  const int n = g.dim;
  SpaceMatrix<double> gu(n, n);
  for (int a = 0; a < n; ++a) {
    const long s = g.stride(a);
    for (int i = 0; i < n; ++i) {
      const double up = u(l.mom(i), cell + s) / u(l.rho(), cell + s);
      const double um = u(l.mom(i), cell - s) / u(l.rho(), cell - s);
      gu(i, a) = (up - um) / (2.0 * g.dx(a));
    }
  }
  return gu;
}

}  // namespace

double eta1_integral(const Field& f, const ModelParams& p) {
  double sum = 0.0;
  for_each_interior(f.grid(), [&](long c, int, int, int) { sum += dissipative_entropy(f.primitive(c, p), p).eta1; });
  return sum * f.grid().cell_volume();
}

double production_integral(const Field& f, const ModelParams& p) {
  const int n = f.grid().dim;
  Field filled;
  if (p.mu > 0) {
    filled = f;
    fill_ghosts(filled);
  }
  double sum = 0.0;
  for_each_interior(f.grid(), [&](long c, int, int, int) {
    const auto s = f.primitive(c, p);
    const SpaceMatrix<double> gu = p.mu > 0 ? centred_velocity_gradient(filled, c) : SpaceMatrix<double>::Zero(n, n);
    sum += entropy_production(s, gu, p);
  });
  return sum * f.grid().cell_volume();
}

void EntropyAudit::start(const Field& f) {
  rows_.clear();
  cum_ = 0.0;
  const double e = eta1_integral(f, p_);
  rows_.push_back({f.t, e, 0.0, 0.0});
}

void EntropyAudit::advance(const Field& before, double dt, const Field& after) {
  advance_with(production_integral(before, p_), dt, after);
}

void EntropyAudit::advance_with(double production, double dt, const Field& after) {
  cum_ += dt * production;
  const double e = eta1_integral(after, p_);
  rows_.push_back({after.t, e, cum_, e - initial_integral() + cum_});
}

double EntropyAudit::max_relative_residual() const {
  double m = 0.0;
  for (const auto& r : rows_) m = std::max(m, std::abs(r.residual));
  const double e0 = std::abs(initial_integral());
  return e0 > 0 ? m / e0 : m;
}

std::vector<AuditRow> discrete_entropy_audit(const std::vector<Field>& snapshots, const ModelParams& p) {
  EntropyAudit audit(p);
  if (snapshots.empty()) return {};
  audit.start(snapshots.front());
  for (std::size_t k = 1; k < snapshots.size(); ++k)
    audit.advance(snapshots[k - 1], snapshots[k].t - snapshots[k - 1].t, snapshots[k]);
  return audit.rows();
}

}  // namespace hyperns
