#include "hyperns/eigenstructure.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <chrono>
#include <limits>
#include <random>
#include <sstream>

namespace hyperns {

namespace {

struct Coupling {
  double h;        // theta row, q columns
  double relax_q;  // q rows, theta column
  double relax_s;  // S2 row, u columns (with a minus sign)
};

Coupling coupling_for(const PrimitiveState<double>& s, const ThermoPartials<double>& d, const ModelParams& p,
                      CouplingForm form) {
  switch (form) {
    case CouplingForm::printed:
      return {1.0, p.kappa / p.tau1, p.lambda / p.tau3};
    case CouplingForm::physical:
      return {1.0 / (s.rho * d.e_theta), p.kappa / p.tau1, p.lambda / p.tau3};
    case CouplingForm::transport:
      return {1.0 / (s.rho * d.e_theta), 0.0, 0.0};
  }
  return {1.0, 0.0, 0.0};
}

ThermoPartials<double> checked_partials(const PrimitiveState<double>& s, const ModelParams& p) {
  auto d = pressure_partials(s, p);
  if (!(d.e_theta > 0)) throw DomainError("e_theta must be positive for the first-order system");
  return d;
}

void check_dims(const PrimitiveState<double>& s, const Direction& xi) {
  if (s.u.size() != xi.dim() || s.q.size() != xi.dim())
    throw DomainError("state and direction dimensions differ");
}

// Orthonormal basis of the complement of xi in R^n, as columns.
Eigen::MatrixXd tangential_basis(const SpaceVector<double>& xi) {
  const int n = static_cast<int>(xi.size());
  Eigen::MatrixXd full(n, n);
  full.col(0) = xi;
  int col = 1;
  Eigen::VectorXd cand(n);
  for (int a = 0; a < n && col < n; ++a) {
    cand.setZero();
    cand(a) = 1.0;
    for (int k = 0; k < col; ++k) cand -= full.col(k).dot(cand) * full.col(k);
    if (cand.norm() > 0.3) full.col(col++) = cand.normalized();
  }
  return full.rightCols(n - 1);
}

int numerical_rank(const Eigen::MatrixXd& m) {
  if (m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-9 * sv(0)) ++r;
  return r;
}

Eigen::VectorXd null_vector(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().col(m.cols() - 1);
}

}  // namespace

double split_sound_speed_squared(const PrimitiveState<double>& s, const ThermoPartials<double>& d) {
  return d.p_rho + d.p_theta * (s.theta * d.p_theta - s.s2) / (s.rho * s.rho * d.e_theta);
}

Direction::Direction(const SpaceVector<double>& v) : xi_(v) {
  if (v.size() < 1 || v.size() > kMaxDim || std::abs(v.norm() - 1.0) > 1e-14)
    throw DomainError("direction must be a unit vector of length 1..3");
}

Direction Direction::normalized(const SpaceVector<double>& v) {
  const double nv = v.norm();
  if (!(nv > 0)) throw DomainError("cannot normalise a zero direction");
  return Direction(v / nv, Unchecked{});
}

Direction Direction::axis(int n, int a) {
  SpaceVector<double> v = SpaceVector<double>::Zero(n);
  v(a) = 1.0;
  return Direction(v);
}

SystemMatrix<double> assemble_flux_jacobian(const PrimitiveState<double>& s, const Direction& dir,
                                            const ModelParams& p, CouplingForm form) {
  check_dims(s, dir);
  const auto d = checked_partials(s, p);
  const auto c = coupling_for(s, d, p, form);
  const SpaceVector<double>& xi = dir.xi();
  const int n = dir.dim();
  const SystemLayout ix{n};
  const double un = s.u.dot(xi);

  SystemMatrix<double> a = SystemMatrix<double>::Zero(ix.size(), ix.size());
  a(ix.rho(), ix.rho()) = un;
  for (int i = 0; i < n; ++i) {
    a(ix.rho(), ix.u(i)) = s.rho * xi(i);
    a(ix.u(i), ix.rho()) = d.p_rho / s.rho * xi(i);
    a(ix.u(i), ix.u(i)) = un;
    a(ix.u(i), ix.theta()) = d.p_theta / s.rho * xi(i);
    for (int j = 0; j < n; ++j) a(ix.u(i), ix.q(j)) = xi(i) * d.p_q(j) / s.rho;
    a(ix.u(i), ix.s2()) = (d.p_s2 - 1.0) / s.rho * xi(i);

    a(ix.theta(), ix.u(i)) = s.theta * d.p_theta / (s.rho * d.e_theta) * xi(i);
    a(ix.theta(), ix.q(i)) = c.h * xi(i);

    a(ix.q(i), ix.theta()) = c.relax_q * xi(i);
    a(ix.q(i), ix.q(i)) = un;

    a(ix.s2(), ix.u(i)) = -c.relax_s * xi(i);
  }
  a(ix.theta(), ix.theta()) = (s.u - 2.0 * s.q / (s.rho * s.theta * d.e_theta)).dot(xi);
  a(ix.s2(), ix.s2()) = un;
  if (form == CouplingForm::transport) {
    // q and S2 are only advected in the split stage, so the relaxation-induced terms drop out
    // of the theta row and S2 div u stays in the work term.
    a(ix.theta(), ix.theta()) = un;
    for (int i = 0; i < n; ++i)
      a(ix.theta(), ix.u(i)) = (s.theta * d.p_theta - s.s2) / (s.rho * d.e_theta) * xi(i);
  }
  return a;
}

QuarticCoefficients quartic_g(const PrimitiveState<double>& s, const Direction& dir, const ModelParams& p,
                              CouplingForm form) {
  check_dims(s, dir);
  const auto d = checked_partials(s, p);
  const auto c = coupling_for(s, d, p, form);
  const SpaceVector<double>& xi = dir.xi();
  const double rho2e = s.rho * s.rho * d.e_theta;
  if (form == CouplingForm::transport) return {0.0, -split_sound_speed_squared(s, d), 0.0, 0.0};
  const double k = c.relax_q * c.h;
  const double acoustic = c.relax_s * (1.0 - d.p_s2) / s.rho + d.p_rho;
  const double thermal = s.theta * d.p_theta * d.p_theta / rho2e;
  const double b = 2.0 * s.q.dot(xi) / (s.rho * s.theta * d.e_theta);
  const double pq = c.relax_q * s.theta * d.p_theta * d.p_q.dot(xi) / rho2e;
  return {-b, -(k + thermal + acoustic), pq + acoustic * b, acoustic * k};
}

Eigen::MatrixXd eigenvector_basis(const PrimitiveState<double>& s, const Direction& dir, const ModelParams& p,
                                  CouplingForm form) {
  const int n = dir.dim();
  const SystemLayout ix{n};
  const auto a = assemble_flux_jacobian(s, dir, p, form);
  const auto d = checked_partials(s, p);
  const double un = s.u.dot(dir.xi());
  const Eigen::MatrixXd shifted = Eigen::MatrixXd(a) - un * Eigen::MatrixXd::Identity(ix.size(), ix.size());

  std::vector<Eigen::VectorXd> cols;
  if (form == CouplingForm::transport) {
    // Without the theta-q relaxation coupling theta is no longer pinned; use the numerical kernel.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) <= 1e-10 * std::max(1.0, sv(0))) cols.push_back(svd.matrixV().col(i));
  } else {
    // Kernel of A - (u.xi) I: theta = 0, xi.u = 0, xi.q = 0 and
    // p_rho w_rho + p_q.w_q + (p_S2 - 1) w_S2 = 0.
    const Eigen::MatrixXd t = tangential_basis(dir.xi());
    for (int k = 0; k < t.cols(); ++k) {
      Eigen::VectorXd w = Eigen::VectorXd::Zero(ix.size());
      for (int i = 0; i < n; ++i) w(ix.u(i)) = t(i, k);
      cols.push_back(w);
    }
    for (int k = 0; k < t.cols(); ++k) {
      Eigen::VectorXd w = Eigen::VectorXd::Zero(ix.size());
      for (int i = 0; i < n; ++i) w(ix.q(i)) = t(i, k);
      // The p_q.w_q pressure contribution is balanced through S2.
      w(ix.s2()) = d.p_q.dot(t.col(k)) / (1.0 - d.p_s2);
      cols.push_back(w);
    }
    Eigen::VectorXd w = Eigen::VectorXd::Zero(ix.size());
    w(ix.rho()) = 1.0 - d.p_s2;
    w(ix.s2()) = d.p_rho;
    cols.push_back(w);
  }

  const auto roots = solve_quartic(quartic_g(s, dir, p, form));
  for (const auto& z : roots) {
    if (z.imag() != 0.0) continue;
    const Eigen::MatrixXd m = shifted + z.real() * Eigen::MatrixXd::Identity(ix.size(), ix.size());
    cols.push_back(null_vector(m));
  }

  Eigen::MatrixXd out(ix.size(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = cols[k].normalized();
  return out;
}

int eigenvector_completeness(const PrimitiveState<double>& s, const Direction& xi, const ModelParams& p,
                             CouplingForm form) {
  return numerical_rank(eigenvector_basis(s, xi, p, form));
}

double pointwise_max_speed(const PrimitiveState<double>& s, const Direction& xi, const ModelParams& p,
                           CouplingForm form) {
  const double un = s.u.dot(xi.xi());
  double m = std::abs(un);
  for (const auto& z : solve_quartic(quartic_g(s, xi, p, form))) m = std::max(m, std::abs(un - z.real()));
  return m;
}

EigenReport analyse(const PrimitiveState<double>& s, const Direction& dir, const ModelParams& p,
                    CouplingForm form) {
  EigenReport r;
  const int n = dir.dim();
  const SystemLayout ix{n};
  r.system_size = ix.size();
  const double un = s.u.dot(dir.xi());
  const auto g = quartic_g(s, dir, p, form);
  r.quartic_roots = solve_quartic(g);

  double zmax = 0.0;
  bool real = true;
  for (const auto& z : r.quartic_roots) {
    real = real && z.imag() == 0.0;
    zmax = std::max(zmax, std::abs(z));
  }
  double min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < 4; ++i) min_gap = std::min(min_gap, r.quartic_roots[i + 1].real() - r.quartic_roots[i].real());
  r.roots_real_distinct = real && min_gap > 1e-8 * zmax;
  r.roots_straddle_zero = real && r.quartic_roots[1].real() < 0.0 && r.quartic_roots[2].real() > 0.0;

  const auto a = assemble_flux_jacobian(s, dir, p, form);
  Eigen::EigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(a), false);
  for (int i = 0; i < ix.size(); ++i) {
    r.eigenvalues.push_back(es.eigenvalues()(i).real());
    r.max_imag_part = std::max(r.max_imag_part, std::abs(es.eigenvalues()(i).imag()));
  }
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end());

  r.predicted_eigenvalues.assign(2 * n - 1, un);
  for (const auto& z : r.quartic_roots) r.predicted_eigenvalues.push_back(un - z.real());
  std::sort(r.predicted_eigenvalues.begin(), r.predicted_eigenvalues.end());
  // Sorted pairing is the optimal real matching, so no assignment solver is needed.
  for (int i = 0; i < ix.size(); ++i)
    r.eigenvalue_mismatch = std::max(r.eigenvalue_mismatch, std::abs(r.eigenvalues[i] - r.predicted_eigenvalues[i]));
  r.eigenvalue_mismatch = std::max(r.eigenvalue_mismatch, r.max_imag_part);

  r.eigenvector_count = eigenvector_completeness(s, dir, p, form);
  r.max_speed = std::abs(un);
  for (const auto& z : r.quartic_roots) r.max_speed = std::max(r.max_speed, std::abs(un - z.real()));

  const auto d = checked_partials(s, p);
  const auto c = coupling_for(s, d, p, form);
  const double mu = std::sqrt(c.relax_s * (1.0 - d.p_s2) / s.rho + d.p_rho);
  r.g_at_zero = g.c0;
  r.g_at_mu_pm = {g(mu), g(-mu)};
  r.hyperbolic = r.roots_real_distinct && r.roots_straddle_zero && r.eigenvector_count == ix.size();
  return r;
}

double characteristic_factorization_check(const PrimitiveState<double>& s, const Direction& dir,
                                          const ModelParams& p, int num_samples, std::uint64_t seed,
                                          CouplingForm form) {
  const int n = dir.dim();
  const SystemLayout ix{n};
  const Eigen::MatrixXd a = assemble_flux_jacobian(s, dir, p, form);
  const auto g = quartic_g(s, dir, p, form);
  const double un = s.u.dot(dir.xi());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  double worst = 0.0;
  for (int k = 0; k < num_samples; ++k) {
    const double lam = dist(rng);
    const double det = (a - lam * Eigen::MatrixXd::Identity(ix.size(), ix.size())).partialPivLu().determinant();
    const double z = un - lam;
    const double rhs = std::pow(z, 2 * n - 1) * g(z);
    const double scale = std::pow(std::max(1.0, std::abs(z)), 2 * n - 1) * std::max(1.0, g.magnitude(std::abs(z)));
    worst = std::max(worst, std::abs(det - rhs) / scale);
  }
  return worst;
}

PrimitiveState<double> sample_admissible_state(const ModelParams& p, int n, std::mt19937_64& rng, double interior) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto ball = [&](double radius) {
    SpaceVector<double> v(n);
    for (int i = 0; i < n; ++i) v(i) = normal(rng);
    const double norm = v.norm();
    if (norm > 0) v *= radius * std::pow(unit(rng), 1.0 / n) / norm;
    return v;
  };
  const AdmissibleBox& b = p.box;
  PrimitiveState<double> s;
  s.rho = b.rho_min + (b.rho_max - b.rho_min) * unit(rng);
  s.theta = b.theta_min + (b.theta_max - b.theta_min) * unit(rng);
  s.u = ball(b.u_max);
  s.q = ball(interior * b.delta);
  s.s2 = interior * b.delta * (2.0 * unit(rng) - 1.0);
  return s;
}

Direction sample_direction(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SpaceVector<double> v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = normal(rng);
  } while (v.norm() < 1e-8);
  return Direction::normalized(v);
}

HypercheckSummary hypercheck(const ModelParams& p, int n, int samples, std::uint64_t seed, int factorization_lambdas,
                             CouplingForm form) {
  const auto start = std::chrono::steady_clock::now();
  ModelParams q = p;
  q.dim = n;
  HypercheckSummary h;
  h.dim = n;
  h.samples = samples;
  h.min_root_gap = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  for (int k = 0; k < samples; ++k) {
    const auto s = sample_admissible_state(q, n, rng);
    const auto xi = sample_direction(n, rng);
    const auto r = analyse(s, xi, q, form);
    h.hyperbolic += r.hyperbolic;
    h.complete_bases += r.eigenvector_count == r.system_size;
    h.max_eigenvalue_mismatch = std::max(h.max_eigenvalue_mismatch, r.eigenvalue_mismatch);
    h.max_imag_part = std::max(h.max_imag_part, r.max_imag_part);
    for (std::size_t i = 1; i < r.quartic_roots.size(); ++i)
      h.min_root_gap = std::min(h.min_root_gap, r.quartic_roots[i].real() - r.quartic_roots[i - 1].real());
    if (factorization_lambdas > 0)
      h.max_factorization_defect =
          std::max(h.max_factorization_defect,
                   characteristic_factorization_check(s, xi, q, factorization_lambdas, seed + 7919u * k, form));
    if (!r.hyperbolic && h.failures.size() < 5) {
      std::ostringstream os;
      os << "rho=" << s.rho << " u=[" << s.u.transpose() << "] theta=" << s.theta << " q=[" << s.q.transpose()
         << "] S2=" << s.s2 << " xi=[" << xi.xi().transpose() << "] distinct=" << r.roots_real_distinct
         << " straddle=" << r.roots_straddle_zero << " vectors=" << r.eigenvector_count;
      h.failures.push_back(os.str());
    }
  }
  h.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return h;
}

CompensatorMatrices compensator_matrices(const ModelParams& p, const SpaceVector<double>& xi, double n_param,
                                         double eps) {
  const int n = static_cast<int>(xi.size());
  const SystemLayout ix{n};
  const int m = ix.size();
  const auto d = pressure_partials(PrimitiveState<double>::equilibrium(n), p);
  const double pr = d.p_rho, pt = d.p_theta, et = d.e_theta;

  CompensatorMatrices c;
  c.a0 = Eigen::MatrixXd::Zero(m, m);
  c.a_xi = Eigen::MatrixXd::Zero(m, m);
  c.b_xi = Eigen::MatrixXd::Zero(m, m);
  c.l = Eigen::MatrixXd::Zero(m, m);
  c.k_xi = Eigen::MatrixXd::Zero(m, m);

  c.a0(ix.rho(), ix.rho()) = pr;
  c.a0(ix.theta(), ix.theta()) = et;
  c.a0(ix.s2(), ix.s2()) = p.tau3 / p.lambda;
  c.l(ix.s2(), ix.s2()) = 1.0 / p.lambda;
  for (int i = 0; i < n; ++i) {
    c.a0(ix.u(i), ix.u(i)) = 1.0;
    c.a0(ix.q(i), ix.q(i)) = p.tau1 / p.kappa;
    c.l(ix.q(i), ix.q(i)) = 1.0 / p.kappa;

    c.a_xi(ix.rho(), ix.u(i)) = pr * xi(i);
    c.a_xi(ix.u(i), ix.rho()) = pr * xi(i);
    c.a_xi(ix.u(i), ix.theta()) = pt * xi(i);
    c.a_xi(ix.u(i), ix.s2()) = -xi(i);
    c.a_xi(ix.theta(), ix.u(i)) = pt * xi(i);
    c.a_xi(ix.theta(), ix.q(i)) = xi(i);
    c.a_xi(ix.q(i), ix.theta()) = xi(i);
    c.a_xi(ix.s2(), ix.u(i)) = -xi(i);

    for (int j = 0; j < n; ++j)
      c.b_xi(ix.u(i), ix.u(j)) = (i == j ? p.mu : 0.0) + (n - 2.0) / n * p.mu * xi(i) * xi(j);

    c.k_xi(ix.rho(), ix.u(i)) = eps * pr * xi(i);
    c.k_xi(ix.u(i), ix.rho()) = -eps * xi(i);
    c.k_xi(ix.theta(), ix.q(i)) = eps * p.kappa * n_param / p.tau1 * xi(i);
    c.k_xi(ix.q(i), ix.theta()) = -eps * n_param / et * xi(i);
    c.k_xi(ix.q(i), ix.s2()) = eps * p.lambda / p.tau3 * xi(i);
    c.k_xi(ix.s2(), ix.q(i)) = -eps * p.kappa / p.tau1 * xi(i);
  }
  const Eigen::MatrixXd ka = c.k_xi * c.a_xi;
  c.m = 0.5 * (ka + ka.transpose()) + c.b_xi + c.l;
  return c;
}

CompensatorReport kawashima_check(const ModelParams& p, std::optional<double> n_param, std::optional<double> eps,
                                  int num_directions, std::uint64_t seed) {
  const int n = p.dim;
  const auto d = pressure_partials(PrimitiveState<double>::equilibrium(n), p);
  CompensatorReport r;
  r.n_param = n_param.value_or(p.tau1 * d.p_theta * d.p_theta / (2.0 * p.kappa) + 1.0);

  std::vector<SpaceVector<double>> dirs;
  for (int a = 0; a < n; ++a) dirs.push_back(Direction::axis(n, a).xi());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  while (static_cast<int>(dirs.size()) < std::max(num_directions, n)) {
    SpaceVector<double> v(n);
    for (int i = 0; i < n; ++i) v(i) = normal(rng);
    if (v.norm() > 1e-3) dirs.push_back(Direction::normalized(v).xi());
  }

  // A minimum eigenvalue within round-off of zero does not certify definiteness.
  double noise = 0.0;
  auto evaluate = [&](double e, double& defect) {
    double min_eig = std::numeric_limits<double>::infinity();
    defect = 0.0;
    noise = 0.0;
    for (const auto& xi : dirs) {
      const auto c = compensator_matrices(p, xi, r.n_param, e);
      const Eigen::MatrixXd ka0 = c.k_xi * c.a0;
      defect = std::max(defect, (ka0 + ka0.transpose()).cwiseAbs().maxCoeff());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.m, Eigen::EigenvaluesOnly);
      min_eig = std::min(min_eig, es.eigenvalues()(0));
      noise = std::max(noise, 1e3 * std::numeric_limits<double>::epsilon() * es.eigenvalues().cwiseAbs().maxCoeff());
    }
    return min_eig;
  };

  if (eps) {
    r.epsilon = *eps;
    r.m_min_eigenvalue = evaluate(r.epsilon, r.antisymmetry_defect);
  } else {
    r.epsilon = 1.0;
    for (r.halvings = 0; r.halvings <= 60; ++r.halvings) {
      r.m_min_eigenvalue = evaluate(r.epsilon, r.antisymmetry_defect);
      if (r.m_min_eigenvalue > noise) break;
      r.epsilon *= 0.5;
    }
  }
  r.success = r.antisymmetry_defect < 1e-12 && r.m_min_eigenvalue > noise;
  return r;
}

}  // namespace hyperns
