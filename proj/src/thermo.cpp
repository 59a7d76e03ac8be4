#include "hyperns/thermo.hpp"

#include <sstream>

namespace hyperns {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::ostringstream os;
  os << "invalid configuration:";
  for (const auto& s : issues) os << "\n  " << s;
  return os.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

std::vector<std::string> validation_issues(const ModelParams& p) {
  std::vector<std::string> out;
  auto positive = [&](double v, const char* name) {
    if (!(v > 0)) out.push_back(std::string("model.") + name + ": must be > 0");
  };
  positive(p.tau1, "tau1");
  positive(p.tau3, "tau3");
  positive(p.kappa, "kappa");
  positive(p.lambda, "lambda");
  positive(p.cv, "cv");
  positive(p.r_gas, "r_gas");
  if (!(p.mu >= 0)) out.push_back("model.mu: must be >= 0");
  if (p.dim < 1 || p.dim > 3) out.push_back("model.dim: must be 1, 2 or 3");

  const AdmissibleBox& b = p.box;
  if (!(b.rho_min > 0)) out.push_back("model.admissible_box.rho_min: must be > 0");
  if (!(b.rho_max > b.rho_min)) out.push_back("model.admissible_box.rho_max: must exceed rho_min");
  if (!(b.theta_min > 0)) out.push_back("model.admissible_box.theta_min: must be > 0");
  if (!(b.theta_max > b.theta_min)) out.push_back("model.admissible_box.theta_max: must exceed theta_min");
  if (!(b.u_max >= 0)) out.push_back("model.admissible_box.u_max: must be >= 0");
  if (!(b.delta > 0)) out.push_back("model.admissible_box.delta: must be > 0");
  if (!out.empty()) return out;

  // Sign conditions at every box corner. p_rho and p_theta are positive whenever rho, theta are;
  // e_theta is smallest at (rho_min, theta_min, |q| = delta), |p_S2| largest at |S2| = delta.
  for (double rho : {b.rho_min, b.rho_max}) {
    for (double theta : {b.theta_min, b.theta_max}) {
      PrimitiveState<double> s{rho, SpaceVector<double>::Zero(p.dim), theta, SpaceVector<double>::Zero(p.dim),
                               b.delta};
      s.q(0) = b.delta;
      const auto d = pressure_partials(s, p);
      if (!(d.p_rho > 0 && d.p_theta > 0 && d.e_theta > 0)) {
        out.push_back("model.admissible_box.delta: corner (rho=" + std::to_string(rho) +
                      ", theta=" + std::to_string(theta) + ") violates p_rho, p_theta, e_theta > 0");
        return out;
      }
      if (!(std::abs(d.p_s2) < 0.5)) {
        out.push_back("model.admissible_box.delta: |p_S2| = " + std::to_string(std::abs(d.p_s2)) +
                      " is not < 1/2 at the box corner");
        return out;
      }
    }
  }
  return out;
}

void validate(const ModelParams& p) {
  auto issues = validation_issues(p);
  if (!issues.empty()) throw ConfigError(std::move(issues));
}

}  // namespace hyperns
