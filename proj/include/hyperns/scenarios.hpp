#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperns/diagnostics.hpp"
#include "hyperns/field.hpp"
#include "hyperns/solver.hpp"

namespace hyperns {

/// Radial expansion profile: v rises from 0 to L on [0, 1], stays at L, decays back to 0 on
/// [M - 1, M]. Corners are blended with a C^3 septic smoothstep of half-width w.
struct BlowupProfileSpec {
  double M_support = 5.0;
  std::optional<double> L;                ///< default: smallest value meeting the F(0) lower bound
  std::optional<double> mollifier_width;  ///< default: 2 dx
  double rho0 = 1.0;                      ///< constant density inside the ball
  double theta0 = 1.5;                    ///< rho0 * theta0 must exceed 1
  std::optional<double> sigma;            ///< default: background_sigma(p)
};

/// C^3 smoothstep on [0, 1]: 35x^4 - 84x^5 + 70x^6 - 20x^7, clamped outside.
double septic_smoothstep(double x);

/// Smoothed profile v(r) for r >= 0.
double blowup_profile(double r, double L, double M, double w);

/// Smoothed indicator of the ball |x| <= M (1 inside M - 2w, 0 beyond M).
double ball_indicator(double r, double M, double w);

/// Amplitude making the F(0) lower bound reach the ledger.s f0_threshold in dimension n,
/// times `margin`.
double blowup_amplitude(const ModelParams& p, const BlowupProfileSpec& spec, double sigma, double margin = 1.25);

/// sigma rule for the blow-up ledger: 1.1 times the largest characteristic speed at the
/// background equilibrium (1, 0, 1, 0, 0).
double background_sigma(const ModelParams& p);

struct BlowupData {
  Field field;
  BlowupLedger ledger;
  double L = 0.0;
  double sigma = 0.0;
  double width = 0.0;
};

/// Radial expansion data u0 = v(|x|) x / |x| with rho0, theta0 inside the ball.
/// Throws ConfigError when the ball does not fit in the domain.
BlowupData blowup_initial_data(const BlowupProfileSpec& spec, const Grid& grid, const ModelParams& p);

/// Compact bumps eps (1 - (r / R)^2)^4 in rho - 1, u . x / R, theta - 1; q = S2 = 0.
/// R defaults to a quarter of the shortest domain side, centred in the domain.
Field small_data(const Grid& grid, const ModelParams& p, double amplitude, std::optional<double> radius = std::nullopt);

/// Smooth periodic data: rho = 1 + a sin(x), u = a sin(x + 1) (all axes), theta = 1 + a cos(x),
/// q = S2 = 0. Intended for [0, 2 pi]^n periodic grids.
Field periodic_wave_data(const Grid& grid, const ModelParams& p, double amplitude);

/// Discrete closures on the interior: q = -kappa grad theta, S2 = lambda div u (centred).
void closure_fluxes(const Field& f, const ModelParams& p, Eigen::ArrayXXd& q, Eigen::ArrayXd& s2);

/// Copies rho, u, theta from base and sets q, S2 to their closures plus an optional initial
/// layer sqrt(tau) * layer_amplitude * (phi, psi), where ||(phi, psi)||_{H^3} = 1 is a fixed
/// smooth mode. Amplitude 0 is the exact preparation; amplitude 1 sits on the boundary of
/// the well-prepared class.
Field well_prepared_data(const Grid& grid, const ModelParams& p, double tau, const Field& base,
                         double layer_amplitude = 0.0);

/// Discrete H^3 surrogate of (q + kappa grad theta, S2 - lambda div u).
double flux_correction_norm(const Field& f, const ModelParams& p);

/// Discrete H^3 surrogate of the (rho, u, theta) difference.
double state_difference_norm(const Field& a, const Field& b, const ModelParams& p);

struct SweepConfig {
  ModelParams model;                    ///< tau1 and tau3 are overwritten per run
  Grid grid;
  double amplitude = 0.05;              ///< periodic_wave_data amplitude
  double layer_amplitude = 1.0;
  std::vector<double> taus{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  std::optional<double> end_time;       ///< default: 0.25 domain-crossing time
  std::optional<double> dt;             ///< default: 0.9 times the smallest initial limit over all runs
  Integrator integrator = Integrator::ssp_rk2;
  int sample_every = 10;                ///< steps between error samples
};

struct SweepRow {
  double tau = 0.0;
  double err_state = 0.0;     ///< sup over sampled times
  double err_flux = 0.0;      ///< sup over sampled times
  double err_state_final = 0.0;
  double err_flux_final = 0.0;
  std::string status = "ok";  ///< "ok" or "failed: <reason>"
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double slope_state = 0.0;
  double slope_flux = 0.0;
  double slope_state_final = 0.0;
  double slope_flux_final = 0.0;
  double end_time = 0.0;
  double dt = 0.0;
  long steps = 0;
};

/// Least-squares slope of log y against log x over entries with y > 0.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Relaxed runs (tau1 = tau3 = tau) against the classical reference from the same data.
SweepResult relaxation_sweep(const SweepConfig& cfg);

}  // namespace hyperns
