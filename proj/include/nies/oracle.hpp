#pragma once

#include <functional>
#include <vector>

#include "nies/core.hpp"
#include "nies/kernel.hpp"

namespace nies {

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  double v_cut = 6.0;  // integration window in units of v_bar, floored at 4
  int max_subdivisions = 4000;
};

struct ToleranceNotMet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

// Maxwellian velocity average of f: integral of f(v) exp(-v^2/v_bar^2) /
// (sqrt(pi) v_bar) over |v| <= v_cut*v_bar, by adaptive bisection of
// Gauss-Kronrod panels, worst panel first. Narrow structures (the
// field-burned hole is gamma_B/k wide against a k*v_bar-wide window) are
// caught by seeding panel edges at the caller's resonance velocities.
Estimate maxwell_average(const std::function<double(double)>& f, const Ensemble& ens,
                         const QuadratureSpec& spec, const std::vector<double>& seeds = {});

// Raw adaptive integral over [a, b] with seeded breakpoints (no Maxwell
// weight); exposed for tests of the engine itself.
Estimate integrate(const std::function<double(double)>& f, double a, double b,
                   const QuadratureSpec& spec, const std::vector<double>& seeds = {});

struct AveragedKernel {
  double pop_part = 0.0;
  double coh_part = 0.0;
  double total = 0.0;  // pop_part + coh_part by construction
  double emission_only = 0.0;
  double error = 0.0;  // largest component error estimate
};

// Velocity average of the fixed-atom kernel at one probe detuning,
// collinear geometry taken from config.probe.direction.
AveragedKernel average_lineshape(double Omega_mu, const Config& cfg,
                                 const QuadratureSpec& spec,
                                 const TransitionBundle& bundle = base_bundle());

// General angle theta between the probe and strong wavevectors: average over
// the velocity component v along k and the transverse component u, each
// Maxwellian. theta = 0 reproduces the parallel case, theta = pi the
// antiparallel one.
AveragedKernel average_lineshape_angle(double Omega_mu, const Config& cfg, double theta,
                                       const QuadratureSpec& spec,
                                       const TransitionBundle& bundle = base_bundle());

struct GridMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PointDeviation {
  double x = 0.0;
  double closed = 0.0;
  double reference = 0.0;
  double rel_err = 0.0;  // 0 when both values sit under the floor
};

struct CompareReport {
  double max_rel_err = 0.0;  // worst pointwise ratio, floor-excluded
  double arg_max = 0.0;
  double sup_rel_err = 0.0;  // max |diff| / max |reference|
  std::vector<PointDeviation> table;
};

// Pointwise comparison of two scans on the same grid. Points where both
// values are below floor_scale are reported with rel_err = 0.
CompareReport compare(const std::vector<double>& grid, const std::vector<double>& closed,
                      const std::vector<double>& reference, double floor_scale = 0.0);

}  // namespace nies
