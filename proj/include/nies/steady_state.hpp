#pragma once

#include <complex>

#include "nies/core.hpp"

namespace nies {

// Strong-field saturation state of the m-n pair.
struct SaturationState {
  double tau_sq = 0.0;   // interaction time scale squared
  double ae = 0.0;       // saturation parameter, tau^2 G^2
  double gamma_B = 0.0;  // width of the field-burned velocity structure
  double Gamma = 0.0;    // m-n transition width (kept for downstream use)
};

// tau^2 = 2 (Gamma_m + Gamma_n - gamma_mn) / (Gamma_m Gamma_n Gamma),
// ae = tau^2 G^2, gamma_B = Gamma sqrt(1+ae).
SaturationState saturation(const AtomicRates& rates, const StrongField& strong);

// Lorentzian velocity profile of the field-induced population change:
// W_B(v) = gamma_B / (pi (gamma_B^2 + (Omega - k v)^2)), unit area in k*v.
double bennett_dist(double v, const StrongField& strong, const SaturationState& sat);

struct VelocityPopulations {
  double rho_mm = 0.0;
  double rho_nn = 0.0;
  double rho_jj = 0.0;
  std::complex<double> r_nm;  // slowly varying coherence amplitude
  // Field-induced parts, kept for partner levels fed by the probed one.
  double delta_mm = 0.0;
  double delta_nn = 0.0;
};

// Steady state in terms of the strong-field detuning the atom sees,
// omega_prime = Omega - k v for collinear motion. Occupations n_m, n_n, n_j
// are passed in explicitly so callers can use either n_i(v) or the bare N_i
// (every output is linear in them, which lets the Maxwell weight factor out
// of averages).
VelocityPopulations populations_detuned(double omega_prime, const AtomicRates& rates,
                                        const StrongField& strong, const SaturationState& sat,
                                        double n_m, double n_n, double n_j);

VelocityPopulations populations_at(double v, const AtomicRates& rates,
                                   const StrongField& strong, const SaturationState& sat,
                                   double n_m, double n_n, double n_j);

// Convenience form evaluating the Maxwellian occupations at v.
VelocityPopulations populations(double v, const AtomicRates& rates, const StrongField& strong,
                                const Ensemble& ens, const SaturationState& sat);

}  // namespace nies
