#include "nies/steady_state.hpp"

#include <cmath>

namespace nies {

SaturationState saturation(const AtomicRates& rates, const StrongField& strong) {
  const double Gm = rates.level_width(Level::m);
  const double Gn = rates.level_width(Level::n);
  const double Gamma = rates.transition_width(Level::m, Level::n);
  const double gmn = rates.branch_rate(Level::m, Level::n);

  SaturationState s;
  s.Gamma = Gamma;
  s.tau_sq = 2.0 * (Gm + Gn - gmn) / (Gm * Gn * Gamma);
  s.ae = s.tau_sq * strong.G * strong.G;
  s.gamma_B = Gamma * std::sqrt(1.0 + s.ae);
  return s;
}

double bennett_dist(double v, const StrongField& strong, const SaturationState& sat) {
  const double d = strong.Omega - strong.k * v;
  return sat.gamma_B / (M_PI * (sat.gamma_B * sat.gamma_B + d * d));
}

VelocityPopulations populations_detuned(double omega_prime, const AtomicRates& rates,
                                        const StrongField& strong, const SaturationState& sat,
                                        double n_m, double n_n, double n_j) {
  const double Gm = rates.level_width(Level::m);
  const double Gn = rates.level_width(Level::n);
  const double gmn = rates.branch_rate(Level::m, Level::n);
  const double gnj = rates.branch_rate(Level::n, Level::j);

  const double WB = sat.gamma_B /
                    (M_PI * (sat.gamma_B * sat.gamma_B + omega_prime * omega_prime));
  // Common field-induced flux through the m-n transition.
  const double P = 2.0 * M_PI * strong.G * strong.G / std::sqrt(1.0 + sat.ae) *
                   (n_m - n_n) * WB;

  VelocityPopulations p;
  p.delta_nn = (1.0 - gmn / Gm) * P / Gn;
  p.delta_mm = -P / Gm;
  p.rho_nn = n_n + p.delta_nn;
  p.rho_mm = n_m + p.delta_mm;
  p.rho_jj = n_j;
  if (gnj != 0.0) p.rho_jj += (gnj / rates.level_width(Level::j)) * p.delta_nn;

  const std::complex<double> den(sat.Gamma, omega_prime);
  p.r_nm = std::complex<double>(0.0, strong.G) * (p.rho_mm - p.rho_nn) / den;
  return p;
}

VelocityPopulations populations_at(double v, const AtomicRates& rates,
                                   const StrongField& strong, const SaturationState& sat,
                                   double n_m, double n_n, double n_j) {
  return populations_detuned(strong.Omega - strong.k * v, rates, strong, sat, n_m, n_n, n_j);
}

VelocityPopulations populations(double v, const AtomicRates& rates, const StrongField& strong,
                                const Ensemble& ens, const SaturationState& sat) {
  return populations_at(v, rates, strong, sat, ens.n_of(Level::m, v), ens.n_of(Level::n, v),
                        ens.n_of(Level::j, v));
}

}  // namespace nies
