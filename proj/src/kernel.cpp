#include "nies/kernel.hpp"

#include <cmath>
#include <complex>

namespace nies {

KernelSample kernel_eval(double omega_prime, double omega_mu_prime,
                         const AtomicRates& rates, const StrongField& strong,
                         const ProbeField& probe, const SaturationState& sat,
                         double n_m, double n_n, double n_partner, double prefactor,
                         const TransitionBundle& bundle) {
  using cplx = std::complex<double>;

  const Level other = (bundle.probed == Level::n) ? Level::m : Level::n;
  const double Gamma_two = rates.transition_width(bundle.partner, other);  // two-quantum path
  const double Gamma_one = rates.transition_width(bundle.partner, bundle.probed);
  const int s = bundle.omega_prime_sign;

  const VelocityPopulations pops =
      populations_detuned(omega_prime, rates, strong, sat, n_m, n_n, 0.0);

  const double rho_probed = (bundle.probed == Level::n) ? pops.rho_nn : pops.rho_mm;
  const double delta_probed = (bundle.probed == Level::n) ? pops.delta_nn : pops.delta_mm;
  double rho_partner = n_partner;
  if (bundle.partner_below) {
    const double feed = rates.branch_rate(bundle.probed, bundle.partner);
    if (feed != 0.0) rho_partner += (feed / rates.level_width(bundle.partner)) * delta_probed;
  }

  // Relabeled coherence: probing the upper strong level conjugates it, which
  // the sign s implements on both the detuning and the population difference.
  const cplx r_tilde = cplx(0.0, strong.G) * (s * (pops.rho_mm - pops.rho_nn)) /
                       cplx(sat.Gamma, s * omega_prime);

  const cplx A1(Gamma_two, omega_mu_prime + s * omega_prime);
  const cplx A2(Gamma_one, omega_mu_prime);
  const cplx D = A1 * A2 + strong.G * strong.G;

  const double scale = 2.0 * prefactor * probe.G_mu * probe.G_mu;
  const cplx x_pop = A1 * (rho_probed - rho_partner) / D;
  const cplx x_coh = -cplx(0.0, strong.G) * r_tilde / D;
  const cplx x_emit = A1 * rho_probed / D + x_coh;

  KernelSample out;
  out.pop_part = scale * x_pop.real();
  out.coh_part = scale * x_coh.real();
  out.total = out.pop_part + out.coh_part;
  out.emission_only = scale * x_emit.real();
  return out;
}

namespace {

KernelSample eval_collinear(double v, const AtomicRates& rates, const StrongField& strong,
                            const ProbeField& probe, const SaturationState& sat, double n_m,
                            double n_n, double n_partner, double prefactor,
                            const TransitionBundle& bundle) {
  const double omega_prime = strong.Omega - strong.k * v;
  const double omega_mu_prime = probe.Omega_mu - sigma_of(probe.direction) * probe.k_mu * v;
  return kernel_eval(omega_prime, omega_mu_prime, rates, strong, probe, sat, n_m, n_n,
                     n_partner, prefactor, bundle);
}

}  // namespace

KernelSample w_fixed(double v, double Omega_mu, const AtomicRates& rates,
                     const StrongField& strong, const ProbeField& probe, const Ensemble& ens,
                     double prefactor, const TransitionBundle& bundle) {
  ProbeField pv = probe;
  pv.Omega_mu = Omega_mu;
  const SaturationState sat = saturation(rates, strong);
  return eval_collinear(v, rates, strong, pv, sat, ens.n_of(Level::m, v),
                        ens.n_of(Level::n, v), ens.n_of(bundle.partner, v), prefactor, bundle);
}

KernelSample w_fixed_bare(double v, double Omega_mu, const AtomicRates& rates,
                          const StrongField& strong, const ProbeField& probe,
                          const Ensemble& ens, double prefactor,
                          const TransitionBundle& bundle) {
  ProbeField pv = probe;
  pv.Omega_mu = Omega_mu;
  const SaturationState sat = saturation(rates, strong);
  return eval_collinear(v, rates, strong, pv, sat, ens.population(Level::m),
                        ens.population(Level::n), ens.population(bundle.partner), prefactor,
                        bundle);
}

double spontaneous_weight(double gamma_nj, double dOmega_mu, double dO) {
  if (!(dOmega_mu > 0.0) || !(dO > 0.0))
    throw NonpositiveBin("spectral and solid-angle bins must be positive");
  return gamma_nj * dOmega_mu * dO / (8.0 * M_PI * M_PI);
}

}  // namespace nies
