#pragma once

#include "nies/core.hpp"
#include "nies/steady_state.hpp"

namespace nies {

// Probe power density of one atom at fixed velocity, split into the part
// driven by level populations and the part driven by the strong-field
// coherence. The split shares one arithmetic path, so total = pop + coh
// exactly.
struct KernelSample {
  double total = 0.0;
  double pop_part = 0.0;
  double coh_part = 0.0;
  double emission_only = 0.0;  // partner occupation dropped (spontaneous case)
};

struct NonpositiveBin : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Core evaluation in terms of the two Doppler-shifted detunings. omega_prime
// is the strong-field detuning seen by the atom, omega_mu_prime the probe
// one; occupations are passed through to the steady state.
KernelSample kernel_eval(double omega_prime, double omega_mu_prime,
                         const AtomicRates& rates, const StrongField& strong,
                         const ProbeField& probe, const SaturationState& sat,
                         double n_m, double n_n, double n_partner, double prefactor,
                         const TransitionBundle& bundle = base_bundle());

// Collinear geometry: omega_prime = Omega - k v, omega_mu_prime =
// Omega_mu - sigma k_mu v, Maxwellian occupations at v.
KernelSample w_fixed(double v, double Omega_mu, const AtomicRates& rates,
                     const StrongField& strong, const ProbeField& probe,
                     const Ensemble& ens, double prefactor = 1.0,
                     const TransitionBundle& bundle = base_bundle());

// Same geometry with bare velocity-integrated populations in place of
// n_i(v). Every kernel term is linear in the occupations, so
// w_fixed = w_fixed_bare * maxwell(v).
KernelSample w_fixed_bare(double v, double Omega_mu, const AtomicRates& rates,
                          const StrongField& strong, const ProbeField& probe,
                          const Ensemble& ens, double prefactor = 1.0,
                          const TransitionBundle& bundle = base_bundle());

// Vacuum-field replacement for |G_mu|^2 in the spontaneous-emission variant:
// gamma_nj * dOmega_mu * dO / (8 pi^2) for a spectral bin and solid-angle bin.
double spontaneous_weight(double gamma_nj, double dOmega_mu, double dO);

}  // namespace nies
