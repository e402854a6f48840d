#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nies/core.hpp"

namespace nies {

// Resonator context for generation at the g-n transition.
struct Resonator {
  double delta_omega_r = 0.0;  // resonator bandwidth
  double l_over_lr = 1.0;      // geometric fill factor of the amplifying cell
  double omega_r = 0.0;        // natural frequency offset from the g-n line
  double Delta_N = 0.0;        // threshold population difference at G = 0, Omega_mu = 0
};

struct DegenerateWidth : std::domain_error {
  using std::domain_error::domain_error;
};

// Small-saturation effective widths of the g-n response in the external
// field: gamma0 for the Bennett (step-wise) part, gamma_plus for the
// interference part, with the k_mu < k and k_mu > k branches joining
// continuously at k_mu = k.
struct GenerationWidths {
  double gamma0 = 0.0;
  double gamma_plus = 0.0;
};

GenerationWidths generation_widths(const AtomicRates& rates, const StrongField& strong,
                                   const ProbeField& probe);

// Structure term added to the saturated-gain balance by the external field,
// split into the Bennett part (carrying 1 - gamma_mn/Gamma_m) and the
// interference part (carrying 1/(Gamma + Gamma_gn - Gamma_gm)).
struct AlphaStructure {
  double bennett = 0.0;
  double interference = 0.0;
  double total = 0.0;
};

AlphaStructure alpha_structure(double Omega_mu, const AtomicRates& rates,
                               const StrongField& strong, const ProbeField& probe,
                               const Ensemble& ens);

struct GenerationPoint {
  double Omega_mu = 0.0;
  double power = 0.0;  // generated |G_mu|^2 in squared Rabi units
  double alpha = 0.0;
  double I_minus = 0.0;
  double I_plus = 0.0;
  double Omega_r_of_Omega_mu = 0.0;
  bool below_threshold = false;
};

// Generated field intensity from the gain-equals-loss balance; below
// threshold the point carries power = 0 and the flag, never an error.
GenerationPoint power(double Omega_mu, const Config& cfg, const Resonator& res);

// Spike/dip profiles riding the generation contour at Omega_mu = -/+ k_mu
// Omega / k. Their closed forms assume the collision-free reduction
// Gamma + Gamma_gn - Gamma_gm = Gamma_n.
struct SpikePair {
  double I_minus = 0.0;
  double I_plus = 0.0;
  bool collision_warning = false;
};

SpikePair spikes(double Omega_mu, const Config& cfg);

// Generation frequency offset as a function of the probe detuning: pulling
// toward the line center, repulsion near the Lamb dip, and the external
// field term G^2 Phi.
struct ResonatorPoint {
  double Omega_r = 0.0;
  bool regime_ok = true;  // |Omega_mu| << k_mu v_bar
};

ResonatorPoint resonator_map(double Omega_mu, const Config& cfg, const Resonator& res);

// Closed-form dOmega_mu/dOmega_r at the spike centers Omega_mu = +/- k_mu
// Omega / k, valid for Gamma_ng << Omega << k_mu v_bar, spontaneous
// relaxation, gamma_mn << Gamma_m.
struct PullingSlope {
  double slope = 1.0;
  bool regime_ok = true;
};

PullingSlope pulling_slope(const Config& cfg, const Resonator& res, int which_sign);

// Soft checks that the probe saturation stays negligible next to the g-n
// inversion (10x margin); returns human-readable warnings, never blocks.
std::vector<std::string> validity_gate(const Config& cfg, const Resonator& res);

// Full scan row: power, alpha, spikes, and the resonator map at one point.
GenerationPoint generation_point(double Omega_mu, const Config& cfg, const Resonator& res);

}  // namespace nies
