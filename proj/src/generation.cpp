#include "nies/generation.hpp"

#include <cmath>

namespace nies {

namespace {

struct GnRates {
  double Gamma;     // m-n transition width
  double Gamma_gn;  // g-n transition width
  double Gamma_gm;  // g-m transition width
  double Gamma_m, Gamma_n, Gamma_g;
  double gamma_mn;  // m -> n branch
  double gamma_gn;  // g -> n branch (saturation factor of the lasing pair)
};

GnRates gn_rates(const AtomicRates& rates) {
  GnRates r;
  r.Gamma = rates.transition_width(Level::m, Level::n);
  r.Gamma_gn = rates.transition_width(Level::g, Level::n);
  r.Gamma_gm = rates.transition_width(Level::g, Level::m);
  r.Gamma_m = rates.level_width(Level::m);
  r.Gamma_n = rates.level_width(Level::n);
  r.Gamma_g = rates.level_width(Level::g);
  r.gamma_mn = rates.branch_rate(Level::m, Level::n);
  r.gamma_gn = rates.branch_rate(Level::g, Level::n);
  return r;
}

double lorentz(double gamma, double x) { return gamma * gamma / (gamma * gamma + x * x); }

}  // namespace

GenerationWidths generation_widths(const AtomicRates& rates, const StrongField& strong,
                                   const ProbeField& probe) {
  GnRates r = gn_rates(rates);
  double kr = probe.k_mu / strong.k;
  GenerationWidths w;
  w.gamma0 = r.Gamma_gn + kr * r.Gamma;
  w.gamma_plus =
      probe.k_mu < strong.k ? r.Gamma_gm * kr + (1.0 - kr) * r.Gamma_gn
                            : r.Gamma_gm + (kr - 1.0) * r.Gamma;
  return w;
}

AlphaStructure alpha_structure(double Omega_mu, const AtomicRates& rates,
                               const StrongField& strong, const ProbeField& probe,
                               const Ensemble& ens) {
  GnRates r = gn_rates(rates);
  double denom = r.Gamma + r.Gamma_gn - r.Gamma_gm;
  if (denom <= 0.0)
    throw DegenerateWidth(
        "alpha_structure: Gamma + Gamma_gn - Gamma_gm must be positive");
  GenerationWidths w = generation_widths(rates, strong, probe);
  double kr = probe.k_mu / strong.k;
  double zm = Omega_mu + kr * strong.Omega;
  double zp = Omega_mu - kr * strong.Omega;
  double weight = kr * (ens.population(Level::m) - ens.population(Level::n)) * strong.G *
                  strong.G;
  AlphaStructure a;
  a.bennett = weight * (1.0 - r.gamma_mn / r.Gamma_m) / (r.Gamma_n * w.gamma0) *
              (lorentz(w.gamma0, zm) + lorentz(w.gamma0, zp));
  a.interference = weight / denom *
                   (w.gamma_plus / (w.gamma_plus * w.gamma_plus + zp * zp) -
                    w.gamma0 / (w.gamma0 * w.gamma0 + zp * zp));
  a.total = a.bennett + a.interference;
  return a;
}

GenerationPoint power(double Omega_mu, const Config& cfg, const Resonator& res) {
  GnRates r = gn_rates(cfg.rates);
  GenerationPoint p;
  p.Omega_mu = Omega_mu;
  p.alpha = alpha_structure(Omega_mu, cfg.rates, cfg.strong, cfg.probe, cfg.ensemble).total;

  double inversion = cfg.ensemble.population(Level::g) - cfg.ensemble.population(Level::n);
  double arg = Omega_mu / (cfg.probe.k_mu * cfg.ensemble.v_bar);
  double bracket = inversion > 0.0
                       ? 1.0 - (res.Delta_N * std::exp(arg * arg) + p.alpha) / inversion
                       : 0.0;
  if (!(bracket > 0.0)) {
    p.below_threshold = true;
    p.power = 0.0;
    return p;
  }
  double saturation_scale = r.Gamma_n * r.Gamma_g * r.Gamma_gn / (r.Gamma_n + r.Gamma_g - r.gamma_gn);
  double lamb = 1.0 + lorentz(r.Gamma_gn, Omega_mu);
  p.power = saturation_scale * bracket / lamb;
  return p;
}

SpikePair spikes(double Omega_mu, const Config& cfg) {
  const Ensemble& ens = cfg.ensemble;
  GnRates r = gn_rates(cfg.rates);
  GenerationWidths w = generation_widths(cfg.rates, cfg.strong, cfg.probe);
  SpikePair s;
  s.collision_warning =
      std::abs(r.Gamma + r.Gamma_gn - r.Gamma_gm - r.Gamma_n) > 1e-9 * r.Gamma_n;

  double kr = cfg.probe.k_mu / cfg.strong.k;
  double front = (ens.population(Level::m) - ens.population(Level::n)) /
                 (ens.population(Level::n) - ens.population(Level::g)) * kr *
                 cfg.strong.G * cfg.strong.G / (r.Gamma_n * w.gamma0);
  double zm = Omega_mu + kr * cfg.strong.Omega;
  double zp = Omega_mu - kr * cfg.strong.Omega;
  s.I_minus = front * (1.0 - r.gamma_mn / r.Gamma_m) * lorentz(w.gamma0, zm);
  s.I_plus = front * ((w.gamma0 / w.gamma_plus) * lorentz(w.gamma_plus, zp) -
                      (r.gamma_mn / r.Gamma_m) * lorentz(w.gamma0, zp));
  return s;
}

namespace {

// Refraction contribution of the external-field structure.
double phi_map(double Omega_mu, const GnRates& r, const GenerationWidths& w, double kr,
               double Omega) {
  double zm = Omega_mu + kr * Omega;
  double zp = Omega_mu - kr * Omega;
  double lam = Omega_mu / (2.0 * r.Gamma_gn * r.Gamma_gn + Omega_mu * Omega_mu);
  double bennett = (1.0 - r.gamma_mn / r.Gamma_m) / r.Gamma_n *
                   ((zm - w.gamma0 * r.Gamma_gn * lam) / (w.gamma0 * w.gamma0 + zm * zm) +
                    (zp - w.gamma0 * r.Gamma_gn * lam) / (w.gamma0 * w.gamma0 + zp * zp));
  double i1 = (zp - w.gamma_plus * r.Gamma_gn * lam) /
              (w.gamma_plus * w.gamma_plus + zp * zp);
  double i2 = (zp - w.gamma0 * r.Gamma_gn * lam) / (w.gamma0 * w.gamma0 + zp * zp);
  return bennett + (i1 - i2) / (r.Gamma + r.Gamma_gn - r.Gamma_gm);
}

}  // namespace

ResonatorPoint resonator_map(double Omega_mu, const Config& cfg, const Resonator& res) {
  GnRates r = gn_rates(cfg.rates);
  GenerationWidths w = generation_widths(cfg.rates, cfg.strong, cfg.probe);
  double kr = cfg.probe.k_mu / cfg.strong.k;
  double inversion_ratio =
      (cfg.ensemble.population(Level::g) - cfg.ensemble.population(Level::n)) / res.Delta_N;
  double pull = (2.0 / std::sqrt(M_PI)) * inversion_ratio * Omega_mu /
                (cfg.strong.k * cfg.ensemble.v_bar);
  double rep = (inversion_ratio - 1.0) * Omega_mu * r.Gamma_gn /
               (2.0 * r.Gamma_gn * r.Gamma_gn + Omega_mu * Omega_mu);
  double field = kr * cfg.strong.G * cfg.strong.G *
                 (cfg.ensemble.population(Level::m) - cfg.ensemble.population(Level::n)) /
                 res.Delta_N * phi_map(Omega_mu, r, w, kr, cfg.strong.Omega);
  ResonatorPoint out;
  out.Omega_r = Omega_mu + res.l_over_lr * (res.delta_omega_r / 2.0) * (pull - rep - field);
  out.regime_ok = std::abs(Omega_mu) <= 0.1 * cfg.probe.k_mu * cfg.ensemble.v_bar;
  return out;
}

PullingSlope pulling_slope(const Config& cfg, const Resonator& res, int which_sign) {
  GnRates r = gn_rates(cfg.rates);
  GenerationWidths w = generation_widths(cfg.rates, cfg.strong, cfg.probe);
  double kr = cfg.probe.k_mu / cfg.strong.k;
  double common = res.l_over_lr * (res.delta_omega_r / 2.0) *
                  (cfg.ensemble.population(Level::m) - cfg.ensemble.population(Level::n)) /
                  res.Delta_N * kr * cfg.strong.G * cfg.strong.G / r.Gamma_n;
  double x = which_sign > 0
                 ? common / (w.gamma_plus * w.gamma_plus)
                 : common * (1.0 - r.gamma_mn / r.Gamma_m) / (w.gamma0 * w.gamma0);
  PullingSlope out;
  out.slope = 1.0 / (1.0 - x);
  bool spontaneous = std::abs(r.Gamma + r.Gamma_gn - r.Gamma_gm - r.Gamma_n) <= 1e-9 * r.Gamma_n;
  out.regime_ok = spontaneous && r.gamma_mn <= 0.1 * r.Gamma_m &&
                  std::abs(cfg.strong.Omega) >= 10.0 * r.Gamma_gn &&
                  std::abs(cfg.strong.Omega) * 10.0 <= cfg.probe.k_mu * cfg.ensemble.v_bar;
  return out;
}

std::vector<std::string> validity_gate(const Config& cfg, const Resonator& res) {
  GnRates r = gn_rates(cfg.rates);
  std::vector<std::string> warnings;
  double G2 = cfg.strong.G * cfg.strong.G;
  double Gamma2 = r.Gamma * r.Gamma;
  double pump = std::abs(cfg.ensemble.population(Level::m) - cfg.ensemble.population(Level::n));
  double inversion =
      std::abs(cfg.ensemble.population(Level::g) - cfg.ensemble.population(Level::n));
  if (pump * G2 / Gamma2 * 10.0 > inversion)
    warnings.push_back(
        "strong-field saturation |N_m - N_n| G^2/Gamma^2 is not small next to |N_g - N_n|");
  // Self-consistent probe scale: the unperturbed generation level.
  Config quiet = cfg;
  quiet.strong.G = 0.0;
  GenerationPoint base = power(0.0, quiet, res);
  double Gmu2 = base.power;
  if (pump * G2 * G2 / (Gamma2 * Gamma2) * 10.0 > inversion * Gmu2 / Gamma2)
    warnings.push_back(
        "fourth-order strong-field term is not small next to the generated intensity");
  return warnings;
}

GenerationPoint generation_point(double Omega_mu, const Config& cfg, const Resonator& res) {
  GenerationPoint p = power(Omega_mu, cfg, res);
  SpikePair s = spikes(Omega_mu, cfg);
  p.I_minus = s.I_minus;
  p.I_plus = s.I_plus;
  p.Omega_r_of_Omega_mu = resonator_map(Omega_mu, cfg, res).Omega_r;
  return p;
}

}  // namespace nies
