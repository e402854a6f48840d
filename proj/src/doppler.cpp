#include "nies/doppler.hpp"

#include <cmath>
#include <string>

namespace nies {

namespace {

using cplx = std::complex<double>;

constexpr double kBranchEps = 1e-12;
constexpr double kOffAxisAeLimit = 0.3;
constexpr double kSqrt3 = 1.7320508075688772;

Level strong_partner_of(Level probed) { return probed == Level::n ? Level::m : Level::n; }

void require_plus_geometry(const TransitionBundle& b, const char* where) {
  if (b.omega_prime_sign == +1) return;
  throw UnknownTransition(std::string(where) +
                          ": closed-form averages cover probe transitions sharing the lower "
                          "strong level (two-quantum sum resonance); the difference-resonance "
                          "geometry needs the numeric velocity average");
}

// Common coefficient of both averaged terms, (k_mu/k) 2G^2 / sqrt(1+ae).
double common_coeff(const SaturationState& sat, const StrongField& strong,
                    const ProbeField& probe) {
  double kr = probe.k_mu / strong.k;
  return kr * 2.0 * strong.G * strong.G / std::sqrt(1.0 + sat.ae);
}

// Interference-term numerator (1 - sigma sqrt(1+ae)) / 2.
double f_numerator(const SaturationState& sat, int sigma) {
  return 0.5 * (1.0 - sigma * std::sqrt(1.0 + sat.ae));
}

// Bennett-term numerator scale (1/Gamma_n)(1 - gamma_mn/Gamma_m).
double F_numerator(const AtomicRates& rates) {
  double Gm = rates.level_width(Level::m);
  double Gn = rates.level_width(Level::n);
  return (1.0 - rates.branch_rate(Level::m, Level::n) / Gm) / Gn;
}

cplx denom(double z, const EffectiveWidths& w, double G) {
  return (cplx(w.gamma0, z)) * (cplx(w.gamma_pm, z)) + G * G;
}

}  // namespace

EffectiveWidths effective_widths(const AtomicRates& rates, const StrongField& strong,
                                 const ProbeField& probe, const SaturationState& sat,
                                 const TransitionBundle& bundle) {
  require_plus_geometry(bundle, "effective_widths");
  Level other = strong_partner_of(bundle.probed);
  double one_quantum = rates.transition_width(bundle.partner, bundle.probed);
  double two_quantum = rates.transition_width(bundle.partner, other);
  double kr = probe.k_mu / strong.k;
  int sigma = sigma_of(probe.direction);
  EffectiveWidths w;
  w.gamma0 = one_quantum + sat.gamma_B * kr;
  w.gamma_pm = two_quantum + sat.gamma_B * (kr + sigma);
  w.sigma = sigma;
  return w;
}

RootPair roots(const EffectiveWidths& w, double G) {
  double sum = w.gamma0 + w.gamma_pm;
  double diff = w.gamma0 - w.gamma_pm;
  double disc = diff * diff - 4.0 * G * G;
  double scale = diff * diff + 4.0 * G * G;
  RootPair r;
  r.z0 = 0.5 * sum;
  if (std::abs(disc) <= kBranchEps * scale) {
    r.branch = RootBranch::confluent;
    r.z1 = r.z2 = r.z0;
    r.zeta = 0.0;
  } else if (disc > 0.0) {
    r.branch = RootBranch::real;
    double sq = std::sqrt(disc);
    r.z1 = 0.5 * (sum + sq);
    r.z2 = 0.5 * (sum - sq);
    r.zeta = 0.0;
  } else {
    r.branch = RootBranch::complex_pair;
    r.zeta = 0.5 * std::sqrt(-disc);
    r.z1 = r.z2 = 0.0;
  }
  return r;
}

double f_interference(double z, const EffectiveWidths& w, const RootPair& r,
                      const SaturationState& sat, const StrongField& strong,
                      const ProbeField& probe) {
  double C = common_coeff(sat, strong, probe) * f_numerator(sat, w.sigma);
  switch (r.branch) {
    case RootBranch::real: {
      double a = r.z2 / (r.z2 * r.z2 + z * z) - r.z1 / (r.z1 * r.z1 + z * z);
      return C * a / (r.z1 - r.z2);
    }
    case RootBranch::complex_pair: {
      double p = z + r.zeta, m = z - r.zeta;
      double a = p / (r.z0 * r.z0 + p * p) - m / (r.z0 * r.z0 + m * m);
      return C * a / (2.0 * r.zeta);
    }
    case RootBranch::confluent: {
      double q = r.z1 * r.z1 + z * z;
      return C * (r.z1 * r.z1 - z * z) / (q * q);
    }
  }
  return 0.0;
}

std::complex<double> unified_f(double z, const EffectiveWidths& w, const SaturationState& sat,
                               const StrongField& strong, const ProbeField& probe) {
  double C = common_coeff(sat, strong, probe) * f_numerator(sat, w.sigma);
  return C / denom(z, w, strong.G);
}

double F_bennett(double z, const EffectiveWidths& w, const RootPair& r,
                 const SaturationState& sat, const AtomicRates& rates,
                 const StrongField& strong, const ProbeField& probe) {
  double C = common_coeff(sat, strong, probe) * F_numerator(rates);
  switch (r.branch) {
    case RootBranch::real: {
      double a = (r.z1 - w.gamma_pm) * r.z1 / (r.z1 * r.z1 + z * z) -
                 (r.z2 - w.gamma_pm) * r.z2 / (r.z2 * r.z2 + z * z);
      return C * a / (r.z1 - r.z2);
    }
    case RootBranch::complex_pair: {
      double p = z + r.zeta, m = z - r.zeta;
      double lp = 1.0 / (r.z0 * r.z0 + p * p);
      double lm = 1.0 / (r.z0 * r.z0 + m * m);
      double s = (w.gamma0 - w.gamma_pm) / (w.gamma0 + w.gamma_pm);
      return C * 0.5 * r.z0 * (lp + lm - (s / r.zeta) * (p * lp - m * lm));
    }
    case RootBranch::confluent: {
      double q = r.z1 * r.z1 + z * z;
      return C * (w.gamma_pm * (r.z1 * r.z1 - z * z) + 2.0 * r.z1 * z * z) / (q * q);
    }
  }
  return 0.0;
}

std::complex<double> unified_F(double z, const EffectiveWidths& w, const SaturationState& sat,
                               const AtomicRates& rates, const StrongField& strong,
                               const ProbeField& probe) {
  double C = common_coeff(sat, strong, probe) * F_numerator(rates);
  return C * cplx(w.gamma_pm, z) / denom(z, w, strong.G);
}

CenterAmplitudes amplitudes_at_center(const EffectiveWidths& w, const RootPair& r,
                                      const SaturationState& sat, const AtomicRates& rates,
                                      const StrongField& strong, const ProbeField& probe) {
  if (r.branch == RootBranch::complex_pair)
    throw BranchMismatch("amplitudes_at_center: center formulas assume real roots");
  double kr = probe.k_mu / strong.k;
  double sq = std::sqrt(1.0 + sat.ae);
  double G2 = strong.G * strong.G;
  double z1z2 = r.z1 * r.z2;
  CenterAmplitudes c;
  c.f0 = kr * ((1.0 - w.sigma * sq) / sq) * G2 / z1z2;
  c.F0_plus_f0 = kr * G2 * w.gamma_pm / (z1z2 * sq) *
                 (2.0 * F_numerator(rates) + (1.0 - w.sigma * sq) / w.gamma_pm);
  c.ae_eff = G2 / (w.gamma0 * w.gamma_pm);
  c.ae_ratio = sat.tau_sq * w.gamma0 * w.gamma_pm;
  return c;
}

SeriesRoots series_roots(const EffectiveWidths& w, const SaturationState& sat,
                         const AtomicRates& /*rates*/, const StrongField& strong,
                         const ProbeField& probe) {
  double kr = probe.k_mu / strong.k;
  double one_quantum = w.gamma0 - sat.gamma_B * kr;
  double two_quantum = w.gamma_pm - sat.gamma_B * (kr + w.sigma);
  double G2 = strong.G * strong.G;
  double den = sat.gamma_B + one_quantum - two_quantum;
  SeriesRoots s;
  s.z1 = one_quantum + sat.gamma_B * kr - G2 / den;
  s.z2 = two_quantum + sat.gamma_B * (kr - 1.0) + G2 / den;
  // Validity: one-quantum dominance, near-collinear probe, and a burn time
  // long against the oscillation period (all with a 10x margin).
  double Gt2 = sat.Gamma * sat.Gamma * sat.tau_sq;
  s.preconditions_ok = (sat.Gamma + one_quantum >= 10.0 * two_quantum) &&
                       (std::abs(kr - 1.0) <= 0.1) && (Gt2 >= 10.0);
  return s;
}

LineshapeSample lineshape(double Omega_mu, const Config& cfg, const TransitionBundle& bundle) {
  require_plus_geometry(bundle, "lineshape");
  const AtomicRates& rates = cfg.rates;
  SaturationState sat = saturation(rates, cfg.strong);
  int sigma = sigma_of(cfg.probe.direction);
  double kr = cfg.probe.k_mu / cfg.strong.k;
  double G = cfg.strong.G;

  LineshapeSample out;
  out.z = Omega_mu - sigma * kr * cfg.strong.Omega;
  out.population_term =
      cfg.ensemble.population(bundle.probed) - cfg.ensemble.population(bundle.partner);

  bool off_axis = sigma < 0 && cfg.probe.k_mu < cfg.strong.k;
  if (off_axis) {
    if (sat.ae > kOffAxisAeLimit)
      throw OffAxisSaturationTooLarge(
          "lineshape: the antiparallel k_mu < k path linearizes the saturation and is kept "
          "only for ae <= 0.3; ae = " +
          std::to_string(sat.ae));
    Level other = strong_partner_of(bundle.probed);
    double one_quantum = rates.transition_width(bundle.partner, bundle.probed);
    double two_quantum = rates.transition_width(bundle.partner, other);
    // Unsaturated widths: the Bennett image of the hole is compressed by
    // k_mu/k and the one-quantum line picks up the complementary share.
    double g0 = one_quantum + sat.Gamma * kr;
    double gm = two_quantum * kr + (1.0 - kr) * one_quantum;
    cplx D = cplx(g0, out.z) * cplx(gm, out.z);
    double C = kr * 2.0 * G * G;
    out.F = (C * F_numerator(rates) * cplx(gm, out.z) / D).real();
    out.f = (C * kr / D).real();
  } else {
    EffectiveWidths w = effective_widths(rates, cfg.strong, cfg.probe, sat, bundle);
    RootPair r = roots(w, G);
    out.F = F_bennett(out.z, w, r, sat, rates, cfg.strong, cfg.probe);
    out.f = f_interference(out.z, w, r, sat, cfg.strong, cfg.probe);
  }

  // The probed level feeds a lower partner radiatively, so the partner rides
  // the same Bennett structure scaled by the branch share.
  if (bundle.partner_below) {
    double feed = rates.branch_rate(bundle.probed, bundle.partner);
    if (feed != 0.0) out.F *= 1.0 - feed / rates.level_width(bundle.partner);
  }

  double k_env = cfg.envelope == EnvelopeWavenumber::probe_k ? cfg.probe.k_mu : cfg.strong.k;
  double arg = Omega_mu / (cfg.probe.k_mu * cfg.ensemble.v_bar);
  out.gaussian = std::sqrt(M_PI) / (k_env * cfg.ensemble.v_bar) * std::exp(-arg * arg);

  double delta_N =
      cfg.ensemble.population(Level::m) - cfg.ensemble.population(Level::n);
  double scale = 2.0 * cfg.prefactor * cfg.probe.G_mu * cfg.probe.G_mu;
  out.total = scale * out.gaussian * (out.population_term + delta_N * (out.F + out.f));
  return out;
}

StandingWaveSample standing_wave(double Omega_mu, const Config& cfg,
                                 const TransitionBundle& bundle) {
  Config cp = cfg;
  cp.probe.direction = Direction::parallel;
  Config ca = cfg;
  ca.probe.direction = Direction::antiparallel;

  StandingWaveSample s;
  s.parallel = lineshape(Omega_mu, cp, bundle);
  s.antiparallel = lineshape(Omega_mu, ca, bundle);

  double scale = 2.0 * cfg.prefactor * cfg.probe.G_mu * cfg.probe.G_mu;
  double static_part = scale * s.parallel.gaussian * s.parallel.population_term;
  s.total = s.parallel.total + s.antiparallel.total - static_part;

  SaturationState sat = saturation(cfg.rates, cfg.strong);
  EffectiveWidths wp = effective_widths(cfg.rates, cp.strong, cp.probe, sat, bundle);
  s.overlap_warning = std::abs(cfg.strong.Omega) <= std::max(wp.gamma0, wp.gamma_pm);
  return s;
}

double normalized_f_real(double x, double R) {
  if (!(R >= 1.0)) throw RatioOutOfRange("normalized_f_real: root ratio must be >= 1");
  return (1.0 / (cplx(1.0, x) * cplx(1.0 / R, x))).real();
}

double normalized_f_complex(double x, double h) {
  if (!(h >= 0.0 && h <= kSqrt3 * (1.0 + 1e-12)))
    throw RatioOutOfRange("normalized_f_complex: zeta/z0 must lie in [0, sqrt(3)]");
  cplx u(1.0, x);
  return ((1.0 + h * h) / (u * u + h * h)).real();
}

double normalized_F_real(double x, double s_factor, double root_ratio) {
  if (!(std::abs(s_factor) <= 1.0))
    throw FactorOutOfRange("normalized_F_real: s must lie in [-1, 1]");
  if (!(root_ratio >= 1.0))
    throw RatioOutOfRange("normalized_F_real: root ratio must be >= 1");
  double d = (root_ratio - 1.0) / (root_ratio + 1.0);
  return (2.0 * cplx(1.0 - s_factor, x) / (cplx(1.0 + d, x) * cplx(1.0 - d, x))).real();
}

double normalized_F_complex(double x, double c_factor, double h) {
  if (!(std::abs(c_factor) <= 1.0))
    throw FactorOutOfRange("normalized_F_complex: factor must lie in [-1, 1]");
  if (!(h >= 0.0 && h <= kSqrt3 * (1.0 + 1e-12)))
    throw RatioOutOfRange("normalized_F_complex: zeta/z0 must lie in [0, sqrt(3)]");
  return (2.0 * cplx(1.0 - c_factor, x) / (cplx(1.0, x + h) * cplx(1.0, x - h))).real();
}

double combined_factor(const EffectiveWidths& w, const SaturationState& sat,
                       const AtomicRates& rates) {
  double Gm = rates.level_width(Level::m);
  double branching = 1.0 - rates.branch_rate(Level::m, Level::n) / Gm;
  if (branching == 0.0)
    throw FactorOutOfRange(
        "combined_factor: gamma_mn = Gamma_m removes the Bennett term and with it the "
        "normalization the combined factor is defined against");
  double sum = w.gamma0 + w.gamma_pm;
  double s = (w.gamma0 - w.gamma_pm) / sum;
  double Gn = rates.level_width(Level::n);
  return s - (Gn / sum) / branching * (1.0 - w.sigma * std::sqrt(1.0 + sat.ae));
}

}  // namespace nies
