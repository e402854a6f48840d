#include "nies/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

namespace nies {

namespace {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1].
constexpr int kPts = 15;
constexpr double kNode[kPts] = {
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

constexpr double kWeightK[kPts] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

// Gauss-7 weights attached to the odd-index Kronrod nodes.
constexpr double kWeightG[7] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
    0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

struct Panel {
  double a, b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);

  double fv[kPts];
  for (int i = 0; i < kPts; ++i) fv[i] = f(mid + hw * kNode[i]);

  double resk = 0.0, resg = 0.0, resabs = 0.0;
  for (int i = 0; i < kPts; ++i) {
    resk += kWeightK[i] * fv[i];
    resabs += kWeightK[i] * std::fabs(fv[i]);
  }
  for (int i = 0; i < 7; ++i) resg += kWeightG[i] * fv[2 * i + 1];

  const double reskh = 0.5 * resk;
  double resasc = 0.0;
  for (int i = 0; i < kPts; ++i) resasc += kWeightK[i] * std::fabs(fv[i] - reskh);

  resasc *= hw;
  double err = std::fabs((resk - resg) * hw);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps_floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs * hw;
  err = std::max(err, eps_floor);

  return Panel{a, b, resk * hw, err};
}

}  // namespace

Estimate integrate(const std::function<double(double)>& f, double a, double b,
                   const QuadratureSpec& spec, const std::vector<double>& seeds) {
  std::vector<double> edges{a, b};
  for (double s : seeds)
    if (s > a && s < b) edges.push_back(s);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [&](double x, double y) { return (y - x) < 1e-14 * (b - a); }),
              edges.end());

  std::priority_queue<Panel> queue;
  double total = 0.0, total_err = 0.0;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = evaluate_panel(f, edges[i], edges[i + 1]);
    total += p.value;
    total_err += p.error;
    queue.push(p);
  }

  int splits = 0;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) {
    if (splits >= spec.max_subdivisions)
      throw ToleranceNotMet("adaptive quadrature: error " + std::to_string(total_err) +
                            " above tolerance after " + std::to_string(splits) +
                            " subdivisions");
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++splits;
  }
  return Estimate{total, total_err};
}

Estimate maxwell_average(const std::function<double(double)>& f, const Ensemble& ens,
                         const QuadratureSpec& spec, const std::vector<double>& seeds) {
  const double cut = std::max(spec.v_cut, 4.0) * ens.v_bar;
  auto weighted = [&](double v) { return f(v) * ens.maxwell(v); };
  return integrate(weighted, -cut, cut, spec, seeds);
}

namespace {

std::vector<double> collinear_seeds(double Omega_mu, const Config& cfg) {
  const double k = cfg.strong.k;
  const double kmu = cfg.probe.k_mu;
  const int sig = sigma_of(cfg.probe.direction);
  std::vector<double> seeds;
  seeds.push_back(cfg.strong.Omega / k);             // hole in the velocity distribution
  seeds.push_back(Omega_mu / (sig * kmu));           // probe resonance
  const double k2 = sig * kmu + k;                   // two-quantum resonance
  if (std::fabs(k2) > 1e-12 * k)
    seeds.push_back((Omega_mu + cfg.strong.Omega) / k2);
  return seeds;
}

struct ComponentSplit {
  Estimate pop, coh, emit;
};

}  // namespace

AveragedKernel average_lineshape(double Omega_mu, const Config& cfg,
                                 const QuadratureSpec& spec, const TransitionBundle& bundle) {
  const SaturationState sat = saturation(cfg.rates, cfg.strong);
  ProbeField probe = cfg.probe;
  probe.Omega_mu = Omega_mu;
  const int sig = sigma_of(probe.direction);
  const double Nm = cfg.ensemble.population(Level::m);
  const double Nn = cfg.ensemble.population(Level::n);
  const double Np = cfg.ensemble.population(bundle.partner);

  auto sample = [&](double v) {
    const double op = cfg.strong.Omega - cfg.strong.k * v;
    const double omp = Omega_mu - sig * probe.k_mu * v;
    return kernel_eval(op, omp, cfg.rates, cfg.strong, probe, sat, Nm, Nn, Np,
                       cfg.prefactor, bundle);
  };
  const auto seeds = collinear_seeds(Omega_mu, cfg);

  Estimate pop = maxwell_average([&](double v) { return sample(v).pop_part; },
                                 cfg.ensemble, spec, seeds);
  Estimate coh = maxwell_average([&](double v) { return sample(v).coh_part; },
                                 cfg.ensemble, spec, seeds);
  Estimate emit = maxwell_average([&](double v) { return sample(v).emission_only; },
                                  cfg.ensemble, spec, seeds);

  AveragedKernel out;
  out.pop_part = pop.value;
  out.coh_part = coh.value;
  out.total = pop.value + coh.value;
  out.emission_only = emit.value;
  out.error = std::max({pop.error, coh.error, emit.error});
  return out;
}

AveragedKernel average_lineshape_angle(double Omega_mu, const Config& cfg, double theta,
                                       const QuadratureSpec& spec,
                                       const TransitionBundle& bundle) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  if (std::fabs(s) < 1e-12) {
    Config axial = cfg;
    axial.probe.direction = (c >= 0.0) ? Direction::parallel : Direction::antiparallel;
    return average_lineshape(Omega_mu, axial, spec, bundle);
  }

  const SaturationState sat = saturation(cfg.rates, cfg.strong);
  ProbeField probe = cfg.probe;
  probe.Omega_mu = Omega_mu;
  const double kmu = probe.k_mu;
  const double Nm = cfg.ensemble.population(Level::m);
  const double Nn = cfg.ensemble.population(Level::n);
  const double Np = cfg.ensemble.population(bundle.partner);

  // Inner averages run at fixed v over the transverse component u; the probe
  // Doppler shift mixes both components while the strong field sees only v.
  QuadratureSpec inner_spec = spec;
  inner_spec.rel_tol = std::max(spec.rel_tol * 0.1, 1e-12);

  auto averaged_at_v = [&](double v) {
    const double op = cfg.strong.Omega - cfg.strong.k * v;
    auto inner = [&](int comp) {
      return maxwell_average(
          [&](double u) {
            const double omp = Omega_mu - kmu * (v * c + u * s);
            const KernelSample ks = kernel_eval(op, omp, cfg.rates, cfg.strong, probe, sat,
                                                Nm, Nn, Np, cfg.prefactor, bundle);
            return comp == 0 ? ks.pop_part : (comp == 1 ? ks.coh_part : ks.emission_only);
          },
          cfg.ensemble, inner_spec,
          {(Omega_mu / kmu - v * c) / s});  // u with the probe on resonance
    };
    return std::array<double, 3>{inner(0).value, inner(1).value, inner(2).value};
  };

  const std::vector<double> seeds{cfg.strong.Omega / cfg.strong.k,
                                  (std::fabs(c) > 1e-12) ? Omega_mu / (kmu * c) : 0.0};
  Estimate pop = maxwell_average([&](double v) { return averaged_at_v(v)[0]; },
                                 cfg.ensemble, spec, seeds);
  Estimate coh = maxwell_average([&](double v) { return averaged_at_v(v)[1]; },
                                 cfg.ensemble, spec, seeds);
  Estimate emit = maxwell_average([&](double v) { return averaged_at_v(v)[2]; },
                                  cfg.ensemble, spec, seeds);

  AveragedKernel out;
  out.pop_part = pop.value;
  out.coh_part = coh.value;
  out.total = pop.value + coh.value;
  out.emission_only = emit.value;
  out.error = std::max({pop.error, coh.error, emit.error});
  return out;
}

CompareReport compare(const std::vector<double>& grid, const std::vector<double>& closed,
                      const std::vector<double>& reference, double floor_scale) {
  if (grid.size() != closed.size() || grid.size() != reference.size())
    throw GridMismatch("compare: scans have different lengths");

  CompareReport rep;
  double sup_ref = 0.0, sup_diff = 0.0;
  rep.table.reserve(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    PointDeviation d;
    d.x = grid[i];
    d.closed = closed[i];
    d.reference = reference[i];
    const double diff = std::fabs(closed[i] - reference[i]);
    sup_ref = std::max(sup_ref, std::fabs(reference[i]));
    sup_diff = std::max(sup_diff, diff);
    const bool under_floor =
        std::fabs(closed[i]) < floor_scale && std::fabs(reference[i]) < floor_scale;
    d.rel_err = under_floor ? 0.0 : diff / std::max(std::fabs(reference[i]), 1e-300);
    if (d.rel_err > rep.max_rel_err) {
      rep.max_rel_err = d.rel_err;
      rep.arg_max = grid[i];
    }
    rep.table.push_back(d);
  }
  rep.sup_rel_err = sup_ref > 0.0 ? sup_diff / sup_ref : 0.0;
  return rep;
}

}  // namespace nies
