#include "nies/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "nies/doppler.hpp"
#include "nies/generation.hpp"
#include "nies/oracle.hpp"

namespace nies {

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = a + (b - a) * i / (n - 1);
  return g;
}

// Index-parallel map; the first exception wins and is rethrown after join.
template <class Fn>
void parallel_rows(int n, Fn&& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  unsigned nt = std::min<unsigned>(hw ? hw : 1, static_cast<unsigned>(n));
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::exception_ptr eptr;
  auto worker = [&] {
    while (!stop.load(std::memory_order_relaxed)) {
      int i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu);
        if (!eptr) eptr = std::current_exception();
        stop.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (eptr) std::rethrow_exception(eptr);
}

double contribution_scale(const Config& cfg, double gaussian) {
  return 2.0 * cfg.prefactor * cfg.probe.G_mu * cfg.probe.G_mu * gaussian;
}

// The published generation curves: three-level scheme with a slow upper
// probe level, strong detuning far above the homogeneous widths but far
// inside the Doppler width.
ParsedConfig generation_preset() {
  ParsedConfig pc;
  Config& c = pc.config;
  c.rates.level = {{Level::m, 0.04}, {Level::n, 1.0}, {Level::g, 0.02}};
  c.rates.pair[LevelPair(Level::n, Level::m)] = 0.52;
  c.rates.pair[LevelPair(Level::g, Level::n)] = 0.51;
  c.rates.pair[LevelPair(Level::g, Level::m)] = 0.03;
  c.strong = StrongField{0.15, 30.0, 1.0};
  c.probe.k_mu = 1.0;
  c.ensemble.v_bar = 3000.0;
  c.ensemble.N = {{Level::m, 1.5}, {Level::n, 1.0}, {Level::g, 3.0}};
  pc.resonator.delta_omega_r = 0.2;
  pc.resonator.l_over_lr = 1.0;
  pc.resonator.Delta_N = 0.8;
  pc.transition = TransitionSelector::gn;
  return pc;
}

}  // namespace

ScanTable run_scan(const ScanRequest& req, const ParsedConfig& pc) {
  if (req.mode == ScanMode::figure) return figure_table(req.figure);
  if (req.points < 2) throw BadScanRequest("points must be >= 2");
  if (!(req.from < req.to)) throw BadScanRequest("scan start must be below stop");

  const Config& cfg = pc.config;
  const TransitionBundle bundle = substitute(pc.transition, base_bundle());
  const double us = pc.scan.unit_scale;
  const int n = req.points;
  const std::vector<double> grid = linspace(req.from, req.to, n);

  ScanTable t;
  t.rows.assign(static_cast<size_t>(n), {});

  switch (req.mode) {
    case ScanMode::lineshape: {
      t.columns = {"Omega_mu", "z", "F", "f", "population_term", "total"};
      parallel_rows(n, [&](int i) {
        const double Om = grid[static_cast<size_t>(i)];
        const LineshapeSample s = lineshape(Om, cfg, bundle);
        const double scale = contribution_scale(cfg, s.gaussian);
        t.rows[static_cast<size_t>(i)] = {us * Om,       us * s.z,
                                          scale * s.F,   scale * s.f,
                                          scale * s.population_term, s.total};
      });
      break;
    }
    case ScanMode::standing_wave: {
      t.columns = {"Omega_mu", "z", "F", "f", "population_term", "total"};
      parallel_rows(n, [&](int i) {
        const double Om = grid[static_cast<size_t>(i)];
        const StandingWaveSample sw = standing_wave(Om, cfg, bundle);
        // Both travelling components share the Gaussian envelope; the z
        // column refers to the parallel one.
        const double scale = contribution_scale(cfg, sw.parallel.gaussian);
        t.rows[static_cast<size_t>(i)] = {
            us * Om,
            us * sw.parallel.z,
            scale * (sw.parallel.F + sw.antiparallel.F),
            scale * (sw.parallel.f + sw.antiparallel.f),
            scale * sw.parallel.population_term,
            sw.total};
      });
      break;
    }
    case ScanMode::oracle_compare: {
      t.columns = {"Omega_mu", "z", "F", "f", "population_term", "total", "oracle", "rel_err"};
      std::vector<double> closed(static_cast<size_t>(n)), reference(static_cast<size_t>(n));
      const QuadratureSpec spec;
      parallel_rows(n, [&](int i) {
        const double Om = grid[static_cast<size_t>(i)];
        const LineshapeSample s = lineshape(Om, cfg, bundle);
        const double scale = contribution_scale(cfg, s.gaussian);
        const AveragedKernel av = average_lineshape(Om, cfg, spec, bundle);
        closed[static_cast<size_t>(i)] = s.total;
        reference[static_cast<size_t>(i)] = av.total;
        t.rows[static_cast<size_t>(i)] = {us * Om,       us * s.z,
                                          scale * s.F,   scale * s.f,
                                          scale * s.population_term, s.total,
                                          av.total,      0.0};
      });
      double floor = 0.0;
      for (double r : reference) floor = std::max(floor, std::abs(r));
      const CompareReport rep = compare(grid, closed, reference, 1e-3 * floor);
      for (int i = 0; i < n; ++i)
        t.rows[static_cast<size_t>(i)][7] = rep.table[static_cast<size_t>(i)].rel_err;
      t.max_rel_err = rep.max_rel_err;
      t.arg_max = us * rep.arg_max;
      t.gate_failed = rep.max_rel_err > req.gate;
      break;
    }
    case ScanMode::generation: {
      if (!(pc.resonator.Delta_N > 0.0))
        throw BadScanRequest("generation scan needs [resonator] Delta_N > 0");
      t.columns = {"Omega_mu", "power", "alpha", "I_minus", "I_plus", "Omega_r"};
      parallel_rows(n, [&](int i) {
        const double Om = grid[static_cast<size_t>(i)];
        const GenerationPoint g = generation_point(Om, cfg, pc.resonator);
        t.rows[static_cast<size_t>(i)] = {us * Om,     g.power,  g.alpha,
                                          g.I_minus,   g.I_plus, us * g.Omega_r_of_Omega_mu};
      });
      break;
    }
    case ScanMode::figure:
      break;  // handled above
  }
  return t;
}

ScanTable figure_table(const std::string& name) {
  ScanTable t;
  if (name == "fig2") {
    t.columns = {"x", "f_R5", "f_R2p5", "f_R1"};
    for (double x : linspace(-4.0, 4.0, 401))
      t.rows.push_back({x, normalized_f_real(x, 5.0), normalized_f_real(x, 2.5),
                        normalized_f_real(x, 1.0)});
  } else if (name == "fig3") {
    t.columns = {"x", "f_h0", "f_h1", "f_hsqrt3"};
    const double h3 = std::sqrt(3.0);
    for (double x : linspace(-4.0, 4.0, 401))
      t.rows.push_back({x, normalized_f_complex(x, 0.0), normalized_f_complex(x, 1.0),
                        normalized_f_complex(x, h3)});
  } else if (name == "fig4") {
    t.columns = {"x", "F_R5", "F_R2p5", "F_R1"};
    for (double x : linspace(-4.0, 4.0, 401))
      t.rows.push_back({x, normalized_F_real(x, 1.0, 5.0), normalized_F_real(x, 1.0, 2.5),
                        normalized_F_real(x, 1.0, 1.0)});
  } else if (name == "fig5") {
    t.columns = {"x", "F_cm1", "F_c0", "F_cp1"};
    for (double x : linspace(-4.0, 4.0, 401))
      t.rows.push_back({x, normalized_F_complex(x, -1.0, 1.0), normalized_F_complex(x, 0.0, 1.0),
                        normalized_F_complex(x, 1.0, 1.0)});
  } else if (name == "fig6") {
    const ParsedConfig pc = generation_preset();
    t.columns = {"Omega_mu", "power", "alpha", "I_minus", "I_plus"};
    for (double Om : linspace(-60.0, 60.0, 601)) {
      const GenerationPoint g = generation_point(Om, pc.config, pc.resonator);
      t.rows.push_back({Om, g.power, g.alpha, g.I_minus, g.I_plus});
    }
  } else if (name == "fig7") {
    const ParsedConfig pc = generation_preset();
    t.columns = {"Omega_mu", "Omega_r"};
    for (double Om : linspace(-60.0, 60.0, 601)) {
      const GenerationPoint g = generation_point(Om, pc.config, pc.resonator);
      t.rows.push_back({Om, g.Omega_r_of_Omega_mu});
    }
  } else {
    throw UnknownFigure("unknown figure '" + name + "' (known: fig2 fig3 fig4 fig5 fig6 fig7)");
  }
  return t;
}

std::string render_csv(const ScanTable& t) {
  std::string out;
  for (size_t j = 0; j < t.columns.size(); ++j) {
    if (j) out += ',';
    out += t.columns[j];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += g17(row[j]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const ScanTable& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (size_t j = 0; j < row.size(); ++j) obj[t.columns[j]] = row[j];
    rows.push_back(std::move(obj));
  }
  return rows.dump(2) + "\n";
}

bool write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  return static_cast<bool>(out);
}

}  // namespace nies
