#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "nies/config_io.hpp"
#include "nies/oracle.hpp"
#include "nies/scan.hpp"

namespace {

using namespace nies;

constexpr const char* kColumnDoc =
    "Column order (CSV and JSON alike):\n"
    "  lineshape / standing_wave:\n"
    "      Omega_mu,z,F,f,population_term,total\n"
    "      F, f and population_term are scaled contributions, so each row\n"
    "      satisfies total = population_term + (N_m - N_n)*(F + f).\n"
    "  oracle_compare:\n"
    "      Omega_mu,z,F,f,population_term,total,oracle,rel_err\n"
    "  generation:\n"
    "      Omega_mu,power,alpha,I_minus,I_plus,Omega_r\n"
    "  figures: see the header row of each preset file.\n"
    "Frequency-valued columns are multiplied by [scan] unit_scale on output.\n";

int emit(const ScanTable& t, OutputFormat fmt, const std::string& out_path) {
  const std::string text = fmt == OutputFormat::csv ? render_csv(t) : render_json(t);
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return 0;
  }
  if (!write_text(out_path, text)) {
    std::fprintf(stderr, "cannot write '%s'\n", out_path.c_str());
    return 4;
  }
  return 0;
}

int report_config_errors(const ParsedConfig& pc, const std::string& path) {
  for (const ParseIssue& e : pc.errors) {
    if (e.line > 0)
      std::fprintf(stderr, "%s:%d: %s\n", path.c_str(), e.line, e.message.c_str());
    else
      std::fprintf(stderr, "%s: %s\n", path.c_str(), e.message.c_str());
  }
  return 2;
}

ScanMode mode_from(const std::string& s) {
  if (s == "lineshape") return ScanMode::lineshape;
  if (s == "standing_wave") return ScanMode::standing_wave;
  if (s == "generation") return ScanMode::generation;
  return ScanMode::oracle_compare;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nies-sim: interference effects in gas-atom spectra under a strong field"};
  app.footer(kColumnDoc);
  app.require_subcommand(1);

  std::string scan_cfg, scan_mode = "lineshape", scan_fmt = "csv", scan_out;
  double scan_from = 0.0, scan_to = 0.0;
  int scan_points = 0;
  CLI::App* scan = app.add_subcommand("scan", "Evaluate one scan mode over a detuning grid");
  scan->add_option("--config", scan_cfg, "config file")->required();
  scan->add_option("--mode", scan_mode, "lineshape|standing_wave|generation|oracle_compare")
      ->check(CLI::IsMember({"lineshape", "standing_wave", "generation", "oracle_compare"}));
  scan->add_option("--from", scan_from, "grid start (Omega_mu)")->required();
  scan->add_option("--to", scan_to, "grid stop (Omega_mu)")->required();
  scan->add_option("--points", scan_points, "grid size, >= 2")->required();
  scan->add_option("--format", scan_fmt, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  scan->add_option("--out", scan_out, "output path (default stdout)");

  std::string fig_name, fig_dir = ".";
  CLI::App* figure = app.add_subcommand("figure", "Write one canned curve family as CSV");
  figure->add_option("name", fig_name, "fig2|fig3|fig4|fig5|fig6|fig7")->required();
  figure->add_option("--out", fig_dir, "output directory (default .)");

  std::string cmp_cfg;
  double cmp_gate = 0.0;
  CLI::App* cmp = app.add_subcommand(
      "compare", "Gate the closed form against the numeric velocity average");
  cmp->add_option("--config", cmp_cfg, "config file; grid comes from its [scan] section")
      ->required();
  CLI::Option* gate_opt = cmp->add_option("--gate", cmp_gate, "max allowed relative deviation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (scan->parsed()) {
      const ParsedConfig pc = load_config(scan_cfg);
      if (!pc.ok()) return report_config_errors(pc, scan_cfg);
      ScanRequest req;
      req.mode = mode_from(scan_mode);
      req.from = scan_from;
      req.to = scan_to;
      req.points = scan_points;
      req.format = scan_fmt == "json" ? OutputFormat::json : OutputFormat::csv;
      req.out_path = scan_out;
      req.gate = pc.scan.gate;
      const ScanTable t = run_scan(req, pc);
      if (int rc = emit(t, req.format, req.out_path); rc != 0) return rc;
      if (req.mode == ScanMode::oracle_compare && t.gate_failed) {
        std::fprintf(stderr, "max rel_err %.3g at Omega_mu %.6g exceeds gate %.3g\n",
                     t.max_rel_err, t.arg_max, req.gate);
        return 3;
      }
      return 0;
    }

    if (figure->parsed()) {
      const ScanTable t = figure_table(fig_name);
      const std::string path = fig_dir + "/" + fig_name + ".csv";
      if (!write_text(path, render_csv(t))) {
        std::fprintf(stderr, "cannot write '%s'\n", path.c_str());
        return 4;
      }
      std::printf("%s\n", path.c_str());
      return 0;
    }

    if (cmp->parsed()) {
      const ParsedConfig pc = load_config(cmp_cfg);
      if (!pc.ok()) return report_config_errors(pc, cmp_cfg);
      ScanRequest req;
      req.mode = ScanMode::oracle_compare;
      req.from = pc.scan.from;
      req.to = pc.scan.to;
      req.points = pc.scan.points;
      req.gate = gate_opt->count() > 0 ? cmp_gate : pc.scan.gate;
      const ScanTable t = run_scan(req, pc);
      std::printf("points = %d\n", req.points);
      std::printf("max_rel_err = %.17g at Omega_mu = %.17g\n", t.max_rel_err, t.arg_max);
      std::printf("gate = %.17g: %s\n", req.gate, t.gate_failed ? "FAIL" : "PASS");
      return t.gate_failed ? 3 : 0;
    }
  } catch (const IoError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 4;
  } catch (const ToleranceNotMet& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
