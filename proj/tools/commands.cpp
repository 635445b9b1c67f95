#include "commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "slicecalc/io.hpp"
#include "slicecalc/verify.hpp"

namespace slicecalc::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct Output {
  std::string path;
  std::string text;
};

void write_atomic(const Output& o) {
  const fs::path target(o.path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ParseError(o.path + ": cannot write");
    f << o.text;
    f.flush();
    if (!f) throw ParseError(o.path + ": write failed");
  }
  fs::rename(tmp, target);
}

std::string plot_path(const JobConfig& cfg) {
  if (!cfg.plot.empty()) return cfg.plot;
  if (cfg.out.empty()) return {};
  const fs::path p(cfg.out);
  return (p.parent_path() / (p.stem().string() + "_plot" + p.extension().string())).string();
}

double parse_chart(const std::string& text) {
  if (text.rfind("k=", 0) != 0) throw ParseError("chart: expected k=<real>, got '" + text + "'");
  std::size_t used = 0;
  double k = 0.0;
  try {
    k = std::stod(text.substr(2), &used);
  } catch (const std::exception&) {
    throw ParseError("chart: not a number: '" + text.substr(2) + "'");
  }
  if (used != text.size() - 2) throw ParseError("chart: not a number: '" + text.substr(2) + "'");
  return k;
}

ordered_json plane_json(const ImagUnit& plane) {
  ordered_json dirs = ordered_json::array();
  for (double x : plane.dirs()) dirs.push_back(x);
  return dirs;
}

ordered_json result_json(const CalculusResult& r, const std::string& route) {
  ordered_json j;
  j["value"] = operator_to_json(r.value);
  j["clearance"] = r.clearance;
  j["nodes"] = r.nodes;
  j["plane"] = plane_json(r.plane);
  j["route"] = route;
  return j;
}

std::vector<Output> cmd_spectrum(const JobConfig& cfg) {
  const CliffordMatrix t = parse_operator_file(cfg.input);
  const std::string method = cfg.method.empty() ? "exact" : cfg.method;
  if (method != "exact" && method != "scan" && method != "both") {
    throw ParseError("spectrum: --method must be exact, scan or both");
  }
  std::optional<SpectrumReport> exact;
  std::optional<SpectrumReport> scan;
  if (method != "scan") exact = s_spectrum_exact(t);
  if (method != "exact") scan = s_spectrum_scan(t, default_scan_options(t, cfg.step, cfg.tol));

  std::ostringstream csv;
  std::ostringstream plot;
  if (exact) {
    write_spectrum_csv(csv, *exact);
    write_plot_csv(plot, *exact);
  }
  if (scan) {
    std::ostringstream rows;
    write_spectrum_csv(rows, *scan);
    std::string text = rows.str();
    if (exact) text = text.substr(text.find('\n') + 1);  // one header
    csv << text;
    if (!exact) write_plot_csv(plot, *scan);
  }
  if (exact && scan) csv << "# hausdorff," << format_double(hausdorff_distance(*exact, *scan)) << '\n';

  std::vector<Output> outs{{cfg.out, csv.str()}};
  const std::string pp = plot_path(cfg);
  if (!pp.empty()) outs.push_back({pp, plot.str()});
  return outs;
}

std::vector<Output> cmd_resolvent(const JobConfig& cfg) {
  const CliffordMatrix t = parse_operator_file(cfg.input);
  if (cfg.s.empty()) throw ParseError("resolvent: --s is required");
  const Paravector s = Paravector::from_multivector(parse_multivector(cfg.s, t.n()));
  const std::string method = cfg.method.empty() ? "closed" : cfg.method;
  ordered_json j;
  j["s"] = to_string(s.to_multivector());
  j["method"] = method;
  if (method == "closed") {
    j["value"] = operator_to_json(s_resolvent(s, t));
    j["residual"] = resolvent_equation_residual(s, t);
  } else if (method == "series") {
    const SeriesResolvent r = s_resolvent_series(s, t, cfg.terms);
    j["value"] = operator_to_json(r.value);
    j["terms"] = cfg.terms;
    j["status"] = to_string(r.status);
    j["ratio"] = r.ratio;
  } else if (method == "left") {
    j["value"] = operator_to_json(left_resolvent_expansion(s, t, cfg.terms));
    j["terms"] = cfg.terms;
    j["ratio"] = left_expansion_ratio(s, t);
  } else {
    throw ParseError("resolvent: --method must be closed, series or left");
  }
  return {{cfg.out, j.dump(2) + "\n"}};
}

std::vector<Output> cmd_apply(const JobConfig& cfg) {
  const CliffordMatrix t = parse_operator_file(cfg.input);
  if (cfg.fn.empty()) throw ParseError("apply: --fn is required");
  if (cfg.nodes < 1) throw ParseError("apply: --nodes must be positive");
  if (cfg.margin < 0.0) throw ParseError("apply: --margin must be positive");
  const FunctionSpec spec = parse_function_spec(cfg.fn, t.n());
  const ImagUnit plane = parse_plane(cfg.plane, t.n());

  ordered_json j;
  if (!cfg.chart.empty()) {
    if (!spec.extended) {
      throw ParseError("apply: the chart route needs a function regular at infinity (ratpole or a Laurent literal)");
    }
    const double k = parse_chart(cfg.chart);
    const CliffordMatrix a = companion_operator(t, k);
    const SliceSeriesFunction phi = chart_transfer(*spec.extended, k);
    const SpectrumReport sa = s_spectrum_exact(a);
    const double margin = cfg.margin > 0.0 ? cfg.margin : default_margin(sa.norms.rep_norm);
    const Contour c = build_contour(sa, phi, plane, margin, cfg.nodes);
    j = result_json(f_of_T(phi, a, c), "chart");
    j["k"] = k;
  } else {
    const SpectrumReport st = s_spectrum_exact(t);
    const double margin = cfg.margin > 0.0 ? cfg.margin : default_margin(st.norms.rep_norm);
    if (spec.extended) {
      const Contour c = build_contour_at_infinity(st, *spec.extended, plane, margin, cfg.nodes);
      j = result_json(f_of_T_direct(*spec.extended, t, c), "direct");
    } else {
      const Contour c = build_contour(st, spec.f, plane, margin, cfg.nodes);
      j = result_json(f_of_T(spec.f, t, c), "bounded");
    }
  }
  return {{cfg.out, j.dump(2) + "\n"}};
}

int cmd_verify(const JobConfig& cfg, std::vector<Output>& outs) {
  const VerifyReport report = run_verify(cfg.suite, cfg.seed);
  outs.push_back({cfg.out, report_to_json(report).dump(2) + "\n"});
  return report.pass() ? kOk : kVerifyFailed;
}

}  // namespace

int run(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    std::vector<Output> outs;
    int code = kOk;
    if (cfg.subcommand == "spectrum") {
      outs = cmd_spectrum(cfg);
    } else if (cfg.subcommand == "resolvent") {
      outs = cmd_resolvent(cfg);
    } else if (cfg.subcommand == "apply") {
      outs = cmd_apply(cfg);
    } else if (cfg.subcommand == "verify") {
      code = cmd_verify(cfg, outs);
    } else {
      err << "unknown subcommand '" << cfg.subcommand << "'\n";
      return kUsage;
    }
    for (const auto& o : outs) {
      if (o.path.empty()) {
        out << o.text;
      } else {
        write_atomic(o);
      }
    }
    return code;
  } catch (const SpectrumHit& e) {
    err << "error: " << e.what() << '\n';
    return kSpectrumHit;
  } catch (const ContourError& e) {
    err << "error: " << e.what() << '\n';
    return kSpectrumHit;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"slicecalc: S-spectrum and slice functional calculus for Clifford operators"};
  app.require_subcommand(1);
  JobConfig cfg;

  auto common = [&](CLI::App* sub, bool input) {
    if (input) sub->add_option("--input", cfg.input, "operator JSON file")->required();
    sub->add_option("--out", cfg.out, "output file (stdout when omitted)");
  };

  auto* spectrum = app.add_subcommand("spectrum", "S-spectrum as CSV");
  common(spectrum, true);
  spectrum->add_option("--method", cfg.method, "exact|scan|both");
  spectrum->add_option("--step", cfg.step, "scan grid step (default rep_norm/100)");
  spectrum->add_option("--tol", cfg.tol, "scan singularity tolerance");
  spectrum->add_option("--plot", cfg.plot, "plane-point CSV (default <out>_plot.csv)");

  auto* resolvent = app.add_subcommand("resolvent", "S-resolvent operator at a paravector s");
  common(resolvent, true);
  resolvent->add_option("--s", cfg.s, "paravector, e.g. \"1 + 3 e1\"")->required();
  resolvent->add_option("--method", cfg.method, "closed|series|left");
  resolvent->add_option("--terms", cfg.terms, "series terms");

  auto* apply = app.add_subcommand("apply", "f(T) by the slice functional calculus");
  common(apply, true);
  apply->add_option("--fn", cfg.fn, "one|exp|sin|cos|geom|poly:m=<k>|ratpole:c=<x>[,m=<k>]|JSON")
      ->required();
  apply->add_option("--plane", cfg.plane, "e<i> or comma-separated direction");
  apply->add_option("--nodes", cfg.nodes, "quadrature nodes per circle");
  apply->add_option("--margin", cfg.margin, "contour margin (default 0.1 (1 + rep_norm))");
  apply->add_option("--chart", cfg.chart, "k=<real>: evaluate through A = (T - kI)^{-1}");

  auto* verify = app.add_subcommand("verify", "seeded identity checks");
  common(verify, false);
  verify->add_option("--suite", cfg.suite, "kernel|resolvent|spectrum|moments|planes|unbounded|all");
  verify->add_option("--seed", cfg.seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  return run(cfg, std::cout, std::cerr);
}

}  // namespace slicecalc::cli
