#include "tailwave/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "tailwave/csv.hpp"
#include "tailwave/errors.hpp"
#include "tailwave/model.hpp"
#include "tailwave/tails.hpp"
#include "tailwave/verify.hpp"

#ifndef TAILWAVE_VERSION
#define TAILWAVE_VERSION "unknown"
#endif

namespace tailwave {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
  return dir;
}

void write_manifest(const std::string& dir, const std::string& command, const RunConfig* cfg,
                    json grid, double wall, const std::vector<std::string>& outputs, json extra = json::object()) {
  json m;
  m["command"] = command;
  m["version"] = TAILWAVE_VERSION;
  m["config_source"] = cfg ? cfg->source : "";
  m["config"] = cfg ? cfg->echo() : "";
  m["grid"] = std::move(grid);
  m["wall_time_s"] = wall;
  m["outputs"] = outputs;
  for (auto& [k, v] : extra.items()) m[k] = v;
  std::ofstream out(fs::path(dir) / "manifest.json");
  out << m.dump(2) << '\n';
}

void write_series(const std::string& path, const std::string& xname, const Series& s) {
  CsvWriter w(path, {xname, "re", "im", "abs"});
  for (std::size_t i = 0; i < s.x.size(); ++i)
    w.row({s.x[i], s.y[i].real(), s.y[i].imag(), std::abs(s.y[i])});
}

const std::vector<std::string> kAdsSummaryHeader = {"ell", "re_P0", "im_P0", "re_Q", "im_Q",
                                                    "energy_drift", "n", "cfl"};

std::vector<double> ads_summary_row(const AdsSummary& s) {
  return {static_cast<double>(s.ell), s.P0.real(), s.P0.imag(), s.Q.real(), s.Q.imag(),
          s.energy_drift, static_cast<double>(s.n), s.cfl};
}

double order_of(double coarse, double fine) { return std::log2(coarse / fine); }

ConvergenceRow make_row(const std::string& name, double d1, double d2, double scale) {
  ConvergenceRow r;
  r.observable = name;
  r.diff_coarse = d1;
  r.diff_fine = d2;
  r.saturated = d1 <= 1e-11 * std::max(scale, 1e-300) || d2 <= 1e-12 * std::max(scale, 1e-300);
  r.order = r.saturated ? std::nan("") : order_of(d1, d2);
  return r;
}

// Difference between two series at the abscissae they share, in the max norm
// or as a discrete L2 norm with measure dx (the coarse spacing).
double series_diff(const Series& coarse, const Series& fine, double x_lo, double x_hi, double* scale,
                   bool l2 = false) {
  double d = 0.0;
  std::size_t j = 0;
  const double dx = coarse.x.size() > 1 ? std::abs(coarse.x[1] - coarse.x[0]) : 1.0;
  for (std::size_t i = 0; i < coarse.x.size(); ++i) {
    const double x = coarse.x[i];
    if (x < x_lo || x > x_hi) continue;
    while (j < fine.x.size() && fine.x[j] < x - 1e-9 * std::max(1.0, std::abs(x))) ++j;
    if (j == fine.x.size()) break;
    if (std::abs(fine.x[j] - x) > 1e-9 * std::max(1.0, std::abs(x))) continue;
    const double e = std::abs(coarse.y[i] - fine.y[j]);
    if (l2) d += e * e * dx;
    else d = std::max(d, e);
    if (scale) *scale = std::max(*scale, std::abs(coarse.y[i]));
  }
  return l2 ? std::sqrt(d) : d;
}

// psi = R^p W along a slice.
Series slice_psi(const NullField& F, double T) {
  Series s = slice_W(F, T);
  for (std::size_t i = 0; i < s.x.size(); ++i) s.y[i] *= std::exp(F.p * std::log(s.x[i]));
  return s;
}

Series sorted(Series s) {
  std::vector<std::size_t> idx(s.x.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return s.x[a] < s.x[b]; });
  Series out;
  for (auto i : idx) {
    out.x.push_back(s.x[i]);
    out.y.push_back(s.y[i]);
  }
  return out;
}

ModelParams model_from_flags(const std::string& kind, double a, double q, double e, double qe, bool has_qe) {
  ModelParams P;
  P.kind = parse_kind(kind);
  if (P.kind == Kind::ISP) {
    P.a = a;
  } else if (has_qe) {
    P = ModelParams::csf(qe);
  } else {
    P.q = q;
    P.e = e;
  }
  return validate_params(P);
}

std::pair<double, double> parse_window(const std::string& text) {
  const auto pos = text.find(':');
  if (pos == std::string::npos) throw ConfigError("window must read lo:hi, got '" + text + "'");
  try {
    return {std::stod(text.substr(0, pos)), std::stod(text.substr(pos + 1))};
  } catch (const std::exception&) {
    throw ConfigError("window must read lo:hi, got '" + text + "'");
  }
}

std::string output_dir_override(const std::string& def) {
  if (const char* env = std::getenv("TAILWAVE_OUTPUT"); env && *env) return env;
  return def;
}

// ---- subcommands ----

int cmd_exponents(const std::string& kind, double a, double q, double e, double qe, bool has_qe, int lmax) {
  const ModelParams P = model_from_flags(kind, a, q, e, qe, has_qe);
  if (lmax < 0) throw OutOfRange("lmax must be >= 0");
  const ExponentTable t = exponent_table(P, lmax);
  std::cout << csv_line(std::vector<std::string>{"ell", "re_p", "im_p", "alpha"}) << '\n';
  for (int l = 0; l <= lmax; ++l)
    std::cout << csv_line(std::vector<double>{static_cast<double>(l), t.p[l].real(), t.p[l].imag(), t.alpha[l]})
              << '\n';
  return 0;
}

int cmd_evolve_ads(const std::string& config_path) {
  const auto t0 = Clock::now();
  const RunConfig cfg = load_config(config_path);
  const RunSettings run = cfg.run();
  AdsSummary s;
  const EvolveResult res = run_ads(cfg, &s);
  const std::string dir = prepare_dir(run.output_dir);

  {
    CsvWriter w((fs::path(dir) / "snapshots.csv").string(), {"T", "R", "re_W", "im_W", "re_Wdot", "im_Wdot"});
    for (const AdsState& st : res.snapshots) {
      const AdsMode& m = st.modes[0];
      for (int j = 0; j < m.W.grid.n; ++j)
        w.row({st.T, m.W.grid.node(j), m.W.values[j].real(), m.W.values[j].imag(), m.Wdot.values[j].real(),
               m.Wdot.values[j].imag()});
    }
  }
  {
    CsvWriter w((fs::path(dir) / "pseries.csv").string(), {"T", "re_P", "im_P"});
    const PSeries& ps = res.P[0];
    for (std::size_t i = 0; i < ps.T.size(); ++i) w.row({ps.T[i], ps.P[i].real(), ps.P[i].imag()});
  }
  {
    CsvWriter w((fs::path(dir) / "summary.csv").string(), kAdsSummaryHeader);
    w.row(ads_summary_row(s));
  }
  json grid = {{"n_r", s.n}, {"r_max", cfg.grid().r_max}, {"cfl", s.cfl}, {"dt", res.dt}, {"steps", res.steps}};
  write_manifest(dir, "evolve-ads", &cfg, grid, seconds_since(t0), {"snapshots.csv", "pseries.csv", "summary.csv"},
                 {{"energy_drift_field", s.energy_drift_field}});
  std::cout << csv_line(kAdsSummaryHeader) << '\n' << csv_line(ads_summary_row(s)) << '\n';
  return 0;
}

int cmd_evolve_null(const std::string& config_path) {
  const auto t0 = Clock::now();
  const RunConfig cfg = load_config(config_path);
  const RunSettings run = cfg.run();
  const NullSettings ns = cfg.null_settings();
  NullOptions opt;
  const bool slice = ns.domain.mode == NullMode::Compactified && run.t_end > -1.0 && run.t_end < 0.0;
  if (slice) opt.record_T = {run.t_end};
  NullSummary s;
  const NullField F = run_null(cfg, opt, &s);
  const std::string dir = prepare_dir(run.output_dir);
  std::vector<std::string> outputs;
  json extra = json::object();
  std::vector<std::string> header;
  std::vector<double> row;

  if (ns.domain.mode == NullMode::Compactified) {
    write_series((fs::path(dir) / "radiation.csv").string(), "u", sample_radiation(F));
    outputs.push_back("radiation.csv");
    if (slice) {
      const Series w = slice_W(F, run.t_end);
      CsvWriter cw((fs::path(dir) / "slice.csv").string(), {"R", "re_W", "im_W"});
      for (std::size_t i = 0; i < w.x.size(); ++i) cw.row({w.x[i], w.y[i].real(), w.y[i].imag()});
      outputs.push_back("slice.csv");
    }
    header = {"ell", "re_P0", "im_P0", "re_Q", "im_Q", "axis_max", "h"};
    row = {static_cast<double>(s.ell), s.P0.real(), s.P0.imag(), s.Q.real(), s.Q.imag(), s.axis_max, F.domain.h};
  } else {
    const Series raw = sample_radiation(F, RadiationProxy::Raw);
    const Series ext = sample_radiation(F, RadiationProxy::Extrapolated);
    const Series tl = sample_timelike(F, ns.r0);
    write_series((fs::path(dir) / "radiation.csv").string(), "u", ext);
    write_series((fs::path(dir) / "radiation_raw.csv").string(), "u", raw);
    write_series((fs::path(dir) / "timelike.csv").string(), "t", tl);
    outputs = {"radiation.csv", "radiation_raw.csv", "timelike.csv"};
    const auto wr = default_window(ext);
    const auto wt = default_window(tl);
    const TailFit fr = fit_power_law(ext, wr.first, wr.second);
    const TailFit ft = fit_power_law(tl, wt.first, wt.second);
    header = {"ell", "radiation_exponent", "radiation_phase_slope", "timelike_exponent", "timelike_phase_slope",
              "axis_max", "h"};
    row = {static_cast<double>(s.ell), fr.exponent, fr.phase_slope, ft.exponent, ft.phase_slope, s.axis_max,
           F.domain.h};
  }
  {
    CsvWriter w((fs::path(dir) / "summary.csv").string(), header);
    w.row(row);
    outputs.push_back("summary.csv");
  }
  json grid = {{"mode", ns.domain.mode == NullMode::Physical ? "physical" : "compactified"},
               {"h", ns.domain.h}, {"rows", F.rows}, {"cols", F.cols}};
  if (ns.domain.mode == NullMode::Physical) {
    grid["u0"] = ns.domain.u0;
    grid["u_max"] = ns.domain.u_max;
    grid["v_max"] = ns.domain.v_max;
  }
  write_manifest(dir, "evolve-null", &cfg, grid, seconds_since(t0), outputs, extra);
  std::cout << csv_line(header) << '\n' << csv_line(row) << '\n';
  return 0;
}

int cmd_tails(const std::string& input, const std::string& window, int ell, const std::string& series_kind,
              const std::string& kind, double a, double q, double e, double qe, bool has_qe) {
  const ModelParams P = model_from_flags(kind, a, q, e, qe, has_qe);
  const CsvTable t = read_csv(input);
  if (t.header.size() < 3) throw ConfigError("series file '" + input + "' needs columns x,re,im");
  const int ire = t.column("re"), iim = t.column("im");
  if (ire < 0 || iim < 0) throw ConfigError("series file '" + input + "' lacks re/im columns");
  Series s;
  for (auto& r : t.rows) {
    s.x.push_back(r[0]);
    s.y.push_back(cplx(r[ire], r[iim]));
  }
  std::string which = series_kind;
  if (which.empty()) which = t.header[0] == "t" ? "timelike" : "radiation";
  if (which != "radiation" && which != "timelike") throw ConfigError("series must be radiation or timelike");
  const auto w = window.empty() ? default_window(s) : parse_window(window);
  const TailFit fit = fit_power_law(s, w.first, w.second);
  const TailReport rep = which == "timelike" ? timelike_report(fit, P, ell) : radiation_report(fit, P, ell);
  const std::vector<std::string> header = {"series", "kind", "ell", "exponent", "predicted_exponent", "rel_error",
                                           "phase_slope", "predicted_phase_slope", "phase_rel_error", "residual",
                                           "re_amplitude", "im_amplitude", "x_lo", "x_hi", "n"};
  std::vector<std::string> cells = {which, kind_name(P.kind)};
  for (double v : {static_cast<double>(ell), fit.exponent, rep.predicted_exponent, rep.rel_error, fit.phase_slope,
                   rep.predicted_phase_slope, rep.phase_rel_error, fit.residual, fit.amplitude.real(),
                   fit.amplitude.imag(), fit.x_lo, fit.x_hi, static_cast<double>(fit.n)})
    cells.push_back(fmt_num(v));
  std::cout << csv_line(header) << '\n' << csv_line(cells) << '\n';
  std::ostringstream os;
  os.precision(6);
  os << "# " << which << " tail of " << input << " for " << P.describe() << ", ell = " << ell << '\n'
     << "# window [" << fit.x_lo << ", " << fit.x_hi << "] with " << fit.n << " samples\n"
     << "# exponent " << fit.exponent << " (predicted " << rep.predicted_exponent << ", relative error "
     << rep.rel_error << ")\n";
  if (P.kind == Kind::CSF)
    os << "# phase slope " << fit.phase_slope << " (predicted " << rep.predicted_phase_slope
       << ", relative error " << rep.phase_rel_error << ")\n";
  os << "# fit residual " << fit.residual << '\n';
  std::cout << os.str();
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& out_opt) {
  const auto t0 = Clock::now();
  std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
  const std::string dir = prepare_dir(output_dir_override(out_opt));
  bool all_pass = true;
  std::vector<std::string> outputs;
  json results = json::array();
  std::vector<SuiteResult> res;
  for (auto& n : names) res.push_back(run_suite(n, seed));
  for (auto& r : res) {
    const std::string file = "verify_" + r.name + ".csv";
    CsvWriter w((fs::path(dir) / file).string(), r.header);
    for (auto& row : r.rows) w.row(row);
    outputs.push_back(file);
    all_pass = all_pass && r.pass;
    results.push_back({{"suite", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  if (res.size() == 1) {
    std::cout << csv_line(res[0].header) << '\n';
    for (auto& row : res[0].rows) std::cout << csv_line(row) << '\n';
  }
  for (auto& r : res)
    std::cout << "# suite=" << r.name << " pass=" << (r.pass ? 1 : 0) << " seed=" << seed << " " << r.detail << '\n';
  write_manifest(dir, "verify", nullptr, json::object(), seconds_since(t0), outputs,
                 {{"seed", seed}, {"results", results}});
  return all_pass ? 0 : 3;
}

int cmd_sweep(const std::string& config_path, const std::string& param, const std::vector<std::string>& values,
              int jobs) {
  const auto t0 = Clock::now();
  const RunConfig base = load_config(config_path);
  const auto dot = param.find('.');
  if (dot == std::string::npos) throw ConfigError("sweep parameter must read section.key, got '" + param + "'");
  const std::string section = param.substr(0, dot), key = param.substr(dot + 1);
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  std::vector<RunConfig> cfgs;
  for (auto& v : values) {
    RunConfig c = base;
    c.set(section, key, v);
    c.model();  // validate before fanning out
    c.data();
    c.grid();
    cfgs.push_back(c);
  }
  std::vector<AdsSummary> out(cfgs.size());
  jobs = std::max(1, jobs);
  for (std::size_t start = 0; start < cfgs.size(); start += static_cast<std::size_t>(jobs)) {
    std::vector<std::future<AdsSummary>> fut;
    for (std::size_t i = start; i < std::min(cfgs.size(), start + static_cast<std::size_t>(jobs)); ++i)
      fut.push_back(std::async(std::launch::async, [&c = cfgs[i]] {
        AdsSummary s;
        run_ads(c, &s);
        return s;
      }));
    for (std::size_t i = 0; i < fut.size(); ++i) out[start + i] = fut[i].get();
  }
  const std::string dir = prepare_dir(base.run().output_dir);
  std::vector<std::string> header = {"value"};
  header.insert(header.end(), kAdsSummaryHeader.begin(), kAdsSummaryHeader.end());
  std::ofstream f(fs::path(dir) / "sweep.csv");
  f << csv_line(header) << '\n';
  std::cout << csv_line(header) << '\n';
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<std::string> cells = {values[i]};
    for (double v : ads_summary_row(out[i])) cells.push_back(fmt_num(v));
    f << csv_line(cells) << '\n';
    std::cout << csv_line(cells) << '\n';
  }
  write_manifest(dir, "sweep", &base, {{"n_r", base.grid().n_r}, {"r_max", base.grid().r_max}},
                 seconds_since(t0), {"sweep.csv"}, {{"param", param}, {"values", values}, {"jobs", jobs}});
  return 0;
}

int cmd_convergence(const std::string& config_path, const std::string& solver, int n) {
  const auto t0 = Clock::now();
  const RunConfig cfg = load_config(config_path);
  if (n <= 0) n = solver == "null" ? static_cast<int>(std::lround(1.0 / cfg.null_settings().domain.h)) : cfg.grid().n_r;
  const auto rows = convergence_study(cfg, solver, n);
  const std::string dir = prepare_dir(cfg.run().output_dir);
  const std::vector<std::string> header = {"observable", "order", "diff_coarse", "diff_fine", "status"};
  std::ofstream f(fs::path(dir) / "convergence.csv");
  f << csv_line(header) << '\n';
  std::cout << csv_line(header) << '\n';
  for (auto& r : rows) {
    const std::string line = csv_line(std::vector<std::string>{r.observable, fmt_num(r.order), fmt_num(r.diff_coarse),
                                                               fmt_num(r.diff_fine), r.saturated ? "saturated" : "ok"});
    f << line << '\n';
    std::cout << line << '\n';
  }
  write_manifest(dir, "convergence", &cfg, {{"solver", solver}, {"n", {n, 2 * n, 4 * n}}}, seconds_since(t0),
                 {"convergence.csv"});
  return 0;
}

}  // namespace

EvolveResult run_ads(const RunConfig& cfg, AdsSummary* summary) {
  const ModelParams P = validate_params(cfg.model());
  const GridSettings gs = cfg.grid();
  const RunSettings run = cfg.run();
  const DataFamily fam = cfg.data();
  const RadialGrid grid(gs.n_r, gs.r_max);
  const DataPair d = make_data(fam, grid);
  const EvolveResult res = evolve(make_state(P, {d}), run.t_end, gs.cfl, run.snapshot_stride);
  if (summary) {
    summary->ell = fam.ell;
    summary->P0 = res.P[0].P.back();
    summary->Q = compute_Q(summary->P0, P, fam.ell);
    summary->energy_drift = res.modified_energy_drift(0);
    summary->energy_drift_field = res.energy_drift(0);
    summary->n = gs.n_r;
    summary->cfl = gs.cfl;
  }
  return res;
}

NullField run_null(const RunConfig& cfg, const NullOptions& extra, NullSummary* summary) {
  const ModelParams P = validate_params(cfg.model());
  const DataFamily fam = cfg.data();
  const NullSettings ns = cfg.null_settings();
  NullOptions opt = extra;
  if (ns.domain.mode == NullMode::Physical) {
    opt.record_v.push_back(0.5 * ns.domain.v_max);
    opt.record_v.push_back(0.25 * ns.domain.v_max);
    const int k0 = static_cast<int>(std::floor(ns.r0 / ns.domain.h + 1e-9));
    opt.record_diagonals.push_back(k0);
    opt.record_diagonals.push_back(k0 + 1);
  }
  NullField F = evolve_null(make_profile(fam), ns.domain, P, fam.ell, opt);
  if (summary) {
    summary->ell = fam.ell;
    summary->axis_max = F.axis_max;
    if (ns.domain.mode == NullMode::Compactified) {
      summary->P0 = null_extract_P0(F);
      summary->Q = compute_Q(summary->P0, P, fam.ell);
    }
  }
  return F;
}

std::vector<ConvergenceRow> convergence_study(const RunConfig& cfg, const std::string& solver, int n) {
  if (n < 4) throw OutOfRange("convergence needs n >= 4");
  std::vector<ConvergenceRow> rows;
  if (solver == "ads") {
    std::vector<EvolveResult> res;
    std::vector<AdsSummary> sum(3);
    for (int k = 0; k < 3; ++k) {
      RunConfig c = cfg;
      c.set("grid", "n_r", std::to_string(n << k));
      c.set("run", "snapshot_stride", "0");
      res.push_back(run_ads(c, &sum[k]));
    }
    auto field = [&](int k) { return res[k].snapshots.back().modes[0].W.values; };
    // Coarse cell j covers fine cells 2j and 2j+1; L2 norm with measure R^{2 alpha + 1} dR.
    const double alpha = alpha_of(validate_params(cfg.model()), cfg.data().ell);
    auto restrict_diff = [&](const std::vector<cplx>& c, const std::vector<cplx>& f, double* scale) {
      const RadialGrid g(static_cast<int>(c.size()), cfg.grid().r_max);
      double d = 0.0;
      for (std::size_t j = 0; j < c.size(); ++j) {
        const double e = std::abs(c[j] - 0.5 * (f[2 * j] + f[2 * j + 1]));
        d += e * e * std::pow(g.node(static_cast<int>(j)), 2.0 * alpha + 1.0) * g.h();
        *scale = std::max(*scale, std::abs(c[j]));
      }
      return std::sqrt(d);
    };
    double scale = 0.0;
    const double f1 = restrict_diff(field(0), field(1), &scale);
    const double f2 = restrict_diff(field(1), field(2), &scale);
    rows.push_back(make_row("P0", std::abs(sum[0].P0 - sum[1].P0), std::abs(sum[1].P0 - sum[2].P0),
                            std::abs(sum[0].P0)));
    auto energy = [&](int k) { return res[k].energies[0].back().energy; };
    rows.push_back(make_row("energy", std::abs(energy(0) - energy(1)), std::abs(energy(1) - energy(2)),
                            std::abs(energy(0))));
    rows.push_back(make_row("field", f1, f2, scale));
  } else if (solver == "null") {
    if (cfg.null_settings().domain.mode != NullMode::Compactified)
      throw ConfigError("null convergence runs on the compactified lattice");
    const double T = -0.5;
    std::vector<NullField> F;
    std::vector<NullSummary> sum(3);
    for (int k = 0; k < 3; ++k) {
      RunConfig c = cfg;
      c.set("null", "h", "1/" + std::to_string(n << k));
      NullOptions opt;
      opt.record_T = {T};
      F.push_back(run_null(c, opt, &sum[k]));
    }
    rows.push_back(make_row("P0", std::abs(sum[0].P0 - sum[1].P0), std::abs(sum[1].P0 - sum[2].P0),
                            std::abs(sum[0].P0)));
    double scale = 0.0;
    std::vector<Series> rad, sl;
    for (auto& f : F) {
      rad.push_back(sorted(sample_radiation(f)));
      sl.push_back(slice_psi(f, T));
    }
    const double inf = std::numeric_limits<double>::infinity();
    const double r1 = series_diff(rad[0], rad[1], -inf, inf, &scale, false);
    const double r2 = series_diff(rad[1], rad[2], -inf, inf, &scale, false);
    rows.push_back(make_row("radiation", r1, r2, scale));
    scale = 0.0;
    const double s1 = series_diff(sl[0], sl[1], 0.0, inf, &scale, true);
    const double s2 = series_diff(sl[1], sl[2], 0.0, inf, &scale, true);
    rows.push_back(make_row("field", s1, s2, scale));
  } else {
    throw ConfigError("solver must be ads or null, got '" + solver + "'");
  }
  return rows;
}

int run_command(const std::vector<std::string>& args) {
  CLI::App app{"Late-time tails of charged and inverse-square wave equations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", TAILWAVE_VERSION);

  std::string kind = "isp", config, input, window, series_kind, suite = "all", out_dir = "out", solver = "ads",
              param, values_text;
  double a = 0.0, q = 0.0, e = 1.0, qe = 0.0;
  int lmax = 4, ell = 0, n = 0, jobs = 1;
  std::uint64_t seed = 1;

  auto add_model = [&](CLI::App* c) {
    c->add_option("--kind", kind, "isp or csf");
    c->add_option("--a", a, "inverse-square coupling");
    c->add_option("--q", q, "charge");
    c->add_option("--e", e, "background charge");
    c->add_option("--qe", qe, "charge product q e");
  };

  auto* exps = app.add_subcommand("exponents", "Print ell,re_p,im_p,alpha");
  add_model(exps);
  exps->add_option("--lmax", lmax, "largest ell")->capture_default_str();

  auto* ads = app.add_subcommand("evolve-ads", "Cauchy evolution on the compactified chart");
  ads->add_option("--config", config, "run configuration")->required();

  auto* nul = app.add_subcommand("evolve-null", "Double-null evolution");
  nul->add_option("--config", config, "run configuration")->required();

  auto* tls = app.add_subcommand("tails", "Fit a power-law tail to a series CSV");
  tls->add_option("--input", input, "series CSV with columns x,re,im[,abs]")->required();
  tls->add_option("--window", window, "fit window lo:hi (default: last decade less 5%)");
  tls->add_option("--expect-ell", ell, "mode number")->capture_default_str();
  tls->add_option("--series", series_kind, "radiation or timelike (default from the first column name)");
  add_model(tls);

  auto* ver = app.add_subcommand("verify", "Seeded property suites");
  ver->add_option("--suite", suite, "hardy, poincare, elliptic, energy or all")->capture_default_str();
  ver->add_option("--seed", seed, "ensemble seed")->capture_default_str();
  ver->add_option("--output", out_dir, "output directory")->capture_default_str();

  auto* swp = app.add_subcommand("sweep", "Cauchy runs over a list of parameter values");
  swp->add_option("--config", config, "base configuration")->required();
  swp->add_option("--param", param, "section.key to vary")->required();
  swp->add_option("--values", values_text, "comma-separated values")->required();
  swp->add_option("--jobs", jobs, "parallel workers")->capture_default_str();

  auto* cnv = app.add_subcommand("convergence", "Three-grid self-convergence orders");
  cnv->add_option("--config", config, "run configuration")->required();
  cnv->add_option("--solver", solver, "ads or null")->capture_default_str();
  cnv->add_option("--n", n, "coarsest resolution (default from the configuration)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::Success& s) {
    return app.exit(s);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return 1;
  }

  const bool has_qe = (exps->parsed() && exps->count("--qe") > 0) || (tls->parsed() && tls->count("--qe") > 0);
  try {
    if (exps->parsed()) return cmd_exponents(kind, a, q, e, qe, has_qe, lmax);
    if (ads->parsed()) return cmd_evolve_ads(config);
    if (nul->parsed()) return cmd_evolve_null(config);
    if (tls->parsed()) return cmd_tails(input, window, ell, series_kind, kind, a, q, e, qe, has_qe);
    if (ver->parsed()) return cmd_verify(suite, seed, out_dir);
    if (swp->parsed()) {
      std::vector<std::string> values;
      std::stringstream ss(values_text);
      for (std::string v; std::getline(ss, v, ',');)
        if (!v.empty()) values.push_back(v);
      return cmd_sweep(config, param, values, jobs);
    }
    if (cnv->parsed()) return cmd_convergence(config, solver, n);
  } catch (const ValidationError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  } catch (const NumericalError& err) {
    std::cerr << "numerical failure: " << err.what() << '\n';
    return 2;
  }
  return 1;
}

int run_command(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_command(args);
}

}  // namespace tailwave
