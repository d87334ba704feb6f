// Command-line front end: build, verify and sample the constructions.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "moutard/moutard.hpp"

using namespace moutard;

namespace {

struct Options {
  std::string seed;
  std::string out;
  bool csv = false;
  std::string lambda = "0.8,0.6";
  double t = 0.0;
  std::string grid = "-3,3,-3,3,61";
  double tol = 1e-2;
  std::string field = "u";
  bool conjugate = false;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> split_numbers(const std::string& s, std::size_t count, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size())
        throw InputError("");
    } catch (const std::exception&) {
      throw InputError(std::string("bad number in ") + what + ": '" + item + "'");
    }
  }
  if (v.size() != count)
    throw InputError(std::string(what) + " needs " + std::to_string(count) + " comma-separated values");
  return v;
}

std::complex<double> parse_lambda(const Options& o) {
  const auto v = split_numbers(o.lambda, 2, "--lambda");
  return {v[0], v[1]};
}

GridSpec parse_grid(const Options& o) {
  const auto v = split_numbers(o.grid, 5, "--grid");
  GridSpec g{v[0], v[1], v[2], v[3], static_cast<int>(v[4]), o.t};
  if (v[4] != g.n || g.n < 2 || !(g.x_max > g.x_min) || !(g.y_max > g.y_min))
    throw InputError("--grid needs xmin<xmax, ymin<ymax and an integer n >= 2");
  return g;
}

SeedPair load_seed(const Options& o) {
  if (o.seed.empty())
    throw InputError("--seed is required");
  return read_seed(o.seed);
}

void write_output(const Options& o, const json& j) {
  if (o.out.empty())
    return;
  std::ofstream f(o.out);
  if (!f)
    throw InputError("cannot write " + o.out);
  f << j.dump(2) << '\n';
}

// Writes CSV to --out (or stdout) when --csv is given.
bool write_csv_if_requested(const Options& o, const std::function<std::complex<double>(std::complex<double>, double)>& f) {
  if (!o.csv)
    return false;
  const GridSpec g = parse_grid(o);
  if (o.out.empty()) {
    write_grid_csv(std::cout, g, f);
  } else {
    std::ofstream out(o.out);
    if (!out)
      throw InputError("cannot write " + o.out);
    write_grid_csv(out, g, f);
  }
  return true;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Shortest form of a coordinate rounded to 6 decimals, without "-0".
std::string coord(double v) {
  double r = std::round(v * 1e6) / 1e6;
  if (r == 0)
    r = 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", r);
  return buf;
}

MoutardFrame frame_for(const SeedPair& s, double t) {
  if (!s.time)
    return build_frame(s);
  const SeedPair e = evolve_seed(s);
  const MPoly w = extended_w(e).at_t(GaussianRational(mpq_class(t)));
  return build_frame(e.p1.at_t(GaussianRational(mpq_class(t))), e.p2.at_t(GaussianRational(mpq_class(t))), w);
}

int cmd_potential(const Options& o) {
  const SeedPair s = load_seed(o);
  const MoutardFrame fr = frame_for(s, o.t);
  const CompiledRational cu(fr.u);
  if (write_csv_if_requested(o, [&](std::complex<double> z, double) { return cu(z); }))
    return 0;
  const auto cert = nonvanishing_certificate(fr.w, 401);
  std::cout << "potential: ok W " << nonvanishing_name(cert.verdict);
  if (cert.verdict == Nonvanishing::certified_positive)
    std::cout << " (|W| > 0, sign " << cert.sign << ")";
  std::cout << '\n';
  std::cout << "W = " << fr.w.to_string() << '\n';
  std::cout << "u = " << fr.u.to_string() << '\n';
  write_output(o, {{"W", to_json(fr.w)}, {"u", to_json(fr.u)}, {"certificate", nonvanishing_name(cert.verdict)}, {"sign", cert.sign}});
  return 0;
}

int cmd_kernel(const Options& o) {
  const SeedPair s = load_seed(o);
  const MoutardFrame fr = frame_for(s, o.t);
  const bool ok = schrodinger_apply(fr.u, fr.phi1).is_zero() && schrodinger_apply(fr.u, fr.phi2).is_zero();
  std::cout << "kernel: " << (ok ? "ok" : "FAIL (-Δ+u)φ ≠ 0") << '\n';
  std::cout << "theta1 = " << fr.theta1.to_string() << '\n';
  std::cout << "theta2 = " << fr.theta2.to_string() << '\n';
  std::cout << "phi1 = " << fr.phi1.to_string() << '\n';
  std::cout << "phi2 = " << fr.phi2.to_string() << '\n';
  write_output(o, {{"theta1", to_json(fr.theta1)},
                   {"theta2", to_json(fr.theta2)},
                   {"phi1", to_json(fr.phi1)},
                   {"phi2", to_json(fr.phi2)}});
  return ok ? 0 : 1;
}

FaddeevWave static_wave(const Options& o, const SeedPair& s) {
  FaddeevWave f = faddeev_from_frame(frame_for(s, o.t));
  return o.conjugate ? conjugate_branch(f) : f;
}

int cmd_faddeev(const Options& o) {
  const SeedPair s = load_seed(o);
  const FaddeevWave f = static_wave(o, s);
  const CompiledWave cw(f.psi, parse_lambda(o));
  if (write_csv_if_requested(o, [&](std::complex<double> z, double) { return cw(z); }))
    return 0;
  std::cout << "faddeev: ok residual 0\n";
  std::cout << "psi = " << f.psi.to_string() << '\n';
  write_output(o, {{"psi", to_json(f.psi)}, {"u", to_json(f.u)}});
  return 0;
}

int cmd_scatter(const Options& o) {
  const SeedPair s = load_seed(o);
  const FaddeevWave f = s.time ? nv_faddeev(s).wave : faddeev_from_frame(build_frame(s));
  const ScatteringData sd = scattering_data(f, parse_lambda(o), o.tol);
  std::cout << sd.to_string() << '\n';
  json a = json::array();
  for (const auto& [k, c] : sd.a)
    a.push_back({k, to_json(c)});
  write_output(o, {{"A", a}, {"B_zero", sd.b_zero}, {"text", sd.to_string()}});
  return 0;
}

int cmd_nv_evolve(const Options& o) {
  SeedPair s = load_seed(o);
  s.time = true;
  const SeedPair e = evolve_seed(s);
  const NVSolution sol = nv_potentials(extended_w(e));
  const bool ok = nv_residual(sol).is_zero();
  if (write_csv_if_requested(o, [&, cu = CompiledRational(sol.U)](std::complex<double> z, double t) { return cu(z, t); }))
    return ok ? 0 : 1;
  std::cout << "nv-evolve: " << (ok ? "ok nv_residual 0" : "FAIL nv_residual nonzero") << '\n';
  std::cout << "p1(t) = " << e.p1.to_string() << '\n';
  std::cout << "p2(t) = " << e.p2.to_string() << '\n';
  std::cout << "Wt = " << sol.Wt.to_string() << '\n';
  std::cout << "U = " << sol.U.to_string() << '\n';
  std::cout << "V = " << sol.V.to_string() << '\n';
  write_output(o, {{"Wt", to_json(sol.Wt)}, {"U", to_json(sol.U)}, {"V", to_json(sol.V)}, {"nv_residual_zero", ok}});
  return ok ? 0 : 1;
}

int cmd_nv_faddeev(const Options& o) {
  SeedPair s = load_seed(o);
  s.time = true;
  const NVFaddeev r = nv_faddeev(s);
  const ScatteringData sd = scattering_data(r.wave, parse_lambda(o), o.tol);
  std::cout << "nv-faddeev: ok spatial and temporal residuals 0; " << sd.to_string()
            << (sd.time_free() ? " (t-free)" : " (t-dependent)") << '\n';
  std::cout << "psi = " << r.wave.psi.to_string() << '\n';
  write_output(o, {{"psi", to_json(r.wave.psi)}, {"U", to_json(r.solution.U)}, {"scattering", sd.to_string()}});
  return 0;
}

int cmd_blowup(const Options& o) {
  SeedPair s = load_seed(o);
  s.time = true;
  const MPoly q = extended_w(evolve_seed(s));
  const BlowupReport rep = blowup_time(q);
  if (!rep.blowup) {
    std::cout << "no blow-up for t > 0 (" << rep.method << ")\n";
    write_output(o, {{"blowup", false}, {"method", rep.method}});
    return 0;
  }
  std::cout << "t_star≈" << fixed6(rep.t_star) << " witness=(" << coord(rep.witness.first) << ","
            << coord(rep.witness.second) << ")\n";
  std::cout << "method " << rep.method << " spread " << format_double(rep.spread) << '\n';
  json crit = json::array();
  for (const auto& c : rep.critical_points) {
    std::cout << "critical point (" << format_double(c.x) << ", " << format_double(c.y) << ") t = " << format_double(c.t)
              << '\n';
    crit.push_back({c.x, c.y, c.t});
  }
  write_output(o, {{"blowup", true},
                   {"t_star", rep.t_star},
                   {"witness", {rep.witness.first, rep.witness.second}},
                   {"method", rep.method},
                   {"spread", rep.spread},
                   {"critical_points", crit}});
  return 0;
}

// Terminal columns of a UTF-8 string; combining diacritics take none.
std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const auto b = static_cast<unsigned char>(s[j]);
    if ((b & 0xC0) == 0x80)
      continue;
    const bool combining = j + 1 < s.size() && (b == 0xCC || (b == 0xCD && static_cast<unsigned char>(s[j + 1]) < 0xB0));
    w += combining ? 0 : 1;
  }
  return w;
}

struct Check {
  std::string name;
  bool pass;
};

template <class F>
Check run_check(const std::string& name, F f) {
  try {
    return {name, f()};
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    return {name, false};
  }
}

int cmd_verify(const Options& o) {
  const SeedPair s = load_seed(o);
  std::vector<Check> checks;
  const MoutardFrame fr = frame_for(s, o.t);
  checks.push_back(run_check("W real-valued", [&] { return is_real_valued(fr.w); }));
  checks.push_back(run_check("W nonvanishing", [&] {
    return nonvanishing_certificate(fr.w, 401).verdict == Nonvanishing::certified_positive;
  }));
  checks.push_back(run_check("u real-valued", [&] { return is_real_valued(fr.u); }));
  checks.push_back(run_check("(-Δ+u)φ1 = 0", [&] { return schrodinger_apply(fr.u, fr.phi1).is_zero(); }));
  checks.push_back(run_check("(-Δ+u)φ2 = 0", [&] { return schrodinger_apply(fr.u, fr.phi2).is_zero(); }));
  checks.push_back(run_check("commuting square", [&] {
    if (s.time)
      return true;
    const CommutingSquare sq = commuting_square(s.p1, s.p2, s.c);
    return sq.potentials_agree && sq.product1 == fr.w;
  }));
  std::optional<FaddeevWave> f;
  checks.push_back(run_check("(-4∂∂̄+u)ψ = 0", [&] {
    f = faddeev_from_frame(fr, Phase::z, false);
    return residual(*f).is_zero();
  }));
  checks.push_back(run_check("ψ λ^0 slot = 1", [&] { return f && f->psi.slot(0) == RationalFn(1); }));
  checks.push_back(run_check("conjugate branch residual", [&] { return f && residual(conjugate_branch(*f)).is_zero(); }));
  checks.push_back(run_check("scattering data exact = ray fit", [&] {
    return f && scattering_data(*f, parse_lambda(o), o.tol).b_zero;
  }));
  checks.push_back(run_check("fd_residual order >= 1.9", [&] {
    GridSpec g{-3, 3, -3, 3, 7, 0.0};
    return f && fd_residual(f->u, f->psi, parse_lambda(o), g, 1e-2).min_order >= 1.9;
  }));
  if (s.time) {
    std::optional<NVFaddeev> r;
    checks.push_back(run_check("nv_faddeev temporal residual", [&] {
      r = nv_faddeev(s);
      return true;
    }));
    checks.push_back(run_check("∂̄V = ∂U", [&] { return r && diff_zbar(r->solution.V) == diff_z(r->solution.U); }));
    checks.push_back(run_check("NV residual = 0", [&] { return r && nv_residual(r->solution).is_zero(); }));
    checks.push_back(run_check("A independent of t", [&] { return r && scattering_data_exact(r->wave.psi).time_free(); }));
    checks.push_back(run_check("t = 0 slice = static pipeline", [&] {
      if (!r)
        return false;
      const FaddeevWave stat = faddeev_from_frame(frame_for(SeedPair{s.p1, s.p2, s.c, false}, 0.0));
      return at_t(r->wave, GaussianRational(0)).psi == stat.psi;
    }));
  }
  bool all = true;
  for (const auto& c : checks)
    all = all && c.pass;
  std::cout << "verdict: " << (all ? "pass" : "fail") << '\n';
  json table = json::array();
  for (const auto& c : checks) {
    std::cout << c.name << std::string(36 - std::min<std::size_t>(36, display_width(c.name)), ' ') << ' '
              << (c.pass ? "pass" : "FAIL") << '\n';
    table.push_back({{"check", c.name}, {"pass", c.pass}});
  }
  write_output(o, {{"verdict", all ? "pass" : "fail"}, {"checks", table}});
  return all ? 0 : 1;
}

int cmd_sample_grid(const Options& o) {
  const SeedPair s = load_seed(o);
  std::function<std::complex<double>(std::complex<double>, double)> f;
  if (s.time && (o.field == "U" || o.field == "V" || o.field == "Wt")) {
    SeedPair ts = s;
    const NVSolution sol = nv_potentials(extended_w(evolve_seed(ts)));
    if (o.field == "U")
      f = [c = CompiledRational(sol.U)](std::complex<double> z, double t) { return c(z, t); };
    else if (o.field == "V")
      f = [c = CompiledRational(sol.V)](std::complex<double> z, double t) { return c(z, t); };
    else
      f = [c = CompiledPoly(sol.Wt)](std::complex<double> z, double t) { return c(z, t); };
  } else {
    const MoutardFrame fr = frame_for(s, o.t);
    if (o.field == "u")
      f = [c = CompiledRational(fr.u)](std::complex<double> z, double) { return c(z); };
    else if (o.field == "phi1")
      f = [c = CompiledRational(fr.phi1)](std::complex<double> z, double) { return c(z); };
    else if (o.field == "phi2")
      f = [c = CompiledRational(fr.phi2)](std::complex<double> z, double) { return c(z); };
    else if (o.field == "W")
      f = [c = CompiledPoly(fr.w)](std::complex<double> z, double) { return c(z); };
    else if (o.field == "psi") {
      const FaddeevWave w = static_wave(o, s);
      f = [c = CompiledWave(w.psi, parse_lambda(o))](std::complex<double> z, double) { return c(z); };
    } else
      throw InputError("unknown --field '" + o.field + "' (u, phi1, phi2, W, psi, U, V, Wt)");
  }
  Options csv = o;
  csv.csv = true;
  write_csv_if_requested(csv, f);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double Moutard constructions: potentials, Faddeev eigenfunctions, NV solutions"};
  app.require_subcommand(1);
  Options o;
  auto common = [&o](CLI::App* c) {
    c->add_option("--seed", o.seed, "seed JSON file");
    c->add_option("--out", o.out, "output file (JSON unless --csv)");
    c->add_flag("--csv", o.csv, "write a CSV grid sample instead of JSON");
    c->add_option("--lambda", o.lambda, "spectral parameter re,im");
    c->add_option("--t", o.t, "time slice");
    c->add_option("--grid", o.grid, "xmin,xmax,ymin,ymax,n");
    c->add_option("--tol", o.tol, "relative tolerance of the asymptotic ray fit");
    c->add_option("--field", o.field, "sample-grid field: u, phi1, phi2, W, psi, U, V, Wt");
    c->add_flag("--conjugate", o.conjugate, "use the e^{λz̄} branch");
  };
  struct Cmd {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Cmd cmds[] = {
      {"potential", "u = -2Δ log W", cmd_potential},
      {"kernel", "θ1, θ2, φ1, φ2", cmd_kernel},
      {"faddeev", "zero-energy Faddeev eigenfunction ψ", cmd_faddeev},
      {"scatter", "scattering data A, B", cmd_scatter},
      {"nv-evolve", "time-dependent W, U, V and the NV residual", cmd_nv_evolve},
      {"nv-faddeev", "time-dependent Faddeev eigenfunction", cmd_nv_faddeev},
      {"blowup", "blow-up time of the NV solution", cmd_blowup},
      {"verify", "run the invariant suite on a seed", cmd_verify},
      {"sample-grid", "sample a field on --grid as CSV", cmd_sample_grid},
  };
  const Cmd* chosen = nullptr;
  for (const auto& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    common(sub);
    sub->callback([&chosen, &c] { chosen = &c; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return chosen->run(o);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cout << chosen->name << ": FAIL " << e.what() << '\n';
    return 1;
  }
}
