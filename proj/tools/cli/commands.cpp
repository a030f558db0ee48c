#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <thread>

#include "catseye/diagnostics.hpp"
#include "catseye/flattened.hpp"
#include "catseye/laminar.hpp"
#include "catseye/reconstruct.hpp"
#include "catseye/reduced.hpp"
#include "catseye/spectrum.hpp"
#include "io.hpp"

namespace catseye::cli {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

template <class F>
auto stage(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), name + ": " + e.what());
  }
}

struct Pipeline {
  ResolvedParams params;
  LaminarFlow flow;
  EigenData eig;
  ReducedModel model;
};

Pipeline build_pipeline(const ResolvedParams& p, std::size_t modes) {
  Pipeline out;
  out.params = p;
  out.flow = stage("laminar", [&] { return stream_solution(p.s, p.gamma); });
  out.eig = stage("spectrum", [&] { return compute_spectrum(out.flow, modes); });
  out.model = stage("reduced", [&] { return build_model(out.eig); });
  return out;
}

json params_json(const ResolvedParams& p, double ball) {
  json w = json::array();
  for (const auto& msg : admissibility_warnings(p.s, p.gamma, ball)) w.push_back(msg);
  return json{{"b", p.b ? json(*p.b) : json(nullptr)},
              {"s", p.s},
              {"gamma", p.gamma},
              {"ball_radius", ball},
              {"admissible", std::hypot(p.s, p.gamma) < ball},
              {"warnings", w}};
}

double need_b(const ResolvedParams& p) {
  if (!p.b) throw ConfigError("this command needs gamma > 0 (a finite vorticity b)");
  return *p.b;
}

double resolve_ell(const RunConfig& c, const ReducedModel& model, double default_ratio) {
  if (c.ell) {
    if (!(*c.ell < model.L)) {
      std::ostringstream s;
      s.precision(17);
      s << "--ell must lie in (0, L) with L = " << model.L;
      throw ConfigError(s.str());
    }
    return *c.ell;
  }
  return c.ell_ratio.value_or(default_ratio) * model.L;
}

Discretization discretization(const RunConfig& c) {
  Discretization d;
  d.y_order = c.y_order.value_or(2);
  return d;
}

NewtonOptions newton_options(const RunConfig& c) {
  NewtonOptions o;
  o.tol = c.tol.value_or(o.tol);
  o.max_iter = c.max_iter.value_or(o.max_iter);
  o.disc = discretization(c);
  return o;
}

std::vector<ProfileSample> field_profile(const WaveField& f, double b) {
  const auto phys = to_physical(f, b);
  std::vector<ProfileSample> out(phys.nx);
  for (std::size_t i = 0; i < phys.nx; ++i) out[i] = {phys.X[i], phys.eta[i]};
  return out;
}

json grid_json(const WaveField& f) {
  return json{{"nx", f.grid.nx()}, {"ny", f.grid.ny}, {"periodic", f.grid.periodic},
              {"period", f.grid.periodic ? json(f.grid.period) : json(nullptr)}, {"h", f.grid.h}};
}

void announce(std::ostream& out, const fs::path& p) { out << "wrote " << p.string() << '\n'; }

struct Artifacts {
  fs::path dir;
  std::ostream& out;
  void text(const std::string& name, const std::string& body) { announce(out, write_text(dir, name, body)); }
  void doc(const std::string& name, const json& j) { text(name, j.dump(2) + "\n"); }
};

void field_artifacts(Artifacts& art, const RunConfig& c, const std::string& stem, const WaveField& f,
                     double b, const DiagnosticsReport& rep) {
  if (!c.no_field) art.text("field.csv", field_csv(f, b));
  art.text("streamlines.csv", polylines_csv(rep));
  if (c.svg) art.text(stem + ".svg", structure_svg(f, b, rep));
}

json reduced_json(const Pipeline& p) {
  return json{{"tau", p.eig.tau},       {"A", p.model.A},
              {"alpha_plus", p.model.alpha_plus}, {"alpha_minus", p.model.alpha_minus},
              {"L", p.model.L}};
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return kConfig;
    case ErrorKind::Range:
    case ErrorKind::Domain: return kDomain;
    case ErrorKind::Solver: return kSolver;
  }
  return kInternal;
}

int cmd_laminar(const RunConfig& c, std::ostream& out) {
  const auto p = resolve_params(c);
  const double ball = c.ball.value_or(kDefaultBallRadius);
  const auto flow = stage("laminar", [&] { return stream_solution(p.s, p.gamma); });
  json doc = document("catseye.laminar");
  doc["params"] = params_json(p, ball);
  doc["laminar"] = to_json(flow);
  doc["counter_current"] = p.s < 0.0;
  doc["negative_eigenvalue"] = flow.kappa * flow.h > 1.0;
  if (p.s <= 0.0) {
    const auto conj = stage("laminar", [&] { return conjugate_flow(p.s, p.gamma); });
    doc["conjugate"] = {{"s", conj.s}, {"h", conj.h}, {"degenerate", conj.degenerate}};
  } else {
    doc["conjugate"] = nullptr;
  }
  out << doc.dump(2) << '\n';
  Artifacts art{output_dir(c), out};
  art.doc("laminar.json", doc);
  return kOk;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
  const auto p = resolve_params(c);
  const auto pipe = build_pipeline(p, c.modes.value_or(5));
  const auto& e = pipe.eig;
  json modes = json::array();
  double robin = 0.0;
  for (std::size_t i = 0; i < e.phi.size(); ++i) {
    const auto& f = e.phi[i];
    const char* shape = f.shape() == Eigenfunction::Shape::Hyperbolic ? "sinh"
                        : f.shape() == Eigenfunction::Shape::Linear   ? "linear"
                                                                      : "sin";
    const double r = robin_residual(f, e.h, e.kappa);
    robin = std::max(robin, std::abs(r));
    modes.push_back({{"mu", e.mu[i]}, {"shape", shape}, {"amplitude", f.amplitude()},
                     {"wavenumber", f.wavenumber()}, {"robin_residual", r}});
  }
  json doc = document("catseye.spectrum");
  doc["params"] = params_json(p, c.ball.value_or(kDefaultBallRadius));
  doc["laminar"] = to_json(pipe.flow);
  doc["tau"] = e.tau;
  doc["tau_h_squared"] = e.tau * e.tau * e.h * e.h;
  doc["modes"] = modes;
  doc["gram_defect"] = gram_defect(e.phi, e.h);
  doc["robin_residual_max"] = robin;
  doc["c0_leading"] = e.c0_leading;
  doc["c0_effective"] = e.c0_effective;
  doc["c0_profile"] = e.c0_profile;
  doc["reduced"] = reduced_json(pipe);
  out << doc.dump(2) << '\n';
  Artifacts art{output_dir(c), out};
  art.doc("spectrum.json", doc);
  return kOk;
}

int cmd_solitary(const RunConfig& c, std::ostream& out) {
  const auto p = resolve_params(c);
  const double b = need_b(p);
  const auto pipe = build_pipeline(p, c.modes.value_or(5));
  SolitaryGrid sg;
  sg.nx = c.nx.value_or(sg.nx);
  sg.ny = c.ny.value_or(sg.ny);
  sg.x1_max = c.x1_max.value_or(sg.x1_max);
  const auto field = stage("reconstruct", [&] { return solitary_field(pipe.model, pipe.eig, pipe.flow, sg); });
  StructureOptions so;
  so.disc = discretization(c);
  const auto rep = stage("validate", [&] { return diagnose(field, b, so); });
  const auto cert = certify(rep);

  const auto profile = field_profile(field, b);
  std::vector<double> closed(profile.size());
  const double far = solitary_profile_closed_form(1e300, pipe.eig, pipe.flow, b);
  const double amp = solitary_profile_closed_form(0.0, pipe.eig, pipe.flow, b) - far;
  double worst = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    closed[i] = solitary_profile_closed_form(profile[i].X, pipe.eig, pipe.flow, b);
    worst = std::max(worst, std::abs(profile[i].eta - closed[i]));
  }

  json doc = document("catseye.diagnostics");
  doc["command"] = "solitary";
  doc["params"] = params_json(p, c.ball.value_or(kDefaultBallRadius));
  doc["wave"] = reduced_json(pipe);
  doc["wave"]["amplitude"] = amp;
  doc["wave"]["far_field_depth"] = far;
  doc["wave"]["profile_rel_err"] = worst / amp;
  doc["wave"]["crest_critical_height"] = crest_critical_height(pipe.model, pipe.eig, pipe.flow);
  doc["wave"]["x1_max"] = sg.x1_max;
  doc["grid"] = grid_json(field);
  doc["diagnostics"] = to_json(rep);
  doc["certification"] = to_json(cert);

  Artifacts art{output_dir(c), out};
  art.text("profile.csv", profile_csv(profile, closed));
  field_artifacts(art, c, "solitary", field, b, rep);
  art.doc("diagnostics.json", doc);
  if (c.certify && !cert.passed()) return kCertification;
  return kOk;
}

int cmd_periodic(const RunConfig& c, std::ostream& out) {
  const auto p = resolve_params(c);
  const double b = need_b(p);
  const auto pipe = build_pipeline(p, c.modes.value_or(5));
  const double ell = resolve_ell(c, pipe.model, 0.5);
  const double ode_tol = c.ode_tol.value_or(1e-10);
  const auto [am, ap] = stage("reduced", [&] { return turning_points(ell, pipe.model); });
  const double sigma = stage("reduced", [&] { return half_period(ell, pipe.model); });
  const double sigma_ode = stage("reduced", [&] { return integrated_half_period(ell, pipe.model, ode_tol); });
  const double x1d = stage("reduced", [&] { return vortex_bottom_half_width(ell, pipe.model); });
  const std::size_t nx = c.nx.value_or(256), ny = c.ny.value_or(48);
  auto field = stage("reconstruct", [&] { return periodic_field(ell, pipe.model, pipe.eig, pipe.flow, nx, ny); });

  json doc = document("catseye.periodic");
  doc["params"] = params_json(p, c.ball.value_or(kDefaultBallRadius));
  doc["reduced"] = reduced_json(pipe);
  doc["ell"] = ell;
  doc["ell_ratio"] = ell / pipe.model.L;
  doc["turning_points"] = {am, ap};
  doc["sigma"] = sigma;
  doc["sigma_integrated"] = sigma_ode;
  doc["x1_dagger"] = x1d;
  doc["period_scaled"] = 2.0 * sigma / pipe.eig.tau;
  doc["period_physical"] = 2.0 * sigma / pipe.eig.tau / std::sqrt(b);
  doc["leading_order_residuals"] = to_json(residual_report(field, discretization(c)));
  json newton = nullptr;
  if (c.newton) {
    auto res = stage("validate", [&] { return solve_flattened_periodic(pipe.flow, field, newton_options(c)); });
    field = std::move(res.field);
    newton = to_json(res.report);
  }
  doc["newton"] = newton;

  StructureOptions so;
  so.disc = discretization(c);
  const auto rep = stage("validate", [&] { return diagnose(field, b, so); });
  const auto cert = certify(rep);
  json diag = document("catseye.diagnostics");
  diag["command"] = "periodic";
  diag["params"] = doc["params"];
  diag["wave"] = reduced_json(pipe);
  diag["wave"]["ell_ratio"] = ell / pipe.model.L;
  diag["wave"]["newton"] = c.newton;
  diag["grid"] = grid_json(field);
  diag["diagnostics"] = to_json(rep);
  diag["certification"] = to_json(cert);

  Artifacts art{output_dir(c), out};
  art.text("profile.csv", profile_csv(field_profile(field, b), {}));
  field_artifacts(art, c, "periodic", field, b, rep);
  art.doc("periodic.json", doc);
  art.doc("diagnostics.json", diag);
  if (c.newton) {
    json r = document("catseye.residual");
    r["report"] = newton;
    art.doc("residual.json", r);
  }
  if (c.certify && !cert.passed()) return kCertification;
  return kOk;
}

namespace {

struct SweepRow {
  double value = 0.0;
  bool ok = false;
  std::string error;
  std::optional<double> s, gamma, b, tau, kappa_h, dispersion_err, A, alpha_plus, L, ell_ratio,
      sigma, x1_dagger, profile_err, pde_res, bern_res;
};

ResolvedParams sweep_params(const RunConfig& c, const std::string& kind, double v) {
  if (kind == "eps") {
    if (!(v > 0.0)) throw DomainError("eps must be positive");
    ResolvedParams p;
    p.s = -v / std::numbers::sqrt2;
    p.gamma = v / std::numbers::sqrt2;
    p.b = std::pow(p.gamma, -2.0 / 3.0);
    return p;
  }
  RunConfig row = c;
  if (kind == "b") {
    if (!(v > 0.0)) throw DomainError("b must be positive");
    row.b = v;
    row.gamma.reset();
  } else if (kind == "s") {
    row.s = v;
    row.diagonal = false;
  }
  return resolve_params(row);
}

void sweep_row(const RunConfig& c, const std::string& kind, SweepRow& r) {
  const auto p = sweep_params(c, kind, r.value);
  r.s = p.s;
  r.gamma = p.gamma;
  r.b = p.b;
  const auto pipe = build_pipeline(p, c.modes.value_or(5));
  const double th = pipe.eig.tau * pipe.flow.h;
  r.tau = pipe.eig.tau;
  r.kappa_h = pipe.flow.kappa * pipe.flow.h;
  r.dispersion_err = std::abs(th * th - 3.0 * (p.gamma - p.s) / std::numbers::sqrt2);
  r.A = pipe.model.A;
  r.alpha_plus = pipe.model.alpha_plus;
  r.L = pipe.model.L;
  const double ratio = kind == "ell-ratio" ? r.value : c.ell_ratio.value_or(0.5);
  if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("ell ratio must lie in (0, 1)");
  r.ell_ratio = ratio;
  const double ell = ratio * pipe.model.L;
  r.sigma = stage("reduced", [&] { return half_period(ell, pipe.model); });
  r.x1_dagger = stage("reduced", [&] { return vortex_bottom_half_width(ell, pipe.model); });
  if (p.b && *p.b > 0.0) {
    const double b = *p.b;
    std::vector<double> x1(601);
    for (std::size_t i = 0; i < x1.size(); ++i) x1[i] = -30.0 + 0.1 * static_cast<double>(i);
    const auto prof = physical_profile(homoclinic_orbit(pipe.model, x1), pipe.eig, pipe.flow, b);
    const double far = solitary_profile_closed_form(1e300, pipe.eig, pipe.flow, b);
    const double amp = solitary_profile_closed_form(0.0, pipe.eig, pipe.flow, b) - far;
    double worst = 0.0;
    for (const auto& q : prof) {
      worst = std::max(worst, std::abs(q.eta - solitary_profile_closed_form(q.X, pipe.eig, pipe.flow, b)));
    }
    r.profile_err = worst / amp;
  }
  if (c.newton) {
    const auto init = stage("reconstruct", [&] {
      return periodic_field(ell, pipe.model, pipe.eig, pipe.flow, c.nx.value_or(256), c.ny.value_or(48));
    });
    const auto res = stage("validate", [&] { return solve_flattened_periodic(pipe.flow, init, newton_options(c)); });
    r.pde_res = res.report.pde_res;
    r.bern_res = res.report.bern_res;
  }
  r.ok = true;
}

}  // namespace

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  const std::string kind = c.sweep.value_or("");
  if (kind != "eps" && kind != "b" && kind != "s" && kind != "ell-ratio") {
    throw ConfigError("--sweep must be one of eps, b, s, ell-ratio");
  }
  const auto values = sweep_values(c);
  // Validate the base parameters once so config mistakes are not reported per row.
  if (kind == "s" || kind == "ell-ratio") {
    RunConfig probe = c;
    if (kind == "s") {
      probe.s = 0.0;
      probe.diagonal = false;
    }
    (void)resolve_params(probe);
  }
  std::vector<SweepRow> rows(values.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].value = values[i];

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      try {
        sweep_row(c, kind, rows[i]);
      } catch (const std::exception& e) {
        rows[i].ok = false;
        rows[i].error = e.what();
      }
    }
  };
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(c.threads.value_or(hw), std::max<std::size_t>(1, rows.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
  }

  std::ostringstream s;
  CsvWriter csv(s);
  csv.header({"row", "param", "value", "status", "s", "gamma", "b", "tau", "kappa_h", "dispersion_err",
              "A", "alpha_plus", "L", "ell_ratio", "sigma", "x1_dagger", "profile_err", "pde_res",
              "bern_res", "error"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    csv.cell(i).cell(kind).cell(r.value).cell(std::string(r.ok ? "ok" : "failed"));
    for (const auto* v : {&r.s, &r.gamma, &r.b, &r.tau, &r.kappa_h, &r.dispersion_err, &r.A,
                          &r.alpha_plus, &r.L, &r.ell_ratio, &r.sigma, &r.x1_dagger, &r.profile_err,
                          &r.pde_res, &r.bern_res}) {
      if (*v) {
        csv.cell(**v);
      } else {
        csv.empty();
      }
    }
    csv.cell(r.error);
    csv.end_row();
  }
  Artifacts art{output_dir(c), out};
  art.text("sweep.csv", s.str());
  return kOk;
}

int cmd_certify(const RunConfig& c, std::ostream& out) {
  const auto p = resolve_params(c);
  const double b = need_b(p);
  const auto pipe = build_pipeline(p, c.modes.value_or(5));
  const std::string mode = c.mode.value_or("periodic");
  StructureOptions so;
  so.disc = discretization(c);

  auto run_grid = [&](std::size_t nx, std::size_t ny) {
    json g;
    WaveField field;
    if (mode == "periodic") {
      const double ell = resolve_ell(c, pipe.model, 0.99);
      const auto init = stage("reconstruct", [&] { return periodic_field(ell, pipe.model, pipe.eig, pipe.flow, nx, ny); });
      auto res = stage("validate", [&] { return solve_flattened_periodic(pipe.flow, init, newton_options(c)); });
      field = std::move(res.field);
      g["newton"] = to_json(res.report);
      g["ell_ratio"] = ell / pipe.model.L;
    } else {
      SolitaryGrid sg;
      sg.nx = nx;
      sg.ny = ny;
      sg.x1_max = c.x1_max.value_or(sg.x1_max);
      field = stage("reconstruct", [&] { return solitary_field(pipe.model, pipe.eig, pipe.flow, sg); });
    }
    const auto rep = stage("validate", [&] { return diagnose(field, b, so); });
    const auto cert = certify(rep);
    g["grid"] = grid_json(field);
    g["diagnostics"] = to_json(rep);
    g["certification"] = to_json(cert);
    return g;
  };

  const bool periodic = mode == "periodic";
  const std::size_t nx = c.nx.value_or(periodic ? 256 : 1001);
  const std::size_t ny = c.ny.value_or(periodic ? 48 : 128);
  json grids = json::array();
  grids.push_back(run_grid(nx, ny));
  bool passed = grids[0]["certification"]["passed"].get<bool>();
  json stable = nullptr;
  if (c.refine) {
    grids.push_back(run_grid(periodic ? 2 * nx : 2 * nx - 1, 2 * ny));
    auto counts = [](const json& g) {
      const auto& d = g["diagnostics"];
      json types = json::array();
      for (const auto& q : d["interior_stagnation"]) types.push_back(q["type"]);
      return json{d["bottom_stagnation"].size(), types};
    };
    const bool same = counts(grids[0]) == counts(grids[1]);
    stable = same;
    passed = passed && same && grids[1]["certification"]["passed"].get<bool>();
  }
  json doc = document("catseye.certify");
  doc["mode"] = mode;
  doc["params"] = params_json(p, c.ball.value_or(kDefaultBallRadius));
  doc["grids"] = grids;
  doc["refinement_stable"] = stable;
  doc["passed"] = passed;
  Artifacts art{output_dir(c), out};
  art.doc("certify.json", doc);
  for (const auto& chk : grids.back()["certification"]["checks"]) {
    out << (chk["passed"].get<bool>() ? "PASS " : "FAIL ") << chk["name"].get<std::string>() << ": "
        << chk["detail"].get<std::string>() << '\n';
  }
  out << (passed ? "certified" : "certification failed") << '\n';
  return passed ? kOk : kCertification;
}

}  // namespace catseye::cli
