#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "epibehave/constant_cost.hpp"
#include "epibehave/contact_rate.hpp"
#include "epibehave/csv.hpp"
#include "epibehave/endogenous.hpp"
#include "epibehave/errors.hpp"
#include "epibehave/model.hpp"
#include "epibehave/onset.hpp"
#include "epibehave/phase.hpp"
#include "epibehave/standard_sir.hpp"
#include "epibehave/svg.hpp"

namespace epibehave::cli {

namespace {

using nlohmann::json;

constexpr double kBaseRhoTilde = 0.05 / 365.0;
constexpr double kBaseLambda = 0.67 / 365.0;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParamCli {
  std::string config_path;
  std::optional<double> beta, gamma, c, eta, rho, rho_tilde, lambda;
  std::optional<double> pi_s, pi_i, pi_r, i0;
};

struct OutputCli {
  std::string out;   // primary artifact; empty or "-" means stdout
  std::string json_path;
  std::string svg_path;
};

void add_param_options(CLI::App* cmd, ParamCli& pc) {
  cmd->add_option("--config", pc.config_path,
                  "flat JSON file with parameter keys (beta, gamma, c, eta, "
                  "rho or rho_tilde+lambda, pi_s, pi_i, pi_r, i0)");
  cmd->add_option("--beta", pc.beta, "transmission rate per day");
  cmd->add_option("--gamma", pc.gamma, "recovery rate per day");
  cmd->add_option("--c", pc.c, "distancing cost coefficient");
  cmd->add_option("--eta", pc.eta, "cost of infection (<= 0)");
  cmd->add_option("--rho", pc.rho, "effective discount rate per day");
  cmd->add_option("--rho-tilde", pc.rho_tilde, "pure discount rate per day");
  cmd->add_option("--lambda", pc.lambda, "cure arrival rate per day");
  cmd->add_option("--pi-s", pc.pi_s, "flow payoff while susceptible");
  cmd->add_option("--pi-i", pc.pi_i, "flow payoff while infected");
  cmd->add_option("--pi-r", pc.pi_r, "flow payoff while recovered");
  cmd->add_option("--i0", pc.i0, "initial infected share");
}

void add_output_options(CLI::App* cmd, OutputCli& oc, bool with_json = true,
                        bool with_svg = true) {
  cmd->add_option("--out", oc.out, "output path ('-' or absent: stdout)");
  if (with_json) {
    cmd->add_option("--json", oc.json_path, "side report path (JSON)");
  }
  if (with_svg) cmd->add_option("--svg", oc.svg_path, "chart path (SVG)");
}

void merge_config_file(ModelParams& p, std::optional<double>& rho_tilde,
                       std::optional<double>& lambda,
                       const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  bool has_rho = false;
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number()) {
      throw ConfigError("config key '" + key + "' must be a number");
    }
    const double v = value.get<double>();
    if (key == "beta") p.beta = v;
    else if (key == "gamma") p.gamma = v;
    else if (key == "c") p.c = v;
    else if (key == "eta") p.eta = v;
    else if (key == "rho") { p.rho = v; has_rho = true; }
    else if (key == "rho_tilde") rho_tilde = v;
    else if (key == "lambda") lambda = v;
    else if (key == "pi_s") p.pi_s = v;
    else if (key == "pi_i") p.pi_i = v;
    else if (key == "pi_r") p.pi_r = v;
    else if (key == "i0") p.i0 = v;
    else throw ConfigError("unknown config key '" + key + "'");
  }
  if (has_rho && (rho_tilde || lambda)) {
    throw ConfigError("give either rho or the rho_tilde/lambda pair");
  }
}

ModelParams assemble_params(const ParamCli& pc) {
  ModelParams p = baseline_params();
  std::optional<double> rho_tilde, lambda;
  if (!pc.config_path.empty()) {
    merge_config_file(p, rho_tilde, lambda, pc.config_path);
  }
  if (pc.rho_tilde) rho_tilde = pc.rho_tilde;
  if (pc.lambda) lambda = pc.lambda;
  if (pc.rho && (rho_tilde || lambda)) {
    throw ConfigError("give either --rho or the --rho-tilde/--lambda pair");
  }
  if (rho_tilde || lambda) {
    p.rho = rho_tilde.value_or(kBaseRhoTilde) + lambda.value_or(kBaseLambda);
  }
  if (pc.rho) p.rho = *pc.rho;
  if (pc.beta) p.beta = *pc.beta;
  if (pc.gamma) p.gamma = *pc.gamma;
  if (pc.c) p.c = *pc.c;
  if (pc.eta) p.eta = *pc.eta;
  if (pc.pi_s) p.pi_s = *pc.pi_s;
  if (pc.pi_i) p.pi_i = *pc.pi_i;
  if (pc.pi_r) p.pi_r = *pc.pi_r;
  if (pc.i0) p.i0 = *pc.i0;

  const ValidationReport report = validate(p);
  if (!report.ok()) throw ConfigError(report.to_string());
  return p;
}

void write_artifact(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw SimulationError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.flush();
  if (!out) throw SimulationError("failed writing " + path);
}

void maybe_write(const std::string& path, const std::string& content) {
  if (!path.empty()) write_artifact(path, content);
}

std::vector<double> make_grid(double from, double to, int points,
                              bool log_spaced) {
  if (points < 2) throw ConfigError("grid needs at least 2 points");
  if (!(from < to)) throw ConfigError("grid must be strictly increasing");
  if (log_spaced && !(from > 0.0)) {
    throw ConfigError("log spacing needs a positive range");
  }
  std::vector<double> grid(points);
  for (int k = 0; k < points; ++k) {
    const double w = static_cast<double>(k) / (points - 1);
    grid[k] = log_spaced ? std::exp(std::log(from) +
                                    w * (std::log(to) - std::log(from)))
                         : from + w * (to - from);
  }
  return grid;
}

svg::Series trajectory_series(const Trajectory& traj, const char* label,
                              bool infected, bool dashed = false) {
  svg::Series s;
  s.label = label;
  s.dashed = dashed;
  s.points.reserve(traj.size());
  for (const auto& st : traj.states) {
    s.points.emplace_back(st.t, infected ? st.i : st.eps);
  }
  return s;
}

svg::Series phase_series(const Trajectory& traj, const char* label,
                         bool dashed = false) {
  svg::Series s;
  s.label = label;
  s.dashed = dashed;
  s.points.reserve(traj.size());
  for (const auto& st : traj.states) s.points.emplace_back(st.s, st.i);
  return s;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const ParamCli& pc, const OutputCli& oc,
                 const std::string& model, double horizon, double step,
                 const std::string& svg_phase_path) {
  const ModelParams p = assemble_params(pc);

  if (model == "endogenous") {
    endogenous::SolverOptions opts;
    opts.horizon = horizon;
    opts.step = step;
    const auto sol = endogenous::solve_equilibrium(p, opts);
    std::ostringstream csv;
    io::write_equilibrium_csv(csv, sol);
    write_artifact(oc.out, csv.str());
    if (!oc.json_path.empty()) {
      json rep{{"model", model},
               {"converged", sol.costate.converged},
               {"iterations", sol.costate.iterations},
               {"final_gap", sol.costate.final_gap},
               {"t_end", sol.trajectory.back().t}};
      maybe_write(oc.json_path, rep.dump(2) + "\n");
    }
    if (!oc.svg_path.empty()) {
      svg::ChartOptions ch;
      ch.title = "Equilibrium infections";
      ch.x_label = "t (days)";
      ch.y_label = "I(t)";
      maybe_write(oc.svg_path,
                  svg::render(ch, {trajectory_series(sol.trajectory,
                                                     "endogenous cost", true)}));
    }
    return 0;
  }

  const Trajectory traj = model == "standard"
                              ? standard_sir::integrate_standard(p, horizon, step)
                              : constant_cost::integrate(p, horizon, step);
  std::ostringstream csv;
  io::write_trajectory_csv(csv, traj);
  write_artifact(oc.out, csv.str());

  if (!oc.json_path.empty()) {
    const auto peak = constant_cost::detect_peak(traj);
    const auto rn = constant_cost::reproduction_numbers(traj);
    json rep{{"model", model},
             {"r0", rn.r0},
             {"r0b", rn.r0b},
             {"took_off", peak.took_off},
             {"t_peak", peak.t_peak},
             {"s_peak", peak.s_peak},
             {"i_peak", peak.i_peak},
             {"s_end", traj.back().s},
             {"t_end", traj.back().t}};
    maybe_write(oc.json_path, rep.dump(2) + "\n");
  }
  if (!oc.svg_path.empty()) {
    svg::ChartOptions ch;
    ch.title = "Infections over time";
    ch.x_label = "t (days)";
    ch.y_label = "share";
    maybe_write(oc.svg_path,
                svg::render(ch, {trajectory_series(traj, "I(t)", true),
                                 trajectory_series(traj, "exposure", false,
                                                   true)}));
  }
  if (!svg_phase_path.empty()) {
    const Trajectory hat = standard_sir::integrate_standard(p, horizon, step);
    svg::ChartOptions ch;
    ch.title = "Solution paths";
    ch.x_label = "S";
    ch.y_label = "I";
    ch.v_line = p.gamma / p.beta;
    maybe_write(svg_phase_path,
                svg::render(ch, {phase_series(traj, "with distancing"),
                                 phase_series(hat, "no behavior", true)}));
  }
  return 0;
}

// ------------------------------------------------------------------- onset

int cmd_onset(const ParamCli& pc, const OutputCli& oc) {
  const ModelParams p = assemble_params(pc);
  json rep;
  rep["r0b"] = onset::behavioral_r0(p);
  rep["took_off"] = onset::behavioral_r0(p) > 1.0;
  rep["neg_eta_ceiling"] = p.c / (4.0 * p.gamma) * p.s0() / p.i0;
  if (p.eta == 0.0) {
    rep["empty"] = false;
    rep["tangency"] = false;
    rep["beta_lo"] = p.gamma / p.s0();
    rep["beta_hi"] = nullptr;  // no upper bound without distancing incentive
  } else {
    const auto window = onset::onset_beta_interval(p);
    rep["empty"] = window.empty;
    rep["tangency"] = window.tangency;
    rep["i0_threshold"] = window.i0_threshold;
    if (window.empty) {
      rep["beta_lo"] = nullptr;
      rep["beta_hi"] = nullptr;
    } else {
      rep["beta_lo"] = window.beta_lo;
      rep["beta_hi"] = window.beta_hi;
    }
  }
  try {
    rep["c_threshold"] = onset::c_threshold(p);
  } catch (const NoThreshold&) {
    rep["c_threshold"] = nullptr;
  }
  write_artifact(oc.out, rep.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------- frontier

int cmd_frontier(const ParamCli& pc, const OutputCli& oc, double from,
                 double to, int points) {
  const ModelParams p = assemble_params(pc);
  if (from <= 0.0) from = 0.5 * p.gamma / p.s0();
  if (to <= 0.0) to = 20.0 * p.gamma / p.s0();
  const auto grid = make_grid(from, to, points, false);
  const auto frontier = onset::severity_frontier(p, grid);

  std::ostringstream csv;
  io::write_frontier_csv(csv, frontier);
  write_artifact(oc.out, csv.str());

  if (!oc.json_path.empty()) {
    json rep{{"neg_eta_ceiling", frontier.neg_eta_ceiling},
             {"points", frontier.points.size()}};
    maybe_write(oc.json_path, rep.dump(2) + "\n");
  }
  if (!oc.svg_path.empty()) {
    svg::Series s;
    s.label = "takeoff frontier";
    for (const auto& pt : frontier.points) {
      s.points.emplace_back(pt.beta, pt.neg_eta);
    }
    svg::ChartOptions ch;
    ch.title = "Onset frontier";
    ch.x_label = "beta";
    ch.y_label = "-eta";
    maybe_write(oc.svg_path, svg::render(ch, {s}));
  }
  return 0;
}

// -------------------------------------------------------------------- peak

int cmd_peak(const ParamCli& pc, const OutputCli& oc, double horizon,
             double step) {
  const ModelParams p = assemble_params(pc);
  const Trajectory traj = constant_cost::integrate(p, horizon, step);
  const auto peak = constant_cost::detect_peak(traj);
  json rep{{"took_off", peak.took_off},
           {"dynamics",
            {{"t_peak", peak.t_peak},
             {"s_peak", peak.s_peak},
             {"i_peak", peak.i_peak}}}};
  if (!peak.took_off) {
    rep["phase"] = nullptr;
  } else if (p.eta == 0.0) {
    rep["phase"] = {{"i_peak", standard_sir::standard_peak(p)},
                    {"s_peak", p.gamma / p.beta}};
  } else {
    const auto pp = phase::peak_from_phase(p);
    rep["phase"] = {{"i_peak", pp.i}, {"s_peak", pp.s}};
  }
  write_artifact(oc.out, rep.dump(2) + "\n");
  return 0;
}

// -------------------------------------------------------------- final-size

int cmd_final_size(const ParamCli& pc, const OutputCli& oc, double horizon,
                   double step) {
  const ModelParams p = assemble_params(pc);
  const double s_inf = p.eta == 0.0 ? standard_sir::standard_final_size(p)
                                    : phase::final_size(p);
  const Trajectory traj = constant_cost::integrate(p, horizon, step);
  json rep{{"s_inf", s_inf},
           {"s_inf_standard", standard_sir::standard_final_size(p)},
           {"herd_threshold", p.gamma / p.beta},
           {"lower_bound", p.s0() * std::exp(-p.beta / p.gamma)},
           {"s_at_horizon", traj.back().s},
           {"t_end", traj.back().t}};
  write_artifact(oc.out, rep.dump(2) + "\n");
  return 0;
}

// ------------------------------------------------------------------- sweep

int cmd_sweep(const ParamCli& pc, const OutputCli& oc,
              const std::string& param, double from, double to, int points,
              const std::string& spacing, const std::string& outcome) {
  const ModelParams p = assemble_params(pc);
  phase::SweepParam sp;
  if (param == "beta") sp = phase::SweepParam::Beta;
  else if (param == "c") sp = phase::SweepParam::C;
  else if (param == "eta") sp = phase::SweepParam::Eta;
  else sp = phase::SweepParam::I0;

  const bool log_spaced =
      spacing == "log" || (spacing == "auto" && param == "beta" && from > 0.0);
  const auto grid = make_grid(from, to, points, log_spaced);

  phase::SweepTable table;
  if (outcome == "peak") {
    table = phase::peak_sweep(p, sp, grid);
  } else if (outcome == "final-size") {
    table = phase::final_size_sweep(p, sp, grid);
  } else {
    table = phase::full_sweep(p, sp, grid);
  }

  std::ostringstream csv;
  io::write_sweep_csv(csv, table);
  write_artifact(oc.out, csv.str());

  if (!oc.json_path.empty()) {
    json rows = json::array();
    for (const auto& row : table.rows) {
      if (!row.error.empty()) {
        rows.push_back({{"value", row.value}, {"error", row.error}});
      }
    }
    json rep{{"param", param},
             {"points", grid.size()},
             {"failed_rows", rows}};
    maybe_write(oc.json_path, rep.dump(2) + "\n");
  }
  if (!oc.svg_path.empty()) {
    std::vector<svg::Series> series;
    if (outcome != "final-size") {
      svg::Series s;
      s.label = "peak prevalence";
      for (const auto& row : table.rows) {
        if (row.error.empty() && std::isfinite(row.i_peak)) {
          s.points.emplace_back(row.value, row.i_peak);
        }
      }
      series.push_back(std::move(s));
    }
    if (outcome != "peak") {
      svg::Series s;
      s.label = "final susceptibles";
      for (const auto& row : table.rows) {
        if (row.error.empty() && std::isfinite(row.s_inf)) {
          s.points.emplace_back(row.value, row.s_inf);
        }
      }
      series.push_back(std::move(s));
      if (param == "beta") {
        svg::Series ref;
        ref.label = "herd threshold";
        ref.dashed = true;
        for (const auto& row : table.rows) {
          ref.points.emplace_back(row.value, p.gamma / row.value);
        }
        series.push_back(std::move(ref));
      }
    }
    svg::ChartOptions ch;
    ch.title = "Comparative statics";
    ch.x_label = param;
    ch.y_label = "share";
    if (param == "c" && outcome != "peak") ch.h_line = p.gamma / p.beta;
    maybe_write(oc.svg_path, svg::render(ch, series));
  }
  return 0;
}

// -------------------------------------------------------------- endogenous

int cmd_endogenous(const ParamCli& pc, const OutputCli& oc, double horizon,
                   double step, double tol, int max_iter, double relaxation) {
  const ModelParams p = assemble_params(pc);
  endogenous::SolverOptions opts;
  opts.horizon = horizon;
  opts.step = step;
  opts.tol = tol;
  opts.max_iter = max_iter;
  opts.relaxation = relaxation;
  const auto sol = endogenous::solve_equilibrium(p, opts);

  std::ostringstream csv;
  io::write_equilibrium_csv(csv, sol);
  write_artifact(oc.out, csv.str());

  if (!oc.json_path.empty()) {
    const auto bounds = endogenous::eta_bounds(p);
    json log = json::array();
    for (const auto& rec : sol.costate.log) {
      log.push_back({{"iteration", rec.iteration},
                     {"gap", rec.gap},
                     {"omega", rec.omega}});
    }
    json rep{{"converged", sol.costate.converged},
             {"iterations", sol.costate.iterations},
             {"final_gap", sol.costate.final_gap},
             {"v_infected", endogenous::v_infected(p)},
             {"eta_lo", bounds.lo},
             {"eta_hi", bounds.hi_tight},
             {"t_end", sol.trajectory.back().t},
             {"log", log}};
    maybe_write(oc.json_path, rep.dump(2) + "\n");
  }
  if (!oc.svg_path.empty()) {
    svg::Series s;
    s.label = "eta(t)";
    for (std::size_t k = 0; k < sol.costate.t.size(); ++k) {
      s.points.emplace_back(sol.costate.t[k], sol.costate.eta[k]);
    }
    svg::ChartOptions ch;
    ch.title = "Infection cost co-state";
    ch.x_label = "t (days)";
    ch.y_label = "eta";
    maybe_write(oc.svg_path, svg::render(ch, {s}));
  }
  return 0;
}

// ------------------------------------------------------------- phase-check

int cmd_phase_check(const ParamCli& pc, const OutputCli& oc, double horizon,
                    double step, std::optional<double> compare_eta) {
  const ModelParams p = assemble_params(pc);
  if (p.eta == 0.0) {
    throw ConfigError("phase-check requires eta < 0");
  }
  const Trajectory traj = constant_cost::integrate(p, horizon, step);

  double max_abs = 0.0;
  std::size_t clamped = 0;
  std::ostringstream csv;
  csv << "t,S,I,residual\n";
  for (const auto& st : traj.states) {
    double res = std::numeric_limits<double>::quiet_NaN();
    try {
      res = phase::phase_residual({st.s, st.i}, p);
      max_abs = std::max(max_abs, std::abs(res));
    } catch (const DomainError&) {
      ++clamped;
    }
    csv << io::format_double(st.t) << ',' << io::format_double(st.s) << ','
        << io::format_double(st.i) << ',' << io::format_double(res) << '\n';
  }

  json rep{{"max_abs_residual", max_abs},
           {"points", traj.size()},
           {"clamped_points", clamped}};

  if (compare_eta) {
    ModelParams other = p;
    other.eta = *compare_eta;
    const ValidationReport check = validate(other);
    if (!check.ok()) throw ConfigError(check.to_string());
    const double fs_a = phase::final_size(p);
    const double fs_b = other.eta == 0.0
                            ? standard_sir::standard_final_size(other)
                            : phase::final_size(other);
    const double s_lo = std::max(fs_a, fs_b) * (1.0 + 1e-6);
    const double s_hi = p.s0() * (1.0 - 1e-9);
    const auto cmp =
        phase::path_comparison(p, other, make_grid(s_lo, s_hi, 50, false));
    const ModelParams& lower = p.eta <= other.eta ? p : other;
    rep["comparison"] = {{"eta_a", p.eta},
                         {"eta_b", other.eta},
                         {"max_excess", cmp.max_excess},
                         {"a_below_b", cmp.a_below_b},
                         {"lower_path_eta", lower.eta},
                         {"points", cmp.s_grid.size()}};
  }

  if (!oc.out.empty() && oc.out != "-") {
    write_artifact(oc.out, csv.str());
    std::cout << rep.dump(2) << "\n";
  } else {
    write_artifact("", rep.dump(2) + "\n");
  }
  if (!oc.json_path.empty()) maybe_write(oc.json_path, rep.dump(2) + "\n");
  return 0;
}

// ------------------------------------------------------------ contact-rate

int cmd_contact_rate(const ParamCli& pc, const OutputCli& oc,
                     std::optional<double> alpha, int points) {
  const ModelParams p = assemble_params(pc);
  double a;
  if (alpha) {
    a = *alpha;
  } else {
    if (p.eta == 0.0) {
      throw ConfigError("--alpha is required when eta = 0");
    }
    a = p.c / (p.beta * -p.eta);  // curvature-matched default
  }
  if (!(a > 0.0)) throw ConfigError("alpha must be positive");

  const auto quad = contact_rate::recover_g_quadratic(p);
  const auto cap = contact_rate::capasso_force(a, p.beta);

  std::ostringstream csv;
  io::write_contact_csv(csv, quad, cap, static_cast<std::size_t>(points));
  write_artifact(oc.out, csv.str());

  if (!oc.json_path.empty()) {
    const auto aq = contact_rate::check_assumptions(quad);
    const auto ac = contact_rate::check_assumptions(cap);
    json rep{{"alpha", a},
             {"quadratic",
              {{"zero_at_zero", aq.zero_at_zero},
               {"positive_initial_slope", aq.positive_initial_slope},
               {"below_tangent", aq.below_tangent},
               {"gprime0", aq.gprime0}}},
             {"capasso",
              {{"zero_at_zero", ac.zero_at_zero},
               {"positive_initial_slope", ac.positive_initial_slope},
               {"below_tangent", ac.below_tangent},
               {"gprime0", ac.gprime0}}}};
    maybe_write(oc.json_path, rep.dump(2) + "\n");
  }
  if (!oc.svg_path.empty()) {
    svg::Series sq, sc;
    sq.label = "quadratic cost";
    sc.label = "saturating contact";
    sc.dashed = true;
    for (int k = 0; k < points; ++k) {
      const double x = static_cast<double>(k) / (points - 1);
      sq.points.emplace_back(x, quad.g(x));
      sc.points.emplace_back(x, cap.g(x));
    }
    svg::ChartOptions ch;
    ch.title = "Force of infection";
    ch.x_label = "I";
    ch.y_label = "g(I)";
    maybe_write(oc.svg_path, svg::render(ch, {sq, sc}));
  }
  return 0;
}

}  // namespace

int run_main(int argc, char** argv) {
  CLI::App app{"equilibrium-distancing SIR toolkit"};
  app.require_subcommand(1);

  struct {
    ParamCli params;
    OutputCli out;
    std::string model = "constant";
    double horizon = constant_cost::kDefaultHorizonDays;
    double step = constant_cost::kDefaultStepDays;
    std::string svg_phase;
  } sim;
  auto* c_sim = app.add_subcommand("simulate", "integrate one scenario");
  add_param_options(c_sim, sim.params);
  add_output_options(c_sim, sim.out);
  c_sim->add_option("--model", sim.model, "constant | standard | endogenous")
      ->check(CLI::IsMember({"constant", "standard", "endogenous"}));
  c_sim->add_option("--horizon", sim.horizon, "days");
  c_sim->add_option("--step", sim.step, "integrator step, days");
  c_sim->add_option("--svg-phase", sim.svg_phase,
                    "phase-plane chart path (with vs without behavior)");

  struct {
    ParamCli params;
    OutputCli out;
  } ons;
  auto* c_ons = app.add_subcommand("onset", "takeoff conditions report");
  add_param_options(c_ons, ons.params);
  add_output_options(c_ons, ons.out, false, false);

  struct {
    ParamCli params;
    OutputCli out;
    double from = 0.0, to = 0.0;
    int points = 200;
  } fro;
  auto* c_fro = app.add_subcommand("frontier",
                                   "severity-transmissibility frontier");
  add_param_options(c_fro, fro.params);
  add_output_options(c_fro, fro.out);
  c_fro->add_option("--from", fro.from, "beta grid start");
  c_fro->add_option("--to", fro.to, "beta grid end");
  c_fro->add_option("--points", fro.points, "grid size")->check(CLI::Range(2, 100000));

  struct {
    ParamCli params;
    OutputCli out;
    double horizon = constant_cost::kDefaultHorizonDays;
    double step = constant_cost::kDefaultStepDays;
  } pk;
  auto* c_pk = app.add_subcommand("peak", "peak prevalence, both routes");
  add_param_options(c_pk, pk.params);
  add_output_options(c_pk, pk.out, false, false);
  c_pk->add_option("--horizon", pk.horizon, "days");
  c_pk->add_option("--step", pk.step, "integrator step, days");

  struct {
    ParamCli params;
    OutputCli out;
    double horizon = constant_cost::kDefaultHorizonDays;
    double step = constant_cost::kDefaultStepDays;
  } fs;
  auto* c_fs = app.add_subcommand("final-size", "limiting susceptible share");
  add_param_options(c_fs, fs.params);
  add_output_options(c_fs, fs.out, false, false);
  c_fs->add_option("--horizon", fs.horizon, "days");
  c_fs->add_option("--step", fs.step, "integrator step, days");

  struct {
    ParamCli params;
    OutputCli out;
    std::string param;
    double from = 0.0, to = 0.0;
    int points = 200;
    std::string spacing = "auto";
    std::string outcome = "both";
  } sw;
  auto* c_sw = app.add_subcommand("sweep", "comparative statics table");
  add_param_options(c_sw, sw.params);
  add_output_options(c_sw, sw.out);
  c_sw->add_option("--param", sw.param, "swept parameter")
      ->required()
      ->check(CLI::IsMember({"beta", "c", "eta", "i0"}));
  c_sw->add_option("--from", sw.from, "grid start")->required();
  c_sw->add_option("--to", sw.to, "grid end")->required();
  c_sw->add_option("--points", sw.points, "grid size")->check(CLI::Range(2, 100000));
  c_sw->add_option("--spacing", sw.spacing, "auto | linear | log")
      ->check(CLI::IsMember({"auto", "linear", "log"}));
  c_sw->add_option("--outcome", sw.outcome, "peak | final-size | both")
      ->check(CLI::IsMember({"peak", "final-size", "both"}));

  struct {
    ParamCli params;
    OutputCli out;
    double horizon = 400.0 * 365.0;
    double step = 0.05;
    double tol = 1e-8;
    int max_iter = 200;
    double relaxation = 1.0;
  } en;
  auto* c_en = app.add_subcommand("endogenous",
                                  "forward-backward equilibrium solve");
  add_param_options(c_en, en.params);
  add_output_options(c_en, en.out);
  c_en->add_option("--horizon", en.horizon, "days");
  c_en->add_option("--step", en.step, "integrator step, days");
  c_en->add_option("--tol", en.tol, "joint sup-norm tolerance");
  c_en->add_option("--max-iter", en.max_iter, "iteration cap");
  c_en->add_option("--relaxation", en.relaxation, "update weight");

  struct {
    ParamCli params;
    OutputCli out;
    double horizon = constant_cost::kDefaultHorizonDays;
    double step = constant_cost::kDefaultStepDays;
    std::optional<double> compare_eta;
  } ph;
  auto* c_ph = app.add_subcommand("phase-check",
                                  "implicit-solution residual diagnostics");
  add_param_options(c_ph, ph.params);
  add_output_options(c_ph, ph.out, true, false);
  c_ph->add_option("--horizon", ph.horizon, "days");
  c_ph->add_option("--step", ph.step, "integrator step, days");
  c_ph->add_option("--compare-eta", ph.compare_eta,
                   "second infection cost; reports path ordering");

  struct {
    ParamCli params;
    OutputCli out;
    std::optional<double> alpha;
    int points = 1001;
  } cr;
  auto* c_cr = app.add_subcommand("contact-rate",
                                  "force-of-infection bridge table");
  add_param_options(c_cr, cr.params);
  add_output_options(c_cr, cr.out);
  c_cr->add_option("--alpha", cr.alpha, "saturation scale");
  c_cr->add_option("--points", cr.points, "grid size")->check(CLI::Range(2, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (c_sim->parsed()) {
      return cmd_simulate(sim.params, sim.out, sim.model, sim.horizon,
                          sim.step, sim.svg_phase);
    }
    if (c_ons->parsed()) return cmd_onset(ons.params, ons.out);
    if (c_fro->parsed()) {
      return cmd_frontier(fro.params, fro.out, fro.from, fro.to, fro.points);
    }
    if (c_pk->parsed()) {
      return cmd_peak(pk.params, pk.out, pk.horizon, pk.step);
    }
    if (c_fs->parsed()) {
      return cmd_final_size(fs.params, fs.out, fs.horizon, fs.step);
    }
    if (c_sw->parsed()) {
      return cmd_sweep(sw.params, sw.out, sw.param, sw.from, sw.to, sw.points,
                       sw.spacing, sw.outcome);
    }
    if (c_en->parsed()) {
      return cmd_endogenous(en.params, en.out, en.horizon, en.step, en.tol,
                            en.max_iter, en.relaxation);
    }
    if (c_ph->parsed()) {
      return cmd_phase_check(ph.params, ph.out, ph.horizon, ph.step,
                             ph.compare_eta);
    }
    if (c_cr->parsed()) {
      return cmd_contact_rate(cr.params, cr.out, cr.alpha, cr.points);
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const SimulationError& e) {
    const json diag{{"error", "numerical_failure"},
                    {"command", command},
                    {"message", e.what()}};
    std::cerr << diag.dump(2) << "\n";
    return 3;
  }
  return 2;
}

}  // namespace epibehave::cli
