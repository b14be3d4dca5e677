// Command-line front end: validate instances, solve small ones exactly,
// simulate admission policies, sweep parameters, and compare result files.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oradmit/oradmit.hpp"

namespace {

using namespace oradmit;

struct InstanceOpts {
  std::string instance;
  std::string config_file;
  int caps_minus = 0;
};

void add_instance_opts(CLI::App* cmd, InstanceOpts& opts) {
  auto* inst = cmd->add_option("-i,--instance", opts.instance,
                               "built-in instance name (small-2spec, cabg, "
                               "multi-9spec)");
  auto* file = cmd->add_option("-c,--config", opts.config_file,
                               "instance config file");
  inst->excludes(file);
  cmd->add_option("--caps-minus", opts.caps_minus,
                  "shrink every arrival cap by this many patients")
      ->check(CLI::NonNegativeNumber);
}

ProblemConfig resolve_config(const InstanceOpts& opts) {
  if (opts.instance.empty() && opts.config_file.empty())
    throw CLI::ValidationError("one of --instance or --config is required");
  ProblemConfig cfg = opts.instance.empty() ? load_config(opts.config_file)
                                            : instance_by_name(opts.instance);
  if (opts.caps_minus > 0) cfg = with_caps_reduced(cfg, opts.caps_minus);
  return cfg;
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-') ? c : '-';
  return out.empty() ? "custom" : out;
}

std::filesystem::path resolve_out_dir(const std::string& explicit_out,
                                      const std::string& fallback) {
  if (!explicit_out.empty()) return explicit_out;
  if (const char* base = std::getenv("ORADMIT_OUT"))
    return std::filesystem::path(base) / fallback;
  return std::filesystem::path("oradmit-out") / fallback;
}

void print_structure(const ProblemConfig& cfg) {
  const Layout layout(cfg);
  std::cout << "types: " << layout.type_count()
            << "  pairs: " << layout.pair_count()
            << "  specialties: " << layout.specialty_count() << "\n";
  for (int p = 0; p < layout.pair_count(); ++p) {
    const auto& pi = layout.pair(p);
    std::cout << "  pair " << p + 1 << ": specialty " << pi.specialty + 1
              << " coeff " << pi.ucoeff << " max_wait " << pi.max_wait
              << " rate " << pi.rate;
    if (pi.cap >= 0)
      std::cout << " cap " << pi.cap;
    else
      std::cout << " cap unbounded";
    std::cout << "\n";
  }
  if (layout.enumerable()) {
    if (layout.fits_u64()) {
      std::cout << "states: " << layout.state_count() << "\n";
      Model model(cfg);
      const double full = total_action_count(model, ActionSource::full);
      const double reduced = total_action_count(model, ActionSource::reduced);
      std::cout << "actions over all states: full " << full << ", reduced "
                << reduced << ", ratio " << reduced / full << "\n";
    } else {
      std::cout << "states: about 1e" << layout.log10_state_count()
                << " (not enumerable)\n";
    }
  } else {
    std::cout << "states: unbounded (arrival truncation disabled)\n";
  }
}

int cmd_validate(const InstanceOpts& inst, const std::string& export_path,
                 bool allow_cheap_waiting) {
  ProblemConfig cfg = inst.instance.empty() ? load_config(inst.config_file)
                                            : instance_by_name(inst.instance);
  if (inst.caps_minus > 0) cfg = with_caps_reduced(cfg, inst.caps_minus);
  ValidateOptions vopts;
  vopts.allow_waiting_cheaper_than_surgery = allow_cheap_waiting;
  const auto report = validate(cfg, vopts);
  for (const auto& w : report.warnings) std::cout << "warning: " << w << "\n";
  if (!report.ok()) {
    for (const auto& e : report.errors) std::cerr << "error: " << e << "\n";
    return 2;
  }
  std::cout << "config ok";
  if (!cfg.name.empty()) std::cout << " (" << cfg.name << ")";
  std::cout << "\n";
  print_structure(cfg);
  if (!export_path.empty()) {
    save_config(export_path, cfg);
    std::cout << "wrote " << export_path << "\n";
  }
  return 0;
}

int cmd_solve_exact(const InstanceOpts& inst, const std::string& source_name,
                    const SolveOptions& solve, const std::string& values_out,
                    const std::string& policy_out) {
  const ProblemConfig cfg = resolve_config(inst);
  Model model(cfg);
  const ActionSource source = source_name == "full" ? ActionSource::full
                                                    : ActionSource::reduced;
  SolveOptions opts = solve;
  opts.extract_policy = !policy_out.empty();
  const auto result = value_iteration(model, source, opts);
  const auto& vt = result.values;
  std::cout << "source: " << to_string(source) << "\n"
            << "sweeps: " << vt.sweeps << "\n"
            << "residual: " << vt.residual << "\n"
            << "converged: " << (vt.converged ? "yes" : "no") << "\n"
            << "value(empty list): " << vt.v[0] << "\n";
  if (!vt.converged)
    std::cerr << "warning: sweep limit reached before the residual target\n";
  if (!values_out.empty()) {
    save_value_table(values_out, vt);
    std::cout << "wrote " << values_out << "\n";
  }
  if (!policy_out.empty()) {
    save_policy_table(policy_out, result.policy);
    std::cout << "wrote " << policy_out << "\n";
  }
  return 0;
}

int cmd_simulate(const InstanceOpts& inst,
                 const std::vector<std::string>& solver_names,
                 ExperimentSpec spec, const std::string& out) {
  spec.config = resolve_config(inst);
  for (const auto& name : solver_names)
    spec.solvers.push_back(solver_by_name(name));
  if (spec.solvers.empty())
    throw CLI::ValidationError("at least one --solver is required");
  const auto dir = resolve_out_dir(
      out, sanitize(spec.config.name) + "-experiment");
  const auto result = run_experiment(spec, dir);
  for (const auto& oc : result.outcomes) {
    std::cout << oc.sim.policy << ": mean weekly cost "
              << oc.sim.mean_total_cost << " (patient "
              << oc.sim.mean_patient_cost << ", hospital "
              << oc.sim.mean_hospital_cost << ")";
    if (oc.kind == SolverKind::vi || oc.kind == SolverKind::vi_star)
      std::cout << "  [" << oc.sweeps << " sweeps, residual " << oc.residual
                << (oc.converged ? "" : ", NOT converged") << "]";
    std::cout << "\n";
  }
  std::cout << "wrote " << result.files.size() << " files to "
            << result.dir.string() << "\n";
  return 0;
}

int cmd_sweep(const InstanceOpts& inst, SweepSpec spec,
              const std::string& solver_name, const std::string& out) {
  spec.config = resolve_config(inst);
  spec.solver = solver_by_name(solver_name);
  const auto dir = resolve_out_dir(
      out, sanitize(spec.config.name) + "-sweep-" + sanitize(spec.parameter));
  const auto result = run_sweep(spec, dir);
  int failed = 0;
  for (const auto& pt : result.points)
    if (pt.status != "ok") ++failed;
  std::cout << result.points.size() << " sweep points";
  if (failed) std::cout << " (" << failed << " failed, see sweep.csv)";
  std::cout << ", wrote " << result.files.size() << " files to "
            << result.dir.string() << "\n";
  return 0;
}

int cmd_compare(const std::string& a, const std::string& b,
                const std::vector<std::string>& mask) {
  const auto diffs = csv_diff(a, b, mask);
  if (diffs.empty()) {
    std::cout << "files match (masked: ";
    for (std::size_t i = 0; i < mask.size(); ++i)
      std::cout << (i ? ", " : "") << mask[i];
    std::cout << ")\n";
    return 0;
  }
  for (const auto& d : diffs) std::cout << d << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elective-admission planning: exact and simulation-based "
               "policies for weekly surgery scheduling"};
  app.set_version_flag("--version", oradmit::version_string);
  app.require_subcommand(1);

  // validate
  InstanceOpts val_inst;
  std::string export_path;
  bool allow_cheap_waiting = false;
  auto* val = app.add_subcommand(
      "validate", "check an instance and print its structure");
  add_instance_opts(val, val_inst);
  val->add_option("--export", export_path,
                  "write the instance back out as a canonical config file");
  val->add_flag("--allow-cheap-waiting", allow_cheap_waiting,
                "demote the waiting-cheaper-than-surgery error to a warning");

  // solve-exact
  InstanceOpts solve_inst;
  std::string source_name = "reduced";
  oradmit::SolveOptions solve_opts;
  std::string values_out, policy_out;
  auto* solve = app.add_subcommand(
      "solve-exact", "value-iterate a small instance to convergence");
  add_instance_opts(solve, solve_inst);
  solve->add_option("--source", source_name, "action family to search")
      ->check(CLI::IsMember({"full", "reduced"}))
      ->capture_default_str();
  solve->add_option("--residual", solve_opts.stop_residual,
                    "stop when the sweep residual drops below this "
                    "(default 1e-6/(1-discount))");
  solve->add_option("--max-sweeps", solve_opts.max_sweeps,
                    "sweep limit before giving up")
      ->capture_default_str();
  solve->add_option("--max-states", solve_opts.max_states,
                    "refuse instances with more states than this")
      ->capture_default_str();
  solve->add_option("--values-out", values_out, "write the value table here");
  solve->add_option("--policy-out", policy_out,
                    "extract the greedy policy and write it here");

  // simulate
  InstanceOpts sim_inst;
  std::vector<std::string> solver_names;
  oradmit::ExperimentSpec exp_spec;
  std::string sim_out, sim_manifest;
  auto* sim = app.add_subcommand(
      "simulate", "simulate admission policies week by week");
  add_instance_opts(sim, sim_inst);
  sim->add_option("-s,--solver", solver_names,
                  "policies to simulate (myopic, vi, vi-star, adp, adp-star)")
      ->delimiter(',');
  sim->add_option("-w,--weeks", exp_spec.weeks, "simulation horizon")
      ->capture_default_str();
  sim->add_option("--scenarios", exp_spec.scenarios,
                  "Monte-Carlo draws per week for resource costs")
      ->capture_default_str();
  sim->add_option("--seed", exp_spec.master_seed, "master seed")
      ->capture_default_str();
  sim->add_option("--lambda", exp_spec.rls.lambda, "trace decay")
      ->capture_default_str();
  sim->add_option("--beta", exp_spec.rls.beta, "initial gain scale")
      ->capture_default_str();
  sim->add_option("--epsilon", exp_spec.rls.epsilon,
                  "weight-change stopping threshold")
      ->capture_default_str();
  sim->add_option("--depth", exp_spec.rls.depth, "steps per trajectory")
      ->capture_default_str();
  sim->add_option("--max-trajectories", exp_spec.rls.max_trajectories,
                  "trajectory limit per decision")
      ->capture_default_str();
  sim->add_option("--residual", exp_spec.solve.stop_residual,
                  "exact-solver stopping residual");
  sim->add_option("--max-sweeps", exp_spec.solve.max_sweeps,
                  "exact-solver sweep limit")
      ->capture_default_str();
  sim->add_option("-o,--out", sim_out,
                  "output directory (default: $ORADMIT_OUT or ./oradmit-out)");
  sim->add_option("--manifest", sim_manifest,
                  "rerun a previous run from its manifest.json instead");

  // sweep
  InstanceOpts sweep_inst;
  oradmit::SweepSpec sweep_spec;
  std::string sweep_solver = "myopic", sweep_out, sweep_manifest;
  auto* sweep = app.add_subcommand(
      "sweep", "vary one parameter across values and seeds");
  add_instance_opts(sweep, sweep_inst);
  sweep->add_option("-p,--parameter", sweep_spec.parameter,
                    "knob to vary (e.g. overtime_cost_per_hour, "
                    "sicu_capacity_bed_days, or_capacity_hours:2)");
  sweep->add_option("--values", sweep_spec.values, "values to try")
      ->delimiter(',');
  sweep->add_option("--seeds", sweep_spec.seeds, "master seeds to average")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("-s,--solver", sweep_solver, "policy to simulate")
      ->capture_default_str();
  sweep->add_option("-w,--weeks", sweep_spec.weeks, "simulation horizon")
      ->capture_default_str();
  sweep->add_option("--scenarios", sweep_spec.scenarios,
                    "Monte-Carlo draws per week")
      ->capture_default_str();
  sweep->add_option("--lambda", sweep_spec.rls.lambda, "trace decay")
      ->capture_default_str();
  sweep->add_option("--beta", sweep_spec.rls.beta, "initial gain scale")
      ->capture_default_str();
  sweep->add_option("--epsilon", sweep_spec.rls.epsilon,
                    "weight-change stopping threshold")
      ->capture_default_str();
  sweep->add_option("--depth", sweep_spec.rls.depth, "steps per trajectory")
      ->capture_default_str();
  sweep->add_option("-o,--out", sweep_out,
                    "output directory (default: $ORADMIT_OUT or ./oradmit-out)");
  sweep->add_option("--manifest", sweep_manifest,
                    "rerun a previous sweep from its manifest.json instead");

  // compare
  std::string cmp_a, cmp_b;
  std::vector<std::string> cmp_mask = {"decision_ms"};
  auto* cmp = app.add_subcommand(
      "compare", "diff two result CSVs, ignoring masked columns");
  cmp->add_option("a", cmp_a, "first file")->required();
  cmp->add_option("b", cmp_b, "second file")->required();
  cmp->add_option("--mask", cmp_mask, "column names to ignore")
      ->delimiter(',')
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (val->parsed())
      return cmd_validate(val_inst, export_path, allow_cheap_waiting);
    if (solve->parsed())
      return cmd_solve_exact(solve_inst, source_name, solve_opts, values_out,
                             policy_out);
    if (sim->parsed()) {
      if (!sim_manifest.empty()) {
        const auto dir = resolve_out_dir(sim_out, "rerun");
        oradmit::rerun_manifest(sim_manifest, dir);
        std::cout << "reran " << sim_manifest << " into " << dir.string()
                  << "\n";
        return 0;
      }
      return cmd_simulate(sim_inst, solver_names, exp_spec, sim_out);
    }
    if (sweep->parsed()) {
      if (!sweep_manifest.empty()) {
        const auto dir = resolve_out_dir(sweep_out, "rerun");
        oradmit::rerun_manifest(sweep_manifest, dir);
        std::cout << "reran " << sweep_manifest << " into " << dir.string()
                  << "\n";
        return 0;
      }
      if (sweep_spec.parameter.empty() || sweep_spec.values.empty())
        throw CLI::ValidationError(
            "--parameter and --values are required without --manifest");
      return cmd_sweep(sweep_inst, sweep_spec, sweep_solver, sweep_out);
    }
    if (cmp->parsed()) return cmd_compare(cmp_a, cmp_b, cmp_mask);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const oradmit::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const oradmit::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const oradmit::GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
