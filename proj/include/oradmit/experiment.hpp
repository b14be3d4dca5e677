#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oradmit/config_io.hpp"
#include "oradmit/errors.hpp"
#include "oradmit/exact.hpp"
#include "oradmit/instances.hpp"
#include "oradmit/simulate.hpp"

namespace oradmit {

// ---------------------------------------------------------------------------
// Solver naming

enum class SolverKind { myopic, vi, vi_star, adp, adp_star };

inline const char* to_string(SolverKind k) {
  switch (k) {
    case SolverKind::myopic: return "myopic";
    case SolverKind::vi: return "vi";
    case SolverKind::vi_star: return "vi-star";
    case SolverKind::adp: return "adp";
    case SolverKind::adp_star: return "adp-star";
  }
  return "?";
}

inline SolverKind solver_by_name(const std::string& name) {
  if (name == "myopic") return SolverKind::myopic;
  if (name == "vi") return SolverKind::vi;
  if (name == "vi-star") return SolverKind::vi_star;
  if (name == "adp") return SolverKind::adp;
  if (name == "adp-star") return SolverKind::adp_star;
  throw std::invalid_argument(
      "unknown solver '" + name +
      "' (known: myopic, vi, vi-star, adp, adp-star)");
}

// ---------------------------------------------------------------------------
// CSV plumbing. Values are written in shortest-round-trip form so reruns of
// the same experiment produce byte-identical files.

namespace detail {

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct CsvWriter {
  std::ofstream f;
  explicit CsvWriter(const std::filesystem::path& path) : f(path) {
    if (!f) throw std::runtime_error("cannot write " + path.string());
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) f << ',';
      f << csv_quote(cells[i]);
    }
    f << '\n';
  }
};

inline std::string cell(double v) { return format_double(v); }
inline std::string cell(std::uint64_t v) { return std::to_string(v); }
inline std::string cell(int v) { return std::to_string(v); }

// Population mean/std of one WeekRecord field across the horizon.
template <typename Get>
std::pair<double, double> over_weeks(const std::vector<WeekRecord>& weeks,
                                     Get&& get) {
  double sum = 0.0, sq = 0.0;
  for (const auto& w : weeks) {
    const double x = get(w);
    sum += x;
    sq += x * x;
  }
  const double n = weeks.empty() ? 1.0 : double(weeks.size());
  const double mean = sum / n;
  return {mean, std::sqrt(std::max(0.0, sq / n - mean * mean))};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Experiment: simulate a set of solvers on one instance under shared arrival
// draws, writing one weekly CSV per solver plus a long-format aggregate.

struct ExperimentSpec {
  ProblemConfig config;
  int caps_minus = 0;  // shrink every arrival cap by this much first
  std::vector<SolverKind> solvers;
  int weeks = 52;
  int scenarios = 10000;
  std::uint64_t master_seed = 1;
  RlsOptions rls;
  SolveOptions solve;
};

struct SolverOutcome {
  SolverKind kind = SolverKind::myopic;
  SimulationResult sim;
  // exact-solver diagnostics, zero for table-free policies
  std::uint32_t sweeps = 0;
  double residual = 0.0;
  bool converged = false;
};

struct ExperimentResult {
  std::vector<SolverOutcome> outcomes;
  std::vector<std::string> files;  // everything written, manifest included
  std::filesystem::path dir;
};

inline nlohmann::json manifest_json(const ExperimentSpec& spec,
                                    const std::vector<std::string>& outputs) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["kind"] = "experiment";
  j["config"] = format_config(spec.config);
  j["caps_minus"] = spec.caps_minus;
  std::vector<std::string> names;
  for (auto k : spec.solvers) names.push_back(to_string(k));
  j["solvers"] = names;
  j["weeks"] = spec.weeks;
  j["scenarios"] = spec.scenarios;
  j["master_seed"] = spec.master_seed;
  j["rls"] = {{"lambda", spec.rls.lambda},
              {"beta", spec.rls.beta},
              {"epsilon", spec.rls.epsilon},
              {"depth", spec.rls.depth},
              {"max_trajectories", spec.rls.max_trajectories},
              {"q_floor", spec.rls.q_floor},
              {"resymmetrize_every", spec.rls.resymmetrize_every}};
  j["solve"] = {{"stop_residual", spec.solve.stop_residual},
                {"max_sweeps", spec.solve.max_sweeps},
                {"max_states", spec.solve.max_states},
                {"summary_budget_bytes", spec.solve.summary_budget_bytes}};
  j["outputs"] = outputs;
  return j;
}

namespace detail {

inline void write_weekly_csv(const std::filesystem::path& path,
                             const SimulationResult& sim, int specialties) {
  CsvWriter csv(path);
  std::vector<std::string> header = {
      "week",           "waiting",       "admitted",
      "arrivals",       "patient_cost",  "hospital_cost_mean",
      "hospital_cost_std", "total_cost", "shortage_mean",
      "shortage_std"};
  for (int j = 1; j <= specialties; ++j) {
    header.push_back("ot" + std::to_string(j) + "_mean");
    header.push_back("ot" + std::to_string(j) + "_std");
  }
  header.insert(header.end(),
                {"actions_searched", "actions_full", "decision_ms"});
  csv.row(header);
  for (const auto& w : sim.weeks) {
    std::vector<std::string> row = {
        cell(w.week),
        cell(w.waiting),
        cell(w.admitted),
        cell(w.arrivals),
        cell(w.patient_cost),
        cell(w.hospital.cost_mean),
        cell(w.hospital.cost_std),
        cell(w.total_cost),
        cell(w.hospital.shortage_mean),
        cell(w.hospital.shortage_std)};
    for (int j = 0; j < specialties; ++j) {
      row.push_back(cell(w.hospital.overtime_mean[j]));
      row.push_back(cell(w.hospital.overtime_std[j]));
    }
    row.push_back(cell(w.actions_searched));
    row.push_back(cell(w.actions_full));
    row.push_back(cell(w.decision_seconds * 1000.0));
    csv.row(row);
  }
}

inline void write_aggregate_csv(const std::filesystem::path& path,
                                const std::vector<SolverOutcome>& outcomes,
                                int specialties) {
  CsvWriter csv(path);
  csv.row({"policy", "metric", "mean", "std"});
  for (const auto& oc : outcomes) {
    const auto& sim = oc.sim;
    auto put = [&](const std::string& metric, std::pair<double, double> ms) {
      csv.row({sim.policy, metric, cell(ms.first), cell(ms.second)});
    };
    put("patient_cost", over_weeks(sim.weeks, [](const WeekRecord& w) {
          return w.patient_cost;
        }));
    put("hospital_cost", over_weeks(sim.weeks, [](const WeekRecord& w) {
          return w.hospital.cost_mean;
        }));
    put("total_cost", over_weeks(sim.weeks, [](const WeekRecord& w) {
          return w.total_cost;
        }));
    for (int j = 0; j < specialties; ++j)
      put("overtime_" + std::to_string(j + 1),
          over_weeks(sim.weeks, [j](const WeekRecord& w) {
            return w.hospital.overtime_mean[j];
          }));
    put("shortage", over_weeks(sim.weeks, [](const WeekRecord& w) {
          return w.hospital.shortage_mean;
        }));
    for (std::size_t j = 0; j < sim.waits.size(); ++j)
      for (std::size_t g = 0; g < sim.waits[j].size(); ++g)
        put("wait_" + std::to_string(j + 1) + "_" + std::to_string(g + 1),
            {sim.waits[j][g].mean(), sim.waits[j][g].std()});
    put("admitted", over_weeks(sim.weeks, [](const WeekRecord& w) {
          return double(w.admitted);
        }));
    put("arrivals", over_weeks(sim.weeks, [](const WeekRecord& w) {
          return double(w.arrivals);
        }));
    put("actions_searched", over_weeks(sim.weeks, [](const WeekRecord& w) {
          return w.actions_searched;
        }));
    put("actions_full", over_weeks(sim.weeks, [](const WeekRecord& w) {
          return w.actions_full;
        }));
    double searched = 0.0, full = 0.0;
    for (const auto& w : sim.weeks) {
      searched += w.actions_searched;
      full += w.actions_full;
    }
    put("actions_ratio", {full > 0.0 ? searched / full : 0.0, 0.0});
    put("decision_ms", over_weeks(sim.weeks, [](const WeekRecord& w) {
          return w.decision_seconds * 1000.0;
        }));
  }
}

}  // namespace detail

inline ExperimentResult run_experiment(const ExperimentSpec& spec,
                                       const std::filesystem::path& dir) {
  const ProblemConfig cfg = spec.caps_minus > 0
                                ? with_caps_reduced(spec.config, spec.caps_minus)
                                : spec.config;
  Model model(cfg);
  const int J = model.layout().specialty_count();

  SimulationPlan plan;
  plan.weeks = spec.weeks;
  plan.scenarios = spec.scenarios;
  plan.master_seed = spec.master_seed;

  std::filesystem::create_directories(dir);
  ExperimentResult result;
  result.dir = dir;

  for (SolverKind kind : spec.solvers) {
    SolverOutcome oc;
    oc.kind = kind;
    std::unique_ptr<Policy> policy;
    switch (kind) {
      case SolverKind::myopic:
        policy = std::make_unique<MyopicPolicy>(model);
        break;
      case SolverKind::vi:
      case SolverKind::vi_star: {
        const auto source = kind == SolverKind::vi ? ActionSource::full
                                                   : ActionSource::reduced;
        SolveOptions so = spec.solve;
        so.extract_policy = false;
        auto solved = value_iteration(model, source, so);
        oc.sweeps = solved.values.sweeps;
        oc.residual = solved.values.residual;
        oc.converged = solved.values.converged;
        policy = std::make_unique<GreedyTablePolicy>(
            model, std::move(solved.values), source, to_string(kind));
        break;
      }
      case SolverKind::adp:
      case SolverKind::adp_star: {
        const auto source = kind == SolverKind::adp ? ActionSource::full
                                                    : ActionSource::reduced;
        policy = std::make_unique<AdpPolicy>(model, spec.master_seed, spec.rls,
                                             source, to_string(kind));
        break;
      }
    }
    oc.sim = run_simulation(model, *policy, plan);
    const std::string file = "weekly_" + std::string(to_string(kind)) + ".csv";
    detail::write_weekly_csv(dir / file, oc.sim, J);
    result.files.push_back(file);
    result.outcomes.push_back(std::move(oc));
  }

  detail::write_aggregate_csv(dir / "aggregate.csv", result.outcomes, J);
  result.files.push_back("aggregate.csv");

  auto manifest = manifest_json(spec, result.files);
  std::ofstream mf(dir / "manifest.json");
  if (!mf) throw std::runtime_error("cannot write manifest.json");
  mf << manifest.dump(2) << "\n";
  result.files.push_back("manifest.json");
  return result;
}

// ---------------------------------------------------------------------------
// Parameter sweeps: vary one scalar knob across values and seeds under one
// policy, recording seed-level aggregates plus a seed-averaged summary.

inline void set_parameter(ProblemConfig& cfg, const std::string& name,
                          double value) {
  if (name == "overtime_cost_per_hour") cfg.overtime_cost_per_hour = value;
  else if (name == "shortage_cost_per_bed_day")
    cfg.shortage_cost_per_bed_day = value;
  else if (name == "surgery_cost_per_priority")
    cfg.surgery_cost_per_priority = value;
  else if (name == "waiting_cost_per_priority")
    cfg.waiting_cost_per_priority = value;
  else if (name == "sicu_capacity_bed_days") cfg.sicu_capacity_bed_days = value;
  else if (name == "or_availability") cfg.or_availability = value;
  else if (name == "sicu_availability") cfg.sicu_availability = value;
  else if (name == "discount") cfg.discount = value;
  else if (name.rfind("or_capacity_hours:", 0) == 0) {
    const std::size_t j = std::stoul(name.substr(18));
    if (j < 1 || j > cfg.specialties.size())
      throw std::invalid_argument("no specialty " + std::to_string(j));
    cfg.specialties[j - 1].or_capacity_hours = value;
  } else {
    throw std::invalid_argument(
        "unknown sweep parameter '" + name +
        "' (costs, capacities, availabilities, discount, or "
        "or_capacity_hours:<j>)");
  }
}

struct SweepSpec {
  ProblemConfig config;
  int caps_minus = 0;
  SolverKind solver = SolverKind::myopic;
  std::string parameter;
  std::vector<double> values;
  std::vector<std::uint64_t> seeds = {1};
  int weeks = 52;
  int scenarios = 1000;
  RlsOptions rls;
  SolveOptions solve;
};

struct SweepPoint {
  double value = 0.0;
  std::uint64_t seed = 0;
  std::string status;  // "ok" or the failure reason
  double mean_total_cost = 0.0;
  double mean_patient_cost = 0.0;
  double mean_hospital_cost = 0.0;
  double mean_overtime_hours = 0.0;  // summed over specialties
  double mean_shortage_bed_days = 0.0;
  std::uint64_t total_admitted = 0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::vector<std::string> files;
  std::filesystem::path dir;
};

inline nlohmann::json manifest_json(const SweepSpec& spec,
                                    const std::vector<std::string>& outputs) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["kind"] = "sweep";
  j["config"] = format_config(spec.config);
  j["caps_minus"] = spec.caps_minus;
  j["solver"] = to_string(spec.solver);
  j["parameter"] = spec.parameter;
  j["values"] = spec.values;
  j["seeds"] = spec.seeds;
  j["weeks"] = spec.weeks;
  j["scenarios"] = spec.scenarios;
  j["rls"] = {{"lambda", spec.rls.lambda},
              {"beta", spec.rls.beta},
              {"epsilon", spec.rls.epsilon},
              {"depth", spec.rls.depth},
              {"max_trajectories", spec.rls.max_trajectories},
              {"q_floor", spec.rls.q_floor},
              {"resymmetrize_every", spec.rls.resymmetrize_every}};
  j["solve"] = {{"stop_residual", spec.solve.stop_residual},
                {"max_sweeps", spec.solve.max_sweeps},
                {"max_states", spec.solve.max_states},
                {"summary_budget_bytes", spec.solve.summary_budget_bytes}};
  j["outputs"] = outputs;
  return j;
}

inline SweepResult run_sweep(const SweepSpec& spec,
                             const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  SweepResult result;
  result.dir = dir;

  for (double value : spec.values) {
    for (std::uint64_t seed : spec.seeds) {
      SweepPoint pt;
      pt.value = value;
      pt.seed = seed;
      try {
        // Simulate directly; per-point output directories would drown the
        // sweep in files.
        ProblemConfig cfg = spec.config;
        set_parameter(cfg, spec.parameter, value);
        if (spec.caps_minus > 0) cfg = with_caps_reduced(cfg, spec.caps_minus);
        Model model(cfg);
        SimulationPlan plan;
        plan.weeks = spec.weeks;
        plan.scenarios = spec.scenarios;
        plan.master_seed = seed;
        std::unique_ptr<Policy> policy;
        switch (spec.solver) {
          case SolverKind::myopic:
            policy = std::make_unique<MyopicPolicy>(model);
            break;
          case SolverKind::vi:
          case SolverKind::vi_star: {
            const auto source = spec.solver == SolverKind::vi
                                    ? ActionSource::full
                                    : ActionSource::reduced;
            SolveOptions so = spec.solve;
            so.extract_policy = false;
            policy = std::make_unique<GreedyTablePolicy>(
                model, value_iteration(model, source, so).values, source,
                to_string(spec.solver));
            break;
          }
          case SolverKind::adp:
          case SolverKind::adp_star: {
            const auto source = spec.solver == SolverKind::adp
                                    ? ActionSource::full
                                    : ActionSource::reduced;
            policy = std::make_unique<AdpPolicy>(model, seed, spec.rls, source,
                                                 to_string(spec.solver));
            break;
          }
        }
        const auto sim = run_simulation(model, *policy, plan);
        pt.status = "ok";
        pt.mean_total_cost = sim.mean_total_cost;
        pt.mean_patient_cost = sim.mean_patient_cost;
        pt.mean_hospital_cost = sim.mean_hospital_cost;
        pt.total_admitted = sim.total_admitted;
        auto [ot, ot_std] =
            detail::over_weeks(sim.weeks, [](const WeekRecord& w) {
              double t = 0.0;
              for (double h : w.hospital.overtime_mean) t += h;
              return t;
            });
        (void)ot_std;
        pt.mean_overtime_hours = ot;
        auto [sh, sh_std] =
            detail::over_weeks(sim.weeks, [](const WeekRecord& w) {
              return w.hospital.shortage_mean;
            });
        (void)sh_std;
        pt.mean_shortage_bed_days = sh;
      } catch (const std::exception& e) {
        pt.status = std::string("error: ") + e.what();
      }
      result.points.push_back(std::move(pt));
    }
  }

  {
    detail::CsvWriter csv(dir / "sweep.csv");
    csv.row({"parameter", "value", "seed", "status", "mean_total_cost",
             "mean_patient_cost", "mean_hospital_cost", "mean_overtime_hours",
             "mean_shortage_bed_days", "total_admitted"});
    for (const auto& pt : result.points)
      csv.row({spec.parameter, detail::cell(pt.value), detail::cell(pt.seed),
               pt.status, detail::cell(pt.mean_total_cost),
               detail::cell(pt.mean_patient_cost),
               detail::cell(pt.mean_hospital_cost),
               detail::cell(pt.mean_overtime_hours),
               detail::cell(pt.mean_shortage_bed_days),
               detail::cell(pt.total_admitted)});
    result.files.push_back("sweep.csv");
  }
  {
    detail::CsvWriter csv(dir / "sweep_summary.csv");
    csv.row({"parameter", "value", "metric", "mean_over_seeds"});
    for (double value : spec.values) {
      double cost = 0.0, patient = 0.0, hospital = 0.0, ot = 0.0, sh = 0.0;
      int n = 0;
      for (const auto& pt : result.points)
        if (pt.value == value && pt.status == "ok") {
          cost += pt.mean_total_cost;
          patient += pt.mean_patient_cost;
          hospital += pt.mean_hospital_cost;
          ot += pt.mean_overtime_hours;
          sh += pt.mean_shortage_bed_days;
          ++n;
        }
      if (!n) continue;
      auto put = [&](const std::string& metric, double sum) {
        csv.row({spec.parameter, detail::cell(value), metric,
                 detail::cell(sum / n)});
      };
      put("mean_total_cost", cost);
      put("mean_patient_cost", patient);
      put("mean_hospital_cost", hospital);
      put("mean_overtime_hours", ot);
      put("mean_shortage_bed_days", sh);
    }
    result.files.push_back("sweep_summary.csv");
  }

  auto manifest = manifest_json(spec, result.files);
  std::ofstream mf(dir / "manifest.json");
  if (!mf) throw std::runtime_error("cannot write manifest.json");
  mf << manifest.dump(2) << "\n";
  result.files.push_back("manifest.json");
  return result;
}

// ---------------------------------------------------------------------------
// Manifest rerun: reproduce a previous output directory from its manifest.

inline RlsOptions rls_from_json(const nlohmann::json& j) {
  RlsOptions r;
  r.lambda = j.at("lambda").get<double>();
  r.beta = j.at("beta").get<double>();
  r.epsilon = j.at("epsilon").get<double>();
  r.depth = j.at("depth").get<int>();
  r.max_trajectories = j.at("max_trajectories").get<int>();
  r.q_floor = j.at("q_floor").get<double>();
  r.resymmetrize_every = j.at("resymmetrize_every").get<int>();
  return r;
}

inline SolveOptions solve_from_json(const nlohmann::json& j) {
  SolveOptions s;
  s.stop_residual = j.at("stop_residual").get<double>();
  s.max_sweeps = j.at("max_sweeps").get<std::uint32_t>();
  s.max_states = j.at("max_states").get<std::uint64_t>();
  s.summary_budget_bytes = j.at("summary_budget_bytes").get<double>();
  return s;
}

inline void rerun_manifest(const std::filesystem::path& manifest_path,
                           const std::filesystem::path& out_dir) {
  std::ifstream f(manifest_path);
  if (!f) throw ParseError("cannot open " + manifest_path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(manifest_path.string() + ": " + e.what());
  }
  try {
    if (j.at("format_version").get<int>() != 1)
      throw ParseError(manifest_path.string() +
                       ": unsupported manifest format version");
    std::istringstream cfg_text(j.at("config").get<std::string>());
    const ProblemConfig cfg = parse_config(cfg_text);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "experiment") {
      ExperimentSpec spec;
      spec.config = cfg;
      spec.caps_minus = j.at("caps_minus").get<int>();
      for (const auto& name : j.at("solvers"))
        spec.solvers.push_back(solver_by_name(name.get<std::string>()));
      spec.weeks = j.at("weeks").get<int>();
      spec.scenarios = j.at("scenarios").get<int>();
      spec.master_seed = j.at("master_seed").get<std::uint64_t>();
      spec.rls = rls_from_json(j.at("rls"));
      spec.solve = solve_from_json(j.at("solve"));
      run_experiment(spec, out_dir);
    } else if (kind == "sweep") {
      SweepSpec spec;
      spec.config = cfg;
      spec.caps_minus = j.at("caps_minus").get<int>();
      spec.solver = solver_by_name(j.at("solver").get<std::string>());
      spec.parameter = j.at("parameter").get<std::string>();
      spec.values = j.at("values").get<std::vector<double>>();
      spec.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
      spec.weeks = j.at("weeks").get<int>();
      spec.scenarios = j.at("scenarios").get<int>();
      spec.rls = rls_from_json(j.at("rls"));
      spec.solve = solve_from_json(j.at("solve"));
      run_sweep(spec, out_dir);
    } else {
      throw ParseError(manifest_path.string() + ": unknown kind '" + kind +
                       "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(manifest_path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// CSV comparison for reproducibility checks; returns human-readable
// difference descriptions, empty when the files agree. A masked name
// suppresses both the column with that header and, in long-format files,
// every row whose `metric` cell carries it (timing rows, typically).

inline std::vector<std::string> csv_diff(
    const std::filesystem::path& a, const std::filesystem::path& b,
    const std::vector<std::string>& masked = {"decision_ms"},
    std::size_t max_diffs = 20) {
  auto read_lines = [](const std::filesystem::path& p) {
    std::ifstream f(p);
    if (!f) throw std::runtime_error("cannot read " + p.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(f, line)) lines.push_back(line);
    return lines;
  };
  auto split = [](const std::string& line) {
    // Unquoting is unnecessary here: masked columns are matched by header
    // name and numeric cells never contain commas.
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
      if (c == '"') quoted = !quoted;
      else if (c == ',' && !quoted) {
        cells.push_back(std::move(cur));
        cur.clear();
      } else cur += c;
    }
    cells.push_back(std::move(cur));
    return cells;
  };

  std::vector<std::string> diffs;
  const auto la = read_lines(a), lb = read_lines(b);
  if (la.size() != lb.size()) {
    diffs.push_back(a.filename().string() + ": " + std::to_string(la.size()) +
                    " lines vs " + std::to_string(lb.size()));
    return diffs;
  }
  if (la.empty()) return diffs;

  const auto header = split(la[0]);
  if (header != split(lb[0])) {
    diffs.push_back(a.filename().string() + ": headers differ");
    return diffs;
  }
  std::vector<bool> skip(header.size(), false);
  for (std::size_t c = 0; c < header.size(); ++c)
    for (const auto& m : masked)
      if (header[c] == m) skip[c] = true;

  for (std::size_t r = 1; r < la.size(); ++r) {
    if (la[r] == lb[r]) continue;
    const auto ca = split(la[r]), cb = split(lb[r]);
    for (std::size_t c = 0; c < std::max(ca.size(), cb.size()); ++c) {
      const std::string va = c < ca.size() ? ca[c] : "<missing>";
      const std::string vb = c < cb.size() ? cb[c] : "<missing>";
      if (va == vb || (c < skip.size() && skip[c])) continue;
      diffs.push_back(a.filename().string() + " row " + std::to_string(r) +
                      " col " + (c < header.size() ? header[c] : "?") + ": '" +
                      va + "' vs '" + vb + "'");
      if (diffs.size() >= max_diffs) return diffs;
    }
  }
  return diffs;
}

}  // namespace oradmit
