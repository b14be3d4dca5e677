#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "oradmit/config.hpp"
#include "oradmit/errors.hpp"

namespace oradmit {

// Plain sectioned key=value files:
//
//   [problem]
//   name = demo
//   discount = 0.95
//
//   [specialty]
//   name = general
//   urgency = coeff=1 max_wait_weeks=3 arrivals_per_week=0.8
//
// '#' starts a comment, one [specialty] section per specialty, urgency lines
// repeat within their section. save_config writes every field, so a loaded
// config saves back to an equivalent file.

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline double parse_double(std::string_view v, int line) {
  double out;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ParseError("line " + std::to_string(line) + ": '" + std::string(v) +
                     "' is not a number");
  return out;
}

inline int parse_int(std::string_view v, int line) {
  int out;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ParseError("line " + std::to_string(line) + ": '" + std::string(v) +
                     "' is not an integer");
  return out;
}

inline bool parse_bool(std::string_view v, int line) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ParseError("line " + std::to_string(line) + ": '" + std::string(v) +
                   "' is not a boolean");
}

inline std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

inline UrgencyGroup parse_urgency(std::string_view value, int line) {
  UrgencyGroup ug;
  bool have_coeff = false, have_wait = false, have_rate = false;
  std::istringstream tokens{std::string(value)};
  std::string tok;
  while (tokens >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(line) +
                       ": urgency fields look like key=value, got '" + tok +
                       "'");
    const std::string_view key(tok.data(), eq);
    const std::string_view val(tok.data() + eq + 1, tok.size() - eq - 1);
    if (key == "coeff") {
      ug.coeff = parse_double(val, line);
      have_coeff = true;
    } else if (key == "max_wait_weeks") {
      ug.max_wait_weeks = parse_int(val, line);
      have_wait = true;
    } else if (key == "arrivals_per_week") {
      ug.arrivals_per_week = parse_double(val, line);
      have_rate = true;
    } else if (key == "arrival_cap") {
      ug.arrival_cap = parse_int(val, line);
    } else {
      throw ParseError("line " + std::to_string(line) +
                       ": unknown urgency field '" + std::string(key) + "'");
    }
  }
  if (!have_coeff || !have_wait || !have_rate)
    throw ParseError("line " + std::to_string(line) +
                     ": urgency needs coeff, max_wait_weeks and "
                     "arrivals_per_week");
  return ug;
}

}  // namespace detail

inline ProblemConfig parse_config(std::istream& in) {
  ProblemConfig cfg;
  enum class Section { none, problem, specialty } section = Section::none;
  bool saw_problem = false;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (const auto hash = s.find('#'); hash != std::string_view::npos)
      s = s.substr(0, hash);
    s = detail::trim(s);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']')
        throw ParseError("line " + std::to_string(line) +
                         ": unterminated section header");
      const auto name = s.substr(1, s.size() - 2);
      if (name == "problem") {
        if (saw_problem)
          throw ParseError("line " + std::to_string(line) +
                           ": duplicate [problem] section");
        saw_problem = true;
        section = Section::problem;
      } else if (name == "specialty") {
        cfg.specialties.emplace_back();
        section = Section::specialty;
      } else {
        throw ParseError("line " + std::to_string(line) +
                         ": unknown section [" + std::string(name) + "]");
      }
      continue;
    }

    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("line " + std::to_string(line) +
                       ": expected key = value");
    const auto key = detail::trim(s.substr(0, eq));
    const auto value = detail::trim(s.substr(eq + 1));

    if (section == Section::none)
      throw ParseError("line " + std::to_string(line) +
                       ": '" + std::string(key) +
                       "' appears before any section header");

    if (section == Section::problem) {
      if (key == "name") cfg.name = std::string(value);
      else if (key == "sicu_capacity_bed_days")
        cfg.sicu_capacity_bed_days = detail::parse_double(value, line);
      else if (key == "or_availability")
        cfg.or_availability = detail::parse_double(value, line);
      else if (key == "sicu_availability")
        cfg.sicu_availability = detail::parse_double(value, line);
      else if (key == "surgery_cost_per_priority")
        cfg.surgery_cost_per_priority = detail::parse_double(value, line);
      else if (key == "waiting_cost_per_priority")
        cfg.waiting_cost_per_priority = detail::parse_double(value, line);
      else if (key == "overtime_cost_per_hour")
        cfg.overtime_cost_per_hour = detail::parse_double(value, line);
      else if (key == "shortage_cost_per_bed_day")
        cfg.shortage_cost_per_bed_day = detail::parse_double(value, line);
      else if (key == "discount")
        cfg.discount = detail::parse_double(value, line);
      else if (key == "truncation_threshold")
        cfg.truncation_threshold = detail::parse_double(value, line);
      else if (key == "truncate_arrivals")
        cfg.truncate_arrivals = detail::parse_bool(value, line);
      else
        throw ParseError("line " + std::to_string(line) +
                         ": unknown [problem] key '" + std::string(key) + "'");
    } else {
      auto& sp = cfg.specialties.back();
      if (key == "name") sp.name = std::string(value);
      else if (key == "importance")
        sp.importance = detail::parse_double(value, line);
      else if (key == "or_capacity_hours")
        sp.or_capacity_hours = detail::parse_double(value, line);
      else if (key == "duration_mean_hours")
        sp.duration_mean_hours = detail::parse_double(value, line);
      else if (key == "duration_std_hours")
        sp.duration_std_hours = detail::parse_double(value, line);
      else if (key == "los_mean_days")
        sp.los_mean_days = detail::parse_double(value, line);
      else if (key == "los_std_days")
        sp.los_std_days = detail::parse_double(value, line);
      else if (key == "urgency")
        sp.urgency.push_back(detail::parse_urgency(value, line));
      else
        throw ParseError("line " + std::to_string(line) +
                         ": unknown [specialty] key '" + std::string(key) +
                         "'");
    }
  }

  // Canonical group order, so files may list urgencies in any order.
  for (auto& sp : cfg.specialties)
    std::stable_sort(sp.urgency.begin(), sp.urgency.end(),
                     [](const UrgencyGroup& a, const UrgencyGroup& b) {
                       return a.coeff < b.coeff;
                     });
  return cfg;
}

inline ProblemConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  return parse_config(f);
}

inline std::string format_config(const ProblemConfig& cfg) {
  std::ostringstream out;
  out << "[problem]\n";
  if (!cfg.name.empty()) out << "name = " << cfg.name << "\n";
  out << "sicu_capacity_bed_days = "
      << detail::format_double(cfg.sicu_capacity_bed_days) << "\n"
      << "or_availability = " << detail::format_double(cfg.or_availability)
      << "\n"
      << "sicu_availability = " << detail::format_double(cfg.sicu_availability)
      << "\n"
      << "surgery_cost_per_priority = "
      << detail::format_double(cfg.surgery_cost_per_priority) << "\n"
      << "waiting_cost_per_priority = "
      << detail::format_double(cfg.waiting_cost_per_priority) << "\n"
      << "overtime_cost_per_hour = "
      << detail::format_double(cfg.overtime_cost_per_hour) << "\n"
      << "shortage_cost_per_bed_day = "
      << detail::format_double(cfg.shortage_cost_per_bed_day) << "\n"
      << "discount = " << detail::format_double(cfg.discount) << "\n"
      << "truncation_threshold = "
      << detail::format_double(cfg.truncation_threshold) << "\n"
      << "truncate_arrivals = " << (cfg.truncate_arrivals ? "true" : "false")
      << "\n";
  for (const auto& sp : cfg.specialties) {
    out << "\n[specialty]\n";
    if (!sp.name.empty()) out << "name = " << sp.name << "\n";
    out << "importance = " << detail::format_double(sp.importance) << "\n"
        << "or_capacity_hours = "
        << detail::format_double(sp.or_capacity_hours) << "\n"
        << "duration_mean_hours = "
        << detail::format_double(sp.duration_mean_hours) << "\n"
        << "duration_std_hours = "
        << detail::format_double(sp.duration_std_hours) << "\n"
        << "los_mean_days = " << detail::format_double(sp.los_mean_days)
        << "\n"
        << "los_std_days = " << detail::format_double(sp.los_std_days) << "\n";
    for (const auto& ug : sp.urgency) {
      out << "urgency = coeff=" << detail::format_double(ug.coeff)
          << " max_wait_weeks=" << ug.max_wait_weeks
          << " arrivals_per_week=" << detail::format_double(ug.arrivals_per_week);
      if (ug.arrival_cap >= 0) out << " arrival_cap=" << ug.arrival_cap;
      out << "\n";
    }
  }
  return out.str();
}

inline void save_config(const std::string& path, const ProblemConfig& cfg) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << format_config(cfg);
  if (!f) throw std::runtime_error("short write to " + path);
}

}  // namespace oradmit
