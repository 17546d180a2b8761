#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "tcflow/case_setup.hpp"

namespace tcflow {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing chars");
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: value of '" + key + "' is not a number: " + v);
  }
}

inline int parse_int(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const int n = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing chars");
    return n;
  } catch (const std::exception&) {
    throw ConfigError("config: value of '" + key + "' is not an integer: " + v);
  }
}

}  // namespace detail

// Flat, typed key-value case file with [section] headers. '#' starts a
// comment. Unknown sections or keys are hard errors.
inline CaseConfig parse_case_config(std::istream& in) {
  CaseConfig cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": malformed section header");
      section = line.substr(1, line.size() - 2);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    const std::string full = section + "." + key;

    auto d = [&] { return detail::parse_double(val, full); };
    auto n = [&] { return detail::parse_int(val, full); };

    if (full == "grid.nx") cfg.nx = n();
    else if (full == "grid.ny") cfg.ny = n();
    else if (full == "case.radius") cfg.radius = d();
    else if (full == "case.domain_factor") cfg.domain_factor = d();
    else if (full == "case.t_bottom") cfg.t_bottom = d();
    else if (full == "case.t_gradient") cfg.t_gradient = d();
    else if (full == "phase1.rho") cfg.phase1.rho = d();
    else if (full == "phase1.mu") cfg.phase1.mu = d();
    else if (full == "phase1.cp") cfg.phase1.cp = d();
    else if (full == "phase1.lambda") cfg.phase1.lambda = d();
    else if (full == "phase2.rho") cfg.phase2.rho = d();
    else if (full == "phase2.mu") cfg.phase2.mu = d();
    else if (full == "phase2.cp") cfg.phase2.cp = d();
    else if (full == "phase2.lambda") cfg.phase2.lambda = d();
    else if (full == "surface_tension.sigma0") cfg.sigma0 = d();
    else if (full == "surface_tension.sigma_T") cfg.sigma_T = d();
    else if (full == "time.end_time") cfg.end_time = d();
    else if (full == "time.cfl") cfg.cfl = d();
    else if (full == "time.dt_floor") cfg.dt_floor = d();
    else if (full == "scheme.weno_order") cfg.weno_order = n();
    else if (full == "scheme.c_alpha") cfg.c_alpha = d();
    else if (full == "scheme.geometry_smoothing") cfg.geometry_smoothing = n();
    else if (full == "solver.method") {
      if (val == "cg") cfg.solver.method = LinearSolverMethod::cg;
      else if (val == "bicgstab") cfg.solver.method = LinearSolverMethod::bicgstab;
      else throw ConfigError("config: unknown solver.method '" + val + "'");
    } else if (full == "solver.tol") cfg.solver.tol = d();
    else if (full == "solver.max_iter") cfg.solver.max_iter = n();
    else if (full == "output.write_every") cfg.write_every = n();
    else
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": unknown key '" + full + "'");
  }
  cfg.validate();
  return cfg;
}

inline CaseConfig load_case_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return parse_case_config(in);
}

}  // namespace tcflow
