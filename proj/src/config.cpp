// SPDX-License-Identifier: Apache-2.0
#include "tclaw/config.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace tclaw {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw std::invalid_argument("config: " + path + ": " + msg);
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      fail(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
}

template <typename T>
T get_or(const json& obj, const std::string& path, const char* key, T dflt) {
  if (!obj.contains(key)) return dflt;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail(path + "." + key, "wrong type");
  }
}

FluxSpec parse_flux(const json& j, const std::string& path) {
  check_keys(j, path, {"kind", "speeds", "coefficients", "spatial_factor",
                       "amplitude", "wavenumber"});
  FluxSpec f;
  f.kind = get_or<std::string>(j, path, "kind", f.kind);
  if (f.kind != "burgers" && f.kind != "linear" && f.kind != "polynomial" &&
      f.kind != "sine-speed-inhomogeneous")
    fail(path + ".kind", "unknown flux preset '" + f.kind + "'");
  f.speeds = get_or<std::vector<double>>(j, path, "speeds", f.speeds);
  f.coefficients = get_or<std::vector<std::vector<double>>>(
      j, path, "coefficients", f.coefficients);
  f.spatial_factor = get_or<bool>(j, path, "spatial_factor", false);
  f.amplitude = get_or<double>(j, path, "amplitude", f.amplitude);
  f.wavenumber = get_or<double>(j, path, "wavenumber", f.wavenumber);
  if (f.kind == "polynomial" && f.coefficients.empty())
    fail(path + ".coefficients", "polynomial flux needs coefficients");
  if (f.kind == "linear" && f.speeds.empty())
    fail(path + ".speeds", "linear flux needs at least one speed");
  if (f.spatial_factor && f.kind != "polynomial")
    fail(path + ".spatial_factor", "only valid for the polynomial preset");
  if ((f.spatial_factor || f.kind == "sine-speed-inhomogeneous") &&
      std::abs(f.amplitude) >= 1.0)
    fail(path + ".amplitude", "|amplitude| must be < 1");
  return f;
}

InitialSpec parse_initial(const json& j, const std::string& path) {
  check_keys(j, path, {"kind", "u_left", "u_right", "x0", "center", "width",
                       "height", "amplitude"});
  InitialSpec s;
  s.kind = get_or<std::string>(j, path, "kind", s.kind);
  if (s.kind != "riemann" && s.kind != "bump" && s.kind != "sine")
    fail(path + ".kind", "unknown initial-data preset '" + s.kind + "'");
  s.u_left = get_or<double>(j, path, "u_left", s.u_left);
  s.u_right = get_or<double>(j, path, "u_right", s.u_right);
  s.x0 = get_or<double>(j, path, "x0", s.x0);
  s.center = get_or<double>(j, path, "center", s.center);
  s.width = get_or<double>(j, path, "width", s.width);
  s.height = get_or<double>(j, path, "height", s.height);
  s.amplitude = get_or<double>(j, path, "amplitude", s.amplitude);
  if (s.kind == "bump" && !(s.width > 0.0))
    fail(path + ".width", "must be positive");
  return s;
}

GridSpec parse_grid(const json& j, const std::string& path) {
  check_keys(j, path, {"nx", "nxi", "domain_length", "xi_min", "xi_max"});
  GridSpec g;
  if (j.contains("nx")) {
    if (j.at("nx").is_array())
      g.nx = j.at("nx").get<std::vector<int>>();
    else
      g.nx = {j.at("nx").get<int>()};
  }
  if (j.contains("domain_length")) {
    if (j.at("domain_length").is_array())
      g.domain_length = j.at("domain_length").get<std::vector<double>>();
    else
      g.domain_length = {j.at("domain_length").get<double>()};
  }
  g.nxi = get_or<int>(j, path, "nxi", g.nxi);
  g.xi_min = get_or<double>(j, path, "xi_min", g.xi_min);
  g.xi_max = get_or<double>(j, path, "xi_max", g.xi_max);

  if (g.nx.empty() || g.nx.size() > 2) fail(path + ".nx", "need 1 or 2 axes");
  if (g.domain_length.size() != g.nx.size())
    fail(path + ".domain_length", "must match nx in dimension");
  for (int n : g.nx)
    if (n < 2) fail(path + ".nx", "must be >= 2 per axis");
  for (double L : g.domain_length)
    if (!(L > 0.0)) fail(path + ".domain_length", "must be positive");
  if (g.nxi < 2 || g.nxi % 2 != 0)
    fail(path + ".nxi", "must be even and >= 2");
  if (!(g.xi_min < 0.0) || !(g.xi_max > 0.0))
    fail(path + ".xi_min", "need xi_min < 0 < xi_max");
  return g;
}

PathSpec parse_path(const json& j, const std::string& path, bool& seed_set) {
  check_keys(j, path, {"kind", "dimension", "slope", "period", "amplitude",
                       "seed", "oversampling", "hurst"});
  PathSpec p;
  p.kind = path_kind_from_string(
      get_or<std::string>(j, path, "kind", "deterministic"));
  p.dimension = get_or<int>(j, path, "dimension", 1);
  p.slope = get_or<std::vector<double>>(j, path, "slope", p.slope);
  p.period = get_or<double>(j, path, "period", p.period);
  p.amplitude = get_or<double>(j, path, "amplitude", p.amplitude);
  seed_set = j.contains("seed");
  p.seed = get_or<std::uint64_t>(j, path, "seed", 0);
  p.oversampling = get_or<int>(j, path, "oversampling", p.oversampling);
  p.hurst = get_or<double>(j, path, "hurst", p.hurst);
  if (p.dimension < 1) fail(path + ".dimension", "must be >= 1");
  if (p.kind == PathKind::deterministic) p.dimension = static_cast<int>(p.slope.size());
  if (p.kind == PathKind::zigzag && (!(p.period > 0.0) || !(p.amplitude > 0.0)))
    fail(path + ".period", "zigzag needs positive period and amplitude");
  if (p.kind == PathKind::fbm && (!(p.hurst > 0.0) || !(p.hurst < 1.0)))
    fail(path + ".hurst", "must lie in (0, 1)");
  if (p.oversampling < 1) fail(path + ".oversampling", "must be >= 1");
  return p;
}

TimeSpec parse_time(const json& j, const std::string& path) {
  check_keys(j, path, {"T", "dt", "dt_list", "dt_ref", "snapshots"});
  TimeSpec t;
  t.T = get_or<double>(j, path, "T", t.T);
  if (!(t.T > 0.0)) fail(path + ".T", "must be positive");
  if (j.contains("dt") && j.contains("dt_list"))
    fail(path + ".dt", "give either dt or dt_list, not both");
  if (j.contains("dt")) t.dt_list = {j.at("dt").get<double>()};
  if (j.contains("dt_list"))
    t.dt_list = j.at("dt_list").get<std::vector<double>>();
  t.dt_ref = get_or<double>(j, path, "dt_ref", 0.0);
  t.snapshots = get_or<std::vector<double>>(j, path, "snapshots", t.snapshots);
  if (t.dt_list.empty()) t.dt_list = {t.T / 100.0};
  if (t.snapshots.empty()) t.snapshots = {t.T};
  for (double dt : t.dt_list) {
    if (!(dt > 0.0) || dt > t.T) fail(path + ".dt_list", "dt must lie in (0, T]");
    const double k = t.T / dt;
    if (std::abs(k - std::lround(k)) > 1e-9)
      fail(path + ".dt_list", "dt must divide T");
  }
  if (t.dt_ref != 0.0) {
    const double kref = t.T / t.dt_ref;
    if (!(t.dt_ref > 0.0) || std::abs(kref - std::lround(kref)) > 1e-9)
      fail(path + ".dt_ref", "dt_ref must divide T");
    for (double dt : t.dt_list) {
      const long k = std::lround(t.T / dt);
      const long kr = std::lround(kref);
      if (kr % k != 0)
        fail(path + ".dt_ref", "dt list is not nested with the reference");
    }
  }
  for (double s : t.snapshots)
    if (s < 0.0 || s > t.T) fail(path + ".snapshots", "snapshot outside [0, T]");
  return t;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  check_keys(j, "", {"seed", "scheme", "flux", "initial", "grid", "path",
                     "time", "output", "characteristics_substeps",
                     "tightness_radius"});
  ExperimentConfig c;
  c.seed = get_or<std::uint64_t>(j, "", "seed", 0);
  c.scheme = get_or<std::string>(j, "", "scheme", "auto");
  if (c.scheme != "auto" && c.scheme != "homogeneous" && c.scheme != "inhomogeneous")
    throw std::invalid_argument("config: scheme: must be auto|homogeneous|inhomogeneous");
  if (j.contains("flux")) c.flux = parse_flux(j.at("flux"), "flux");
  if (j.contains("initial")) c.initial = parse_initial(j.at("initial"), "initial");
  if (j.contains("grid")) c.grid = parse_grid(j.at("grid"), "grid");
  if (j.contains("path")) c.path = parse_path(j.at("path"), "path", c.path_seed_set);
  if (j.contains("time")) c.time = parse_time(j.at("time"), "time");
  if (c.time.dt_list.empty()) c.time.dt_list = {c.time.T / 100.0};
  if (c.time.snapshots.empty()) c.time.snapshots = {c.time.T};
  if (j.contains("output")) {
    check_keys(j.at("output"), "output", {"directory"});
    c.output_dir = get_or<std::string>(j.at("output"), "output", "directory", c.output_dir);
  }
  c.characteristics_substeps =
      get_or<int>(j, "", "characteristics_substeps", c.characteristics_substeps);
  if (c.characteristics_substeps < 1)
    throw std::invalid_argument("config: characteristics_substeps: must be >= 1");
  c.tightness_radius = get_or<double>(j, "", "tightness_radius", 0.0);
  if (!c.path_seed_set) c.path.seed = c.seed;
  if (c.flux.kind == "linear" &&
      c.flux.speeds.size() != c.grid.nx.size())
    throw std::invalid_argument(
        "config: flux.speeds: linear flux dimension must match the grid");
  return c;
}

std::string serialize_config(const ExperimentConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["scheme"] = c.scheme;
  j["flux"] = {{"kind", c.flux.kind},
               {"speeds", c.flux.speeds},
               {"coefficients", c.flux.coefficients},
               {"spatial_factor", c.flux.spatial_factor},
               {"amplitude", c.flux.amplitude},
               {"wavenumber", c.flux.wavenumber}};
  j["initial"] = {{"kind", c.initial.kind},
                  {"u_left", c.initial.u_left},
                  {"u_right", c.initial.u_right},
                  {"x0", c.initial.x0},
                  {"center", c.initial.center},
                  {"width", c.initial.width},
                  {"height", c.initial.height},
                  {"amplitude", c.initial.amplitude}};
  j["grid"] = {{"nx", c.grid.nx},
               {"nxi", c.grid.nxi},
               {"domain_length", c.grid.domain_length},
               {"xi_min", c.grid.xi_min},
               {"xi_max", c.grid.xi_max}};
  j["path"] = {{"kind", to_string(c.path.kind)},
               {"dimension", c.path.dimension},
               {"slope", c.path.slope},
               {"period", c.path.period},
               {"amplitude", c.path.amplitude},
               {"seed", c.path.seed},
               {"oversampling", c.path.oversampling},
               {"hurst", c.path.hurst}};
  j["time"] = {{"T", c.time.T},
               {"dt_list", c.time.dt_list},
               {"dt_ref", c.time.dt_ref},
               {"snapshots", c.time.snapshots}};
  j["output"] = {{"directory", c.output_dir}};
  j["characteristics_substeps"] = c.characteristics_substeps;
  j["tightness_radius"] = c.tightness_radius;
  return j.dump(2);
}

}  // namespace tclaw
