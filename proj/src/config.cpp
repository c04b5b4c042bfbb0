#include "phasecrack/config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace phasecrack {

ConfigError::ConfigError(std::vector<std::string> violations)
    : Error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& v : violations) msg += "\n  " + v;
        return msg;
      }()),
      violations_(std::move(violations)) {}

PotentialSet RunConfig::potentials() const {
  const auto V = make_single_well(potential.V, potential.V_scale);
  return make_potential_set(make_double_well(potential.W, potential.W_scale), V,
                            make_interfacial_weight(potential.phi, V), theta, potential.c_delta,
                            potential.coercivity, potential.quadrature_nodes);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error("expected a number, got '" + s + "'");
  }
  if (used != s.size()) throw Error("expected a number, got '" + s + "'");
  return v;
}

long long to_integer(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw Error("expected an integer, got '" + s + "'");
  }
  if (used != s.size()) throw Error("expected an integer, got '" + s + "'");
  return v;
}

bool to_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw Error("expected a boolean, got '" + s + "'");
}

std::vector<double> to_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(to_double(item));
  return out;
}

/// Whitespace-separated numbers, e.g. "0.5 0.25".
std::vector<double> to_tuple(const std::string& s, std::size_t n) {
  std::stringstream ss(s);
  std::vector<double> out;
  std::string item;
  while (ss >> item) out.push_back(to_double(item));
  if (out.size() != n) throw Error("expected " + std::to_string(n) + " numbers, got '" + s + "'");
  return out;
}

std::string num(double v) { return format_number(v); }

std::string nums(const std::vector<double>& v, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + num(v[i]);
  return out;
}

std::string point(const Point& p) { return num(p[0]) + " " + num(p[1]); }

Point to_point(const std::string& s) {
  const auto v = to_tuple(s, 2);
  return {v[0], v[1]};
}

/// Both geometry flavours, so keys can be parsed before the dimension is known.
struct GeometryDraft {
  int dim = 1;
  SharpGeometry1D g1;
  SharpGeometry2D g2;
  std::vector<double> u_slopes;
  std::vector<double> u_offsets;
};

struct Key {
  std::string section;
  std::string name;
  int dim = 0;  // geometry keys only: 1 or 2, 0 for both
  std::function<void(const std::string&)> set;
  std::function<std::string()> get;
};

std::vector<Key> keys(RunConfig& c, GeometryDraft& geo) {
  std::vector<Key> k;
  auto add = [&](const char* section, const char* name, auto set, auto get, int dim = 0) {
    k.push_back({section, name, dim, set, get});
  };
  auto& p = c.potential;
  add("potential", "W", [&](const std::string& v) { p.W = v; }, [&] { return p.W; });
  add("potential", "W_scale", [&](const std::string& v) { p.W_scale = to_double(v); }, [&] { return num(p.W_scale); });
  add("potential", "V", [&](const std::string& v) { p.V = v; }, [&] { return p.V; });
  add("potential", "V_scale", [&](const std::string& v) { p.V_scale = to_double(v); }, [&] { return num(p.V_scale); });
  add("potential", "phi", [&](const std::string& v) { p.phi = v; }, [&] { return p.phi; });
  add("potential", "c_delta_coefficient", [&](const std::string& v) { p.c_delta.coefficient = to_double(v); },
      [&] { return num(p.c_delta.coefficient); });
  add("potential", "c_delta_exponent", [&](const std::string& v) { p.c_delta.exponent = to_double(v); },
      [&] { return num(p.c_delta.exponent); });
  add("potential", "coercivity", [&](const std::string& v) { p.coercivity = to_double(v); },
      [&] { return num(p.coercivity); });
  add("potential", "quadrature_nodes", [&](const std::string& v) { p.quadrature_nodes = int(to_integer(v)); },
      [&] { return std::to_string(p.quadrature_nodes); });
  add("potential", "samples", [&](const std::string& v) { p.samples = int(to_integer(v)); },
      [&] { return std::to_string(p.samples); });

  auto& e = c.elastic;
  add("elastic", "lame_lambda", [&](const std::string& v) { e.lame_lambda = to_double(v); },
      [&] { return num(e.lame_lambda); });
  add("elastic", "lame_mu", [&](const std::string& v) { e.lame_mu = to_double(v); }, [&] { return num(e.lame_mu); });
  add("elastic", "e0_xx", [&](const std::string& v) { e.e0.xx = to_double(v); }, [&] { return num(e.e0.xx); });
  add("elastic", "e0_yy", [&](const std::string& v) { e.e0.yy = to_double(v); }, [&] { return num(e.e0.yy); });
  add("elastic", "e0_xy", [&](const std::string& v) { e.e0.xy = to_double(v); }, [&] { return num(e.e0.xy); });
  add("elastic", "theta", [&](const std::string& v) { c.theta = to_double(v); }, [&] { return num(c.theta); });
  add("elastic", "degradation", [&](const std::string& v) { e.degradation = v; }, [&] { return e.degradation; });
  add("elastic", "eta_coefficient", [&](const std::string& v) { e.eta_rule.coefficient = to_double(v); },
      [&] { return num(e.eta_rule.coefficient); });
  add("elastic", "eta_exponent", [&](const std::string& v) { e.eta_rule.exponent = to_double(v); },
      [&] { return num(e.eta_rule.exponent); });

  add("geometry", "dim", [&](const std::string& v) { geo.dim = int(to_integer(v)); },
      [&] { return std::to_string(geo.dim); });
  auto& g1 = geo.g1;
  add("geometry", "a", [&](const std::string& v) { g1.a = to_double(v); }, [&] { return num(g1.a); }, 1);
  add("geometry", "b", [&](const std::string& v) { g1.b = to_double(v); }, [&] { return num(g1.b); }, 1);
  add("geometry", "phase_points", [&](const std::string& v) { g1.phase_points = to_doubles(v); },
      [&] { return nums(g1.phase_points); }, 1);
  add("geometry", "crack_points", [&](const std::string& v) { g1.crack_points = to_doubles(v); },
      [&] { return nums(g1.crack_points); }, 1);
  add("geometry", "c_left", [&](const std::string& v) { g1.c_left = int(to_integer(v)); },
      [&] { return std::to_string(g1.c_left); }, 1);
  add(
      "geometry", "c_pieces",
      [&](const std::string& v) {
        g1.c_pieces.clear();
        for (const auto& s : split(v, ',')) g1.c_pieces.push_back(int(to_integer(s)));
      },
      [&] {
        std::string out;
        for (std::size_t i = 0; i < g1.c_pieces.size(); ++i) out += (i ? ", " : "") + std::to_string(g1.c_pieces[i]);
        return out;
      },
      1);
  add("geometry", "u_slopes", [&](const std::string& v) { geo.u_slopes = to_doubles(v); },
      [&] { return nums(geo.u_slopes); }, 1);
  add("geometry", "u_offsets", [&](const std::string& v) { geo.u_offsets = to_doubles(v); },
      [&] { return nums(geo.u_offsets); }, 1);

  auto& g2 = geo.g2;
  add("geometry", "lo", [&](const std::string& v) { g2.lo = to_point(v); }, [&] { return point(g2.lo); }, 2);
  add("geometry", "hi", [&](const std::string& v) { g2.hi = to_point(v); }, [&] { return point(g2.hi); }, 2);
  add(
      "geometry", "polygon",
      [&](const std::string& v) {
        g2.A.clear();
        for (const auto& s : split(v, ',')) g2.A.push_back(to_point(s));
      },
      [&] {
        std::string out;
        for (std::size_t i = 0; i < g2.A.size(); ++i) out += (i ? ", " : "") + point(g2.A[i]);
        return out;
      },
      2);
  add(
      "geometry", "segments",
      [&](const std::string& v) {
        g2.M.clear();
        for (const auto& s : split(v, ',')) {
          const auto t = to_tuple(s, 4);
          g2.M.push_back({{t[0], t[1]}, {t[2], t[3]}});
        }
      },
      [&] {
        std::string out;
        for (std::size_t i = 0; i < g2.M.size(); ++i) {
          out += (i ? ", " : "") + point(g2.M[i].a) + " " + point(g2.M[i].b);
        }
        return out;
      },
      2);
  auto& u = g2.u_spec;
  add("geometry", "u_kind", [&](const std::string& v) { u.kind = v; }, [&] { return u.kind; }, 2);
  add("geometry", "u_shift", [&](const std::string& v) { u.shift = to_point(v); }, [&] { return point(u.shift); },
      2);
  add(
      "geometry", "u_G",
      [&](const std::string& v) {
        const auto t = to_tuple(v, 4);
        std::copy(t.begin(), t.end(), u.G.begin());
      },
      [&] { return nums({u.G.begin(), u.G.end()}, " "); }, 2);
  add(
      "geometry", "u_H0",
      [&](const std::string& v) {
        const auto t = to_tuple(v, 3);
        std::copy(t.begin(), t.end(), u.H0.begin());
      },
      [&] { return nums({u.H0.begin(), u.H0.end()}, " "); }, 2);
  add(
      "geometry", "u_H1",
      [&](const std::string& v) {
        const auto t = to_tuple(v, 3);
        std::copy(t.begin(), t.end(), u.H1.begin());
      },
      [&] { return nums({u.H1.begin(), u.H1.end()}, " "); }, 2);
  add("geometry", "u_segment", [&](const std::string& v) { u.segment = int(to_integer(v)); },
      [&] { return std::to_string(u.segment); }, 2);
  add("geometry", "u_t_minus", [&](const std::string& v) { u.t_minus = to_point(v); },
      [&] { return point(u.t_minus); }, 2);
  add("geometry", "u_w_minus", [&](const std::string& v) { u.w_minus = to_double(v); },
      [&] { return num(u.w_minus); }, 2);
  add("geometry", "u_t_plus", [&](const std::string& v) { u.t_plus = to_point(v); }, [&] { return point(u.t_plus); },
      2);
  add("geometry", "u_w_plus", [&](const std::string& v) { u.w_plus = to_double(v); }, [&] { return num(u.w_plus); },
      2);
  add(
      "geometry", "tol_geom",
      [&](const std::string& v) {
        g1.tol_geom = to_double(v);
        g2.tol_geom = g1.tol_geom;
      },
      [&] { return num(geo.dim == 1 ? g1.tol_geom : g2.tol_geom); });

  auto& gr = c.sweep.grid_rule;
  add("grid", "rule", [&](const std::string& v) { gr.kind = v; }, [&] { return gr.kind; });
  add("grid", "cells", [&](const std::string& v) { gr.cells = int(to_integer(v)); },
      [&] { return std::to_string(gr.cells); });
  add("grid", "cells_per_width", [&](const std::string& v) { gr.cells_per_width = to_double(v); },
      [&] { return num(gr.cells_per_width); });
  add("grid", "max_cells", [&](const std::string& v) { gr.max_cells = int(to_integer(v)); },
      [&] { return std::to_string(gr.max_cells); });

  auto& s = c.solver;
  add("solver", "max_outer", [&](const std::string& v) { s.max_outer = int(to_integer(v)); },
      [&] { return std::to_string(s.max_outer); });
  add("solver", "tol_rel_energy", [&](const std::string& v) { s.tol_rel_energy = to_double(v); },
      [&] { return num(s.tol_rel_energy); });
  add("solver", "cg_tol", [&](const std::string& v) { s.cg_tol = to_double(v); }, [&] { return num(s.cg_tol); });
  add("solver", "cg_max_iters", [&](const std::string& v) { s.cg_max_iters = int(to_integer(v)); },
      [&] { return std::to_string(s.cg_max_iters); });
  add("solver", "step0", [&](const std::string& v) { s.step0 = to_double(v); }, [&] { return num(s.step0); });
  add("solver", "backtrack_factor", [&](const std::string& v) { s.backtrack_factor = to_double(v); },
      [&] { return num(s.backtrack_factor); });
  add("solver", "armijo_c", [&](const std::string& v) { s.armijo_c = to_double(v); },
      [&] { return num(s.armijo_c); });
  add(
      "solver", "mass",
      [&](const std::string& v) {
        if (v == "none" || v.empty()) {
          s.mass_constraint.reset();
        } else {
          s.mass_constraint = to_double(v);
        }
      },
      [&] { return s.mass_constraint ? num(*s.mass_constraint) : std::string("none"); });
  add("solver", "jitter", [&](const std::string& v) { s.jitter = to_double(v); }, [&] { return num(s.jitter); });

  auto& w = c.sweep;
  add("sweep", "eps", [&](const std::string& v) { w.eps_schedule = to_doubles(v); },
      [&] { return nums(w.eps_schedule); });
  add("sweep", "delta_rule", [&](const std::string& v) { w.delta_rule.name = v; },
      [&] { return w.delta_rule.name; });
  add("sweep", "delta_k", [&](const std::string& v) { w.delta_rule.k = to_double(v); },
      [&] { return num(w.delta_rule.k); });
  add("sweep", "delta_p", [&](const std::string& v) { w.delta_rule.p = to_double(v); },
      [&] { return num(w.delta_rule.p); });
  add("sweep", "lambda", [&](const std::string& v) { w.lambda = to_double(v); }, [&] { return num(w.lambda); });
  add("sweep", "enforce_width", [&](const std::string& v) { w.enforce_width = to_bool(v); },
      [&] { return std::string(w.enforce_width ? "true" : "false"); });
  add("sweep", "profile_cells", [&](const std::string& v) { w.profile_cells = std::size_t(to_integer(v)); },
      [&] { return std::to_string(w.profile_cells); });

  add("run", "out", [&](const std::string& v) { c.out = v; }, [&] { return c.out; });
  add("run", "seed", [&](const std::string& v) { c.seed = std::uint64_t(to_integer(v)); },
      [&] { return std::to_string(c.seed); });
  add("run", "eps", [&](const std::string& v) { c.eps = to_double(v); }, [&] { return num(c.eps); });
  add("run", "cells", [&](const std::string& v) { c.cells = int(to_integer(v)); },
      [&] { return std::to_string(c.cells); });
  return k;
}

const char* const kSections[] = {"potential", "elastic", "geometry", "grid", "solver", "sweep", "run"};

/// Fills the draft from the active geometry variant.
void load_draft(const RunConfig& c, GeometryDraft& geo) {
  if (const auto* g1 = std::get_if<SharpGeometry1D>(&c.geometry)) {
    geo.dim = 1;
    geo.g1 = *g1;
    for (const auto& piece : g1->u_pieces) {
      geo.u_slopes.push_back(piece.slope);
      geo.u_offsets.push_back(piece.offset);
    }
  } else {
    geo.dim = 2;
    geo.g2 = std::get<SharpGeometry2D>(c.geometry);
  }
}

}  // namespace

RunConfig parse_config_string(const std::string& text) {
  RunConfig cfg;
  GeometryDraft geo;
  auto table = keys(cfg, geo);
  std::vector<std::string> violations;
  std::vector<const Key*> seen_geometry;
  std::map<std::string, int> seen;
  std::string section;
  std::stringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        violations.push_back(where + "malformed section header '" + line + "'");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (std::find(std::begin(kSections), std::end(kSections), section) == std::end(kSections)) {
        violations.push_back(where + "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      violations.push_back(where + "expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      violations.push_back(where + "key '" + key + "' appears before any section");
      continue;
    }
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const Key& k) { return k.section == section && k.name == key; });
    if (it == table.end()) {
      violations.push_back(where + "unknown key '" + key + "' in [" + section + "]");
      continue;
    }
    if (++seen[section + "." + key] > 1) violations.push_back(where + "duplicate key '" + key + "'");
    try {
      it->set(value);
    } catch (const Error& e) {
      violations.push_back(where + "[" + section + "] " + key + ": " + e.what());
    }
    if (it->dim != 0) seen_geometry.push_back(&*it);
  }

  if (geo.dim != 1 && geo.dim != 2) {
    violations.push_back("[geometry] dim must be 1 or 2");
  } else {
    for (const Key* k : seen_geometry) {
      if (k->dim != geo.dim) {
        violations.push_back("[geometry] " + k->name + " applies only to dim = " + std::to_string(k->dim));
      }
    }
  }
  if (geo.dim == 1) {
    if (geo.u_slopes.size() != geo.u_offsets.size()) {
      violations.push_back("[geometry] u_slopes and u_offsets must have the same length");
    } else {
      for (std::size_t i = 0; i < geo.u_slopes.size(); ++i) geo.g1.u_pieces.push_back({geo.u_slopes[i], geo.u_offsets[i]});
    }
    cfg.geometry = geo.g1;
  } else {
    cfg.geometry = geo.g2;
  }
  cfg.solver.seed = cfg.seed;
  try {
    if (!cfg.sweep.delta_rule.name.empty()) {
      cfg.sweep.delta_rule = DeltaRule::named(cfg.sweep.delta_rule.name, cfg.sweep.delta_rule.k, cfg.sweep.delta_rule.p);
    }
  } catch (const Error& e) {
    violations.push_back(std::string("[sweep] ") + e.what());
  }
  cfg.sweep.geometry = cfg.geometry;
  cfg.sweep.output = cfg.out;

  if (violations.empty()) {
    const auto more = validate_config(cfg);
    violations.insert(violations.end(), more.begin(), more.end());
  }
  if (!violations.empty()) throw ConfigError(violations);
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read configuration file '" + path + "'"});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str());
}

std::string emit_config(const RunConfig& cfg) {
  RunConfig copy = cfg;
  GeometryDraft geo;
  load_draft(copy, geo);
  const auto table = keys(copy, geo);
  std::string out;
  std::string section;
  for (const auto& k : table) {
    if (k.dim != 0 && k.dim != geo.dim) continue;
    if (k.section != section) {
      out += (section.empty() ? "[" : "\n[") + k.section + "]\n";
      section = k.section;
    }
    out += k.name + " = " + k.get() + "\n";
  }
  return out;
}

namespace {

double segment_distance(const Segment& s, const Segment& t) {
  // Segments that cross are at distance 0; otherwise an endpoint realizes it.
  auto orient = [](const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  const double d1 = orient(t.a, t.b, s.a);
  const double d2 = orient(t.a, t.b, s.b);
  const double d3 = orient(s.a, s.b, t.a);
  const double d4 = orient(s.a, s.b, t.b);
  if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return 0.0;
  return std::min({point_segment_distance(s.a, t), point_segment_distance(s.b, t), point_segment_distance(t.a, s),
                   point_segment_distance(t.b, s)});
}

}  // namespace

bool width_condition_in_play(const SharpGeometry& g, double eps, double delta, double lambda, const PotentialSet& P) {
  const double reach = zeta({lambda, eps, WellKind::W, true}, P, 1.0) + lambda * delta +
                       zeta({lambda, delta, WellKind::V, false}, P, 1.0);
  if (const auto* g1 = std::get_if<SharpGeometry1D>(&g)) {
    for (double p : g1->phase_points) {
      for (double m : g1->crack_points) {
        if (std::abs(p - m) < reach) return true;
      }
    }
    return false;
  }
  const auto& g2 = std::get<SharpGeometry2D>(g);
  for (std::size_t i = 0; i < g2.A.size(); ++i) {
    const Segment edge{g2.A[i], g2.A[(i + 1) % g2.A.size()]};
    for (const auto& m : g2.M) {
      if (segment_distance(edge, m) < reach) return true;
    }
  }
  return false;
}

std::vector<std::string> validate_config(const RunConfig& cfg) {
  std::vector<std::string> v;
  PotentialSet P;
  bool have_potentials = false;
  try {
    P = cfg.potentials();
    have_potentials = true;
  } catch (const Error& e) {
    v.push_back(std::string("[potential] ") + e.what());
  }
  if (!(cfg.theta >= 0 && cfg.theta <= 1)) v.push_back("[elastic] theta must lie in [0, 1]");
  if (cfg.potential.samples < 2) v.push_back("[potential] samples must be at least 2");
  try {
    cfg.elastic.validate();
  } catch (const Error& e) {
    v.push_back(std::string("[elastic] ") + e.what());
  }
  bool geometry_ok = true;
  try {
    if (const auto* g1 = std::get_if<SharpGeometry1D>(&cfg.geometry)) {
      g1->validate();
    } else {
      std::get<SharpGeometry2D>(cfg.geometry).validate();
    }
  } catch (const Error& e) {
    geometry_ok = false;
    v.push_back(std::string("[geometry] ") + e.what());
  }
  try {
    cfg.solver.validate();
  } catch (const Error& e) {
    v.push_back(std::string("[solver] ") + e.what());
  }
  const auto sweep = cfg.sweep.violations();
  for (const auto& s : sweep) v.push_back("[sweep] " + s);
  if (!(cfg.eps > 0)) v.push_back("[run] eps must be positive");
  if (cfg.cells < 2) v.push_back("[run] cells must be at least 2");
  if (have_potentials && geometry_ok && sweep.empty() && cfg.sweep.enforce_width) {
    for (double eps : cfg.sweep.eps_schedule) {
      const double delta = cfg.sweep.delta_rule(eps);
      if (width_condition_in_play(cfg.geometry, eps, delta, cfg.sweep.lambda, P) &&
          !width_condition(eps, delta, cfg.sweep.lambda)) {
        v.push_back("[sweep] width condition eps/sqrt(lambda) <= lambda*delta fails at eps = " + format_number(eps) +
                    " (set enforce_width = false to run anyway)");
      }
    }
  }
  return v;
}

}  // namespace phasecrack
