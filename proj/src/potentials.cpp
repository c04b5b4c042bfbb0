#include "phasecrack/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace phasecrack {

ScalarPotential make_double_well(std::string_view name, double scale) {
  if (name == "quartic") {
    return {std::string(name), scale,
            [scale](double s) { return scale * s * s * (1 - s) * (1 - s); },
            [scale](double s) { return scale * 2 * s * (1 - s) * (1 - 2 * s); }};
  }
  throw Error("unknown double-well potential '" + std::string(name) + "'");
}

ScalarPotential make_single_well(std::string_view name, double scale) {
  if (name == "quadratic") {
    return {std::string(name), scale, [scale](double s) { return scale * (1 - s) * (1 - s); },
            [scale](double s) { return -2 * scale * (1 - s); }};
  }
  if (name == "zero") {
    return {std::string(name), scale, [](double) { return 0.0; }, [](double) { return 0.0; }};
  }
  throw Error("unknown single-well potential '" + std::string(name) + "'");
}

ScalarPotential make_interfacial_weight(std::string_view name, const ScalarPotential& V) {
  if (name == "concave") {
    return {std::string(name), 1.0, [](double m) { return 2 * m - m * m; },
            [](double m) { return 2 - 2 * m; }};
  }
  if (name == "linear") {
    return {std::string(name), 1.0, [](double m) { return m; }, [](double) { return 1.0; }};
  }
  if (name == "one") {
    return {std::string(name), 1.0, [](double) { return 1.0; }, [](double) { return 0.0; }};
  }
  if (name == "sqrt_v_ratio") {
    auto root_v = [v = V.value](double s) { return std::sqrt(std::max(v(s), 0.0)); };
    auto table = std::make_shared<const CumulativeIntegral>(root_v, 0.0, 1.0, 1024);
    const double total = table->total();
    if (!(total > 0)) throw Error("sqrt_v_ratio: ∫√V vanishes");
    return {std::string(name), 1.0,
            [table, total](double m) { return (*table)(std::clamp(m, 0.0, 1.0)) / total; },
            [root_v, total](double m) { return root_v(std::clamp(m, 0.0, 1.0)) / total; }};
  }
  throw Error("unknown interfacial weight '" + std::string(name) + "'");
}

double CDeltaRule::operator()(double delta) const { return coefficient * std::pow(delta, exponent); }

namespace {

double sup_on_unit(const ScalarPotential& f) {
  double m = 0.0;
  constexpr int kSamples = 4096;
  for (int i = 0; i <= kSamples; ++i) m = std::max(m, f(static_cast<double>(i) / kSamples));
  return m;
}

double root_integral(const ScalarPotential& f, double a, double b, int panels) {
  return simpson([&f](double s) { return std::sqrt(f(s)); }, a, b, panels);
}

}  // namespace

PotentialSet make_potential_set(ScalarPotential W, ScalarPotential V, ScalarPotential phi, double theta,
                                CDeltaRule c_delta, double coercivity, int quadrature_nodes) {
  for (const auto* p : {&W, &V, &phi}) {
    if (!p->value || !p->derivative) throw Error("potential '" + p->name + "' lacks a derivative");
  }
  if (!(theta >= 0.0 && theta <= 1.0)) throw Error("theta must lie in [0, 1]");
  if (quadrature_nodes < 2) throw Error("quadrature_nodes must be at least 2");
  PotentialSet P{std::move(W), std::move(V), std::move(phi), theta, c_delta, coercivity,
                 quadrature_nodes, 0.0, 0.0};
  P.cap_W = sup_on_unit(P.W);
  P.cap_V = sup_on_unit(P.V);
  return P;
}

PotentialSet make_default_potentials() {
  auto V = make_single_well("quadratic");
  auto phi = make_interfacial_weight("concave", V);
  return make_potential_set(make_double_well("quartic"), std::move(V), std::move(phi));
}

const ConditionResult* AdmissibilityReport::find(std::string_view name) const {
  for (const auto& c : conditions) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

AdmissibilityReport check_admissibility(const PotentialSet& P, int m_samples) {
  if (m_samples < 2) throw Error("check_admissibility: m_samples must be at least 2");
  AdmissibilityReport report;
  const int n = m_samples;
  auto unit = [n](int i) { return static_cast<double>(i) / (n - 1); };
  auto finite_or_note = [](ConditionResult& r, double v) {
    if (!std::isfinite(v)) {
      r.passed = false;
      r.note = "non-finite potential value";
      r.worst_margin = -std::numeric_limits<double>::infinity();
      return false;
    }
    return true;
  };
  constexpr double kZeroTol = 1e-14;

  {  // W vanishes exactly at 0 and 1, positive elsewhere on [-1, 2]
    ConditionResult r{"W_wells", true, std::numeric_limits<double>::infinity(), 0, ""};
    const double w0 = P.W(0.0);
    const double w1 = P.W(1.0);
    if (finite_or_note(r, w0) && finite_or_note(r, w1)) {
      if (std::abs(w0) > kZeroTol || std::abs(w1) > kZeroTol) {
        r.passed = false;
        r.note = "W does not vanish at 0 and 1";
      }
      for (int i = 0; i < n && r.note.find("non-finite") == std::string::npos; ++i) {
        const double s = -1.0 + 3.0 * unit(i);
        if (std::abs(s) < 1e-12 || std::abs(s - 1) < 1e-12) continue;
        const double w = P.W(s);
        ++r.samples;
        if (!finite_or_note(r, w)) break;
        r.worst_margin = std::min(r.worst_margin, w);
      }
      if (!(r.worst_margin > 0)) r.passed = false;
    }
    report.conditions.push_back(r);
  }
  {  // coercivity W(s) >= |s|/C for |s| >= C
    ConditionResult r{"W_coercive", true, std::numeric_limits<double>::infinity(), 0, ""};
    const double C = P.coercivity;
    if (!(C > 0)) {
      r.passed = false;
      r.note = "coercivity constant must be positive";
    } else {
      for (int i = 0; i < n; ++i) {
        const double mag = C * (1.0 + 9.0 * unit(i));
        for (double s : {mag, -mag}) {
          const double w = P.W(s);
          ++r.samples;
          if (!finite_or_note(r, w)) break;
          r.worst_margin = std::min(r.worst_margin, w - std::abs(s) / C);
        }
        if (!r.note.empty()) break;
      }
      if (r.worst_margin < 0) r.passed = false;
    }
    report.conditions.push_back(r);
  }
  {  // V(1) = 0, V > 0 on [0, 1), V nonincreasing
    ConditionResult well{"V_well", true, std::numeric_limits<double>::infinity(), 0, ""};
    ConditionResult mono{"V_monotone", true, std::numeric_limits<double>::infinity(), 0, ""};
    const double v1 = P.V(1.0);
    if (finite_or_note(well, v1) && std::abs(v1) > kZeroTol) {
      well.passed = false;
      well.note = "V(1) != 0";
    }
    double prev = P.V(0.0);
    for (int i = 0; i < n; ++i) {
      const double s = unit(i);
      const double v = P.V(s);
      if (!finite_or_note(well, v)) {
        mono.passed = false;
        mono.note = well.note;
        break;
      }
      if (i + 1 < n) {
        ++well.samples;
        well.worst_margin = std::min(well.worst_margin, v);
      }
      if (i > 0) {
        ++mono.samples;
        mono.worst_margin = std::min(mono.worst_margin, prev - v);
      }
      prev = v;
    }
    if (!(well.worst_margin > 0)) well.passed = false;
    if (mono.worst_margin < -kZeroTol) mono.passed = false;
    report.conditions.push_back(well);
    report.conditions.push_back(mono);
  }
  {  // phi(0) = theta, phi(1) = 1, nondecreasing, positive on (0, 1]
    ConditionResult ends{"phi_endpoints", true, 0.0, 2, ""};
    const double p0 = P.phi(0.0);
    const double p1 = P.phi(1.0);
    if (finite_or_note(ends, p0) && finite_or_note(ends, p1)) {
      ends.worst_margin = -std::max(std::abs(p0 - P.theta), std::abs(p1 - 1.0));
      if (ends.worst_margin < -kZeroTol) {
        ends.passed = false;
        ends.note = "phi(0) != theta or phi(1) != 1";
      }
    }
    ConditionResult mono{"phi_monotone", true, std::numeric_limits<double>::infinity(), 0, ""};
    ConditionResult pos{"phi_positive", true, std::numeric_limits<double>::infinity(), 0, ""};
    double prev = P.phi(0.0);
    for (int i = 1; i < n; ++i) {
      const double v = P.phi(unit(i));
      if (!finite_or_note(pos, v)) {
        mono.passed = false;
        mono.note = pos.note;
        break;
      }
      ++mono.samples;
      ++pos.samples;
      mono.worst_margin = std::min(mono.worst_margin, v - prev);
      pos.worst_margin = std::min(pos.worst_margin, v);
      prev = v;
    }
    if (mono.worst_margin < -kZeroTol) mono.passed = false;
    if (!(pos.worst_margin > 0)) pos.passed = false;
    report.conditions.push_back(ends);
    report.conditions.push_back(mono);
    report.conditions.push_back(pos);
  }

  const int panels = P.quadrature_nodes;
  const double root_w = root_integral(P.W, 0.0, 1.0, panels);
  const double root_v = root_integral(P.V, 0.0, 1.0, panels);
  {  // ∫√W <= 2∫√V
    ConditionResult r{"phase_below_fracture", true, 2 * root_v - root_w, 1, ""};
    if (!std::isfinite(r.worst_margin)) {
      r.passed = false;
      r.note = "non-finite quadrature";
    } else {
      r.passed = r.worst_margin >= 0;
    }
    report.conditions.push_back(r);
  }
  {  // ∫√W <= 2∫_m^1 √V + phi(m) ∫√W at every node m
    ConditionResult r{"no_energetic_mixing", true, std::numeric_limits<double>::infinity(), n, ""};
    const int sub = std::max(2, panels / (n - 1));
    std::vector<double> tail(n, 0.0);
    for (int i = n - 2; i >= 0; --i) tail[i] = tail[i + 1] + root_integral(P.V, unit(i), unit(i + 1), sub);
    for (int i = 0; i < n; ++i) {
      const double margin = 2 * tail[i] + P.phi(unit(i)) * root_w - root_w;
      if (!finite_or_note(r, margin)) break;
      r.worst_margin = std::min(r.worst_margin, margin);
    }
    if (r.worst_margin < -1e-13) r.passed = false;
    report.conditions.push_back(r);
  }

  report.passed = std::all_of(report.conditions.begin(), report.conditions.end(),
                              [](const ConditionResult& c) { return c.passed; });
  return report;
}

double surface_density(const PotentialSet& P) {
  const double v = 2 * root_integral(P.W, 0.0, 1.0, P.quadrature_nodes);
  if (!std::isfinite(v)) throw Error("surface_density: non-finite integrand");
  return v;
}

double fracture_density(const PotentialSet& P) {
  const double v = 4 * root_integral(P.V, 0.0, 1.0, P.quadrature_nodes);
  if (!std::isfinite(v)) throw Error("fracture_density: non-finite integrand");
  return v;
}

namespace {

RealFunction capped_root(WellKind f, const PotentialSet& P) {
  const double cap = P.cap(f);
  return [pot = P.well(f).value, cap](double s) { return 2 * std::sqrt(std::min(std::max(pot(s), 0.0), cap)); };
}

}  // namespace

double geodesic_transform(WellKind f, const PotentialSet& P, double t) {
  const auto g = capped_root(f, P);
  // Split at 0 and 1 where the square root of a well has its kinks.
  double sum = 0.0;
  double lo = 0.0;
  const double sign = t >= 0 ? 1.0 : -1.0;
  const double end = std::abs(t);
  auto piece = [&](double a, double b) {
    if (b > a) sum += simpson([&](double s) { return g(sign * s); }, a, b, P.quadrature_nodes);
  };
  if (sign > 0 && end > 1.0) {
    piece(lo, 1.0);
    lo = 1.0;
  }
  piece(lo, end);
  return sign * sum;
}

GeodesicTable::GeodesicTable(WellKind f, const PotentialSet& P, double lo, double hi, std::size_t cells)
    : table_(capped_root(f, P), lo, hi, cells), zero_(table_(0.0)) {}

double phi_delta(const PotentialSet& P, double delta, double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw Error("phi_delta: z outside [0, 1]");
  if (!(delta > 0.0)) throw Error("phi_delta: delta must be positive");
  return P.phi(z) + P.c_delta(delta);
}

}  // namespace phasecrack
