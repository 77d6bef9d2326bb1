// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#include "metriplectic/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

#include "metriplectic/lie_algebra.hpp"

namespace metriplectic {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw ConfigError(origin + ": " + what);
}

const json& get_required(const json& j, const char* key,
                         const std::string& origin) {
  if (!j.contains(key)) {
    fail(origin, std::string("missing required field '") + key + "'");
  }
  return j.at(key);
}

Vec as_vec(const json& j, const std::string& origin, const char* what) {
  if (!j.is_array()) {
    fail(origin, std::string(what) + " must be an array of numbers");
  }
  Vec v(static_cast<Index>(j.size()));
  Index i = 0;
  for (const json& e : j) {
    if (!e.is_number()) {
      fail(origin, std::string(what) + " must contain only numbers");
    }
    v[i++] = e.get<double>();
  }
  return v;
}

Mat as_mat(const json& j, const std::string& origin, const char* what) {
  if (!j.is_array() || j.empty()) {
    fail(origin, std::string(what) + " must be a nonempty array of rows");
  }
  const Index rows = static_cast<Index>(j.size());
  Index cols = -1;
  Mat m;
  Index r = 0;
  for (const json& row : j) {
    const Vec v = as_vec(row, origin, what);
    if (cols < 0) {
      cols = v.size();
      m.resize(rows, cols);
    } else if (v.size() != cols) {
      fail(origin, std::string(what) + " rows have inconsistent lengths");
    }
    m.row(r++) = v;
  }
  return m;
}

double ipow(double x, int e) {
  double out = 1.0;
  for (int k = 0; k < e; ++k) {
    out *= x;
  }
  return out;
}

struct Monomial {
  double coefficient = 0.0;
  std::vector<int> powers;
};

ScalarField polynomial_field(std::vector<Monomial> terms, Index dim) {
  auto value = [terms, dim](const Vec& x) {
    require_dim(x, dim, "polynomial field");
    double sum = 0.0;
    for (const Monomial& t : terms) {
      double prod = t.coefficient;
      for (Index i = 0; i < dim; ++i) {
        prod *= ipow(x[i], t.powers[static_cast<std::size_t>(i)]);
      }
      sum += prod;
    }
    return sum;
  };
  auto gradient = [terms, dim](const Vec& x) {
    require_dim(x, dim, "polynomial field");
    Vec g = Vec::Zero(dim);
    for (const Monomial& t : terms) {
      for (Index j = 0; j < dim; ++j) {
        const int ej = t.powers[static_cast<std::size_t>(j)];
        if (ej == 0) {
          continue;
        }
        double prod = t.coefficient * ej * ipow(x[j], ej - 1);
        for (Index i = 0; i < dim; ++i) {
          if (i != j) {
            prod *= ipow(x[i], t.powers[static_cast<std::size_t>(i)]);
          }
        }
        g[j] += prod;
      }
    }
    return g;
  };
  return ScalarField(std::move(value), std::move(gradient));
}

ScalarField parse_field(const json& j, Index dim, const std::string& origin,
                        const char* what) {
  if (!j.is_object()) {
    fail(origin, std::string(what) + " must be an object with a 'kind'");
  }
  const std::string kind =
      get_required(j, "kind", origin).get<std::string>();
  if (kind == "rigid_body_energy") {
    const Vec inertia = as_vec(get_required(j, "inertia", origin), origin,
                               "inertia");
    if (inertia.size() != dim) {
      fail(origin, std::string(what) + ": inertia length does not match the "
                   "system dimension");
    }
    return rigid_body_energy(inertia);
  }
  if (kind == "half_norm_squared") {
    return ScalarField::half_norm_squared();
  }
  if (kind == "quarter_norm_fourth") {
    return ScalarField::quarter_norm_fourth();
  }
  if (kind == "constant") {
    return ScalarField::constant(
        get_required(j, "value", origin).get<double>());
  }
  if (kind == "quadratic_form") {
    const Mat a = as_mat(get_required(j, "matrix", origin), origin, "matrix");
    if (a.rows() != dim || a.cols() != dim) {
      fail(origin, std::string(what) + ": matrix shape does not match the "
                   "system dimension");
    }
    return ScalarField::quadratic_form(a);
  }
  if (kind == "polynomial") {
    const json& jterms = get_required(j, "terms", origin);
    if (!jterms.is_array() || jterms.empty()) {
      fail(origin, std::string(what) + ": 'terms' must be a nonempty array");
    }
    std::vector<Monomial> terms;
    for (const json& jt : jterms) {
      Monomial t;
      t.coefficient = get_required(jt, "coefficient", origin).get<double>();
      const json& jp = get_required(jt, "powers", origin);
      if (!jp.is_array() ||
          static_cast<Index>(jp.size()) != dim) {
        fail(origin, std::string(what) + ": 'powers' must list one exponent "
                     "per coordinate");
      }
      for (const json& e : jp) {
        if (!e.is_number_integer() || e.get<int>() < 0) {
          fail(origin, std::string(what) + ": exponents must be nonnegative "
                       "integers");
        }
        t.powers.push_back(e.get<int>());
      }
      terms.push_back(std::move(t));
    }
    return polynomial_field(std::move(terms), dim);
  }
  fail(origin, std::string(what) + ": unknown field kind '" + kind +
               "' (expected rigid_body_energy, half_norm_squared, "
               "quarter_norm_fourth, constant, quadratic_form or "
               "polynomial)");
}

StructureConstants parse_structure_constants(const json& j, Index dim,
                                             const std::string& origin) {
  if (!j.is_array()) {
    fail(origin, "'structure_constants' must be an array of "
                 "[a, b, d, value] quadruples (zero-based indices)");
  }
  std::vector<double> entries(
      static_cast<std::size_t>(dim * dim * dim), 0.0);
  std::vector<bool> assigned(entries.size(), false);
  auto slot = [dim](Index a, Index b, Index d) {
    return static_cast<std::size_t>((a * dim + b) * dim + d);
  };
  auto place = [&](Index a, Index b, Index d, double v) {
    const std::size_t s = slot(a, b, d);
    if (assigned[s] && entries[s] != v) {
      fail(origin, "conflicting structure constant entries at (" +
                   std::to_string(a) + ", " + std::to_string(b) + ", " +
                   std::to_string(d) + ")");
    }
    entries[s] = v;
    assigned[s] = true;
  };
  for (const json& q : j) {
    if (!q.is_array() || q.size() != 4) {
      fail(origin, "each structure constant entry must be "
                   "[a, b, d, value]");
    }
    const Index a = q.at(0).get<Index>();
    const Index b = q.at(1).get<Index>();
    const Index d = q.at(2).get<Index>();
    const double v = q.at(3).get<double>();
    if (a < 0 || a >= dim || b < 0 || b >= dim || d < 0 || d >= dim) {
      fail(origin, "structure constant index out of range");
    }
    place(a, b, d, v);
    place(b, a, d, -v);  // antisymmetry completes the swapped entry
  }
  return StructureConstants(dim, std::move(entries));
}

void parse_system(const json& j, const std::string& origin,
                  Scenario& scenario) {
  if (!j.is_object()) {
    fail(origin, "'system' must be an object");
  }
  const std::string kind =
      get_required(j, "kind", origin).get<std::string>();
  const bool conservative =
      j.contains("conservative") && j.at("conservative").get<bool>();

  if (kind == "rigid_body") {
    const Vec inertia = as_vec(get_required(j, "inertia", origin), origin,
                               "inertia");
    ScalarField entropy = j.contains("entropy")
                              ? parse_field(j.at("entropy"), 3, origin,
                                            "entropy")
                              : ScalarField::half_norm_squared();
    if (conservative) {
      const So3Preset preset = so3_preset(inertia);
      scenario.system = make_conservative_system(
          "so3-rigid-body", lie_poisson_tensor(preset.algebra),
          preset.hamiltonian, std::move(entropy));
    } else {
      scenario.system =
          rigid_body_system_with_entropy(inertia, std::move(entropy));
    }
    scenario.is_rigid_body = true;
    scenario.inertia = inertia;
    return;
  }

  if (kind == "custom_lie_poisson") {
    const Index dim = get_required(j, "dim", origin).get<Index>();
    if (dim < 1) {
      fail(origin, "'dim' must be positive");
    }
    const StructureConstants sc = parse_structure_constants(
        get_required(j, "structure_constants", origin), dim, origin);
    ScalarField h = parse_field(get_required(j, "hamiltonian", origin), dim,
                                origin, "hamiltonian");
    ScalarField s = parse_field(get_required(j, "entropy", origin), dim,
                                origin, "entropy");
    if (conservative) {
      scenario.system = make_conservative_system(
          "custom-lie-poisson", lie_poisson_tensor(sc), std::move(h),
          std::move(s));
    } else {
      MetricField metric =
          j.contains("metric_inverse")
              ? MetricField::constant_inverse(
                    as_mat(j.at("metric_inverse"), origin, "metric_inverse"))
              : MetricField::euclidean(dim);
      if (metric.dim != dim) {
        fail(origin, "'metric_inverse' shape does not match 'dim'");
      }
      scenario.system = make_system("custom-lie-poisson",
                                    lie_poisson_tensor(sc), std::move(metric),
                                    std::move(h), std::move(s));
    }
    return;
  }

  if (kind == "explicit_matrices") {
    const Mat pi_mat = as_mat(get_required(j, "poisson", origin), origin,
                              "poisson");
    if (pi_mat.rows() != pi_mat.cols()) {
      fail(origin, "'poisson' must be square");
    }
    const Index dim = pi_mat.rows();
    if ((pi_mat + pi_mat.transpose()).cwiseAbs().maxCoeff() >
        1e-12 * (1.0 + pi_mat.cwiseAbs().maxCoeff())) {
      fail(origin, "'poisson' must be antisymmetric");
    }
    TensorField pi =
        TensorField::skew(dim, [pi_mat](const Vec&) { return pi_mat; });
    ScalarField h = parse_field(get_required(j, "hamiltonian", origin), dim,
                                origin, "hamiltonian");
    ScalarField s = parse_field(get_required(j, "entropy", origin), dim,
                                origin, "entropy");
    if (conservative) {
      scenario.system = make_conservative_system(
          "explicit-matrices", std::move(pi), std::move(h), std::move(s));
    } else {
      MetricField metric =
          j.contains("metric_inverse")
              ? MetricField::constant_inverse(
                    as_mat(j.at("metric_inverse"), origin, "metric_inverse"))
              : MetricField::euclidean(dim);
      if (metric.dim != dim) {
        fail(origin, "'metric_inverse' shape does not match 'poisson'");
      }
      scenario.system = make_system("explicit-matrices", std::move(pi),
                                    std::move(metric), std::move(h),
                                    std::move(s));
    }
    return;
  }

  fail(origin, "unknown system kind '" + kind + "' (expected rigid_body, "
               "custom_lie_poisson or explicit_matrices)");
}

DiscreteGradientScheme parse_scheme(const json& j,
                                    const std::string& origin) {
  DiscreteGradientScheme scheme = DiscreteGradientScheme::midpoint();
  if (j.contains("scheme")) {
    const std::string name = j.at("scheme").get<std::string>();
    if (name == "midpoint") {
      scheme = DiscreteGradientScheme::midpoint();
    } else if (name == "mean_value") {
      scheme = DiscreteGradientScheme::mean_value();
    } else if (name == "coordinate_increment") {
      scheme = DiscreteGradientScheme::coordinate_increment();
    } else {
      fail(origin, "unknown scheme '" + name + "' (expected midpoint, "
                   "mean_value or coordinate_increment)");
    }
  }
  if (j.contains("quadrature_points")) {
    const int pts = j.at("quadrature_points").get<int>();
    if (pts < 2) {
      fail(origin, "'quadrature_points' must be at least 2");
    }
    scheme.quadrature_points = pts;
  }
  return scheme;
}

IntegratorConfig parse_integrator(const json& j,
                                  const std::string& origin) {
  if (!j.is_object()) {
    fail(origin, "'integrator' must be an object");
  }
  IntegratorConfig config;
  config.step_h = get_required(j, "step_h", origin).get<double>();
  if (!(config.step_h > 0.0)) {
    fail(origin, "'step_h' must be positive");
  }
  config.scheme = parse_scheme(j, origin);
  if (j.contains("kd_variant")) {
    const std::string name = j.at("kd_variant").get<std::string>();
    if (name == "unscaled") {
      config.kd_variant = KdVariant::Unscaled;
    } else if (name == "scaled") {
      config.kd_variant = KdVariant::Scaled;
    } else {
      fail(origin, "unknown kd_variant '" + name + "' (expected unscaled or "
                   "scaled)");
    }
  }
  if (j.contains("solver")) {
    const std::string name = j.at("solver").get<std::string>();
    if (name == "fixed_point") {
      config.solver = SolverKind::FixedPoint;
    } else if (name == "newton_fd") {
      config.solver = SolverKind::NewtonFd;
    } else {
      fail(origin, "unknown solver '" + name + "' (expected fixed_point or "
                   "newton_fd)");
    }
  }
  if (j.contains("solver_tol")) {
    config.solver_tol = j.at("solver_tol").get<double>();
    if (!(config.solver_tol > 0.0)) {
      fail(origin, "'solver_tol' must be positive");
    }
  }
  if (j.contains("max_iters")) {
    config.max_iters = j.at("max_iters").get<int>();
    if (config.max_iters < 1) {
      fail(origin, "'max_iters' must be at least 1");
    }
  }
  return config;
}

void validate_loaded(const Scenario& scenario, const std::string& origin) {
  const std::vector<Vec> samples =
      sample_states(scenario.system.dim(), 32, scenario.seed);
  const SystemValidation v = validate_system(scenario.system, samples);
  std::ostringstream msg;
  if (v.kernel_residual > 1e-10) {
    msg << "the dissipative bracket does not annihilate grad H (residual "
        << v.kernel_residual << " > 1e-10)";
    fail(origin, msg.str());
  }
  if (v.casimir_residual > 1e-10) {
    msg << "entropy is not a Casimir of the Poisson tensor (residual "
        << v.casimir_residual << " > 1e-10)";
    fail(origin, msg.str());
  }
  if (v.gradient_residual > 1e-6) {
    msg << "analytic gradient disagrees with finite differences (residual "
        << v.gradient_residual << " > 1e-6)";
    fail(origin, msg.str());
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(origin, std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) {
    fail(origin, "scenario document must be a JSON object");
  }

  Scenario scenario;
  try {
    scenario.name = doc.contains("name")
                        ? doc.at("name").get<std::string>()
                        : std::filesystem::path(origin).stem().string();
    parse_system(get_required(doc, "system", origin), origin, scenario);
    scenario.initial_state =
        as_vec(get_required(doc, "initial_state", origin), origin,
               "initial_state");
    scenario.config =
        parse_integrator(get_required(doc, "integrator", origin), origin);
    const json& jn = get_required(doc.at("integrator"), "n_steps", origin);
    scenario.n_steps = jn.get<long>();
    if (scenario.n_steps < 0) {
      fail(origin, "'n_steps' must be nonnegative");
    }
    if (doc.contains("seed")) {
      scenario.seed = doc.at("seed").get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    fail(origin, std::string("invalid scenario: ") + e.what());
  }

  require_dim(scenario.initial_state, scenario.system.dim(),
              (origin + ": initial_state").c_str());
  require_finite(scenario.initial_state,
                 (origin + ": initial_state").c_str());
  scenario.system.id = scenario.name;
  validate_loaded(scenario, origin);
  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("load_scenario: cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

}  // namespace metriplectic
