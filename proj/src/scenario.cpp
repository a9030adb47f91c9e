#include "bshift/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "bshift/random_gen.hpp"

namespace bshift {

namespace {

std::string iso_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ScenarioError(where + ": " + what);
}

const Json& require(const Json& j, const std::string& key,
                    const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    fail(where, "missing field '" + key + "'");
  return j.at(key);
}

double require_number(const Json& j, const std::string& key,
                      const std::string& where) {
  const Json& v = require(j, key, where);
  if (!v.is_number()) fail(where + "." + key, "expected a number");
  return v.get<double>();
}

int require_int(const Json& j, const std::string& key,
                const std::string& where) {
  const Json& v = require(j, key, where);
  if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
  return v.get<int>();
}

std::string require_string(const Json& j, const std::string& key,
                           const std::string& where) {
  const Json& v = require(j, key, where);
  if (!v.is_string()) fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

Complex complex_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number())
    fail(where, "expected a complex number as [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) {
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a nonempty matrix");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) fail(field, "expected nonempty matrix rows");
  Matrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      fail(field, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(
          j[r][c],
          field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

Json subspace_to_json(const SubspaceBasis& basis) {
  Json out;
  out["label"] = basis.label;
  out["dim"] = basis.dim();
  out["exactness_margin"] = basis.exactness_margin;
  out["shift_safe_count"] = basis.shift_safe_count;
  out["columns"] = matrix_to_json(basis.columns);
  return out;
}

Json inner_spec_to_json(const InnerSpec& spec) {
  Json out;
  out["constant_factor"] = matrix_to_json(spec.constant_factor());
  Json factors = Json::array();
  for (const auto& f : spec.factors()) {
    Json fj;
    fj["kind"] = f.full_projection ? "scalar" : "potapov";
    fj["zero_re"] = f.zero.real();
    fj["zero_im"] = f.zero.imag();
    if (!f.full_projection) fj["projection"] = matrix_to_json(f.projection);
    factors.push_back(std::move(fj));
  }
  out["factors"] = std::move(factors);
  return out;
}

InnerSpec inner_spec_from_json(const Json& j, const std::string& field) {
  Matrix constant = matrix_from_json(require(j, "constant_factor", field),
                                     field + ".constant_factor");
  const int d = static_cast<int>(constant.rows());
  std::vector<BlaschkeFactor> factors;
  if (j.contains("factors")) {
    const Json& fj = j.at("factors");
    if (!fj.is_array()) fail(field + ".factors", "expected an array");
    for (std::size_t i = 0; i < fj.size(); ++i) {
      const std::string where = field + ".factors[" + std::to_string(i) + "]";
      const std::string kind = require_string(fj[i], "kind", where);
      const Complex zero(require_number(fj[i], "zero_re", where),
                         require_number(fj[i], "zero_im", where));
      if (kind == "scalar") {
        factors.push_back(BlaschkeFactor{zero, Matrix::Identity(d, d), true});
      } else if (kind == "potapov") {
        factors.push_back(BlaschkeFactor{
            zero,
            matrix_from_json(require(fj[i], "projection", where),
                             where + ".projection"),
            false});
      } else {
        fail(where + ".kind", "expected 'scalar' or 'potapov'");
      }
    }
  }
  try {
    return InnerSpec(std::move(constant), std::move(factors));
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
}

namespace {

const InnerSpec* find_spec(const Scenario& s, const std::string& name) {
  for (const auto& [n, spec] : s.inner_specs)
    if (n == name) return &spec;
  return nullptr;
}

const SubspaceJob* find_job(const Scenario& s, const std::string& name) {
  for (const auto& job : s.jobs)
    if (job.name == name) return &job;
  return nullptr;
}

// Semantic cross-checks; run on freshly parsed scenarios and again after
// command-line overrides. Nothing is computed until these pass.
void validate_scenario(const Scenario& s) {
  if (s.schema_version != 1)
    fail("schema_version",
         "unsupported version " + std::to_string(s.schema_version));
  if (!(s.sigma > 0.0)) fail("brownian.sigma", "must be > 0");
  for (const auto& [name, spec] : s.inner_specs) {
    if (spec.codomain_dim() != s.ambient.fiber_dim)
      fail("inner_specs." + name, "codomain does not match ambient fiber_dim");
  }
  for (std::size_t i = 0; i < s.jobs.size(); ++i) {
    const auto& job = s.jobs[i];
    const std::string where = "subspace_jobs[" + std::to_string(i) + "]";
    for (std::size_t k = 0; k < i; ++k)
      if (s.jobs[k].name == job.name) fail(where, "duplicate name");
    if (job.kind == "type1" || job.kind == "type2") {
      const InnerSpec* spec = find_spec(s, job.inner_spec);
      if (spec == nullptr)
        fail(where + ".inner_spec", "unknown spec '" + job.inner_spec + "'");
      if (job.kind == "type2") {
        if (job.parameter_space.size() == 0)
          fail(where, "type2 requires parameter_space");
        if (job.parameter_space.rows() != spec->domain_dim())
          fail(where + ".parameter_space", "row count != spec domain_dim");
      }
    } else if (job.kind == "reducing") {
      if (job.g_basis.size() != 0 && job.g_basis.rows() != s.ambient.fiber_dim)
        fail(where + ".g_basis", "row count != fiber_dim");
    } else if (job.kind == "custom") {
      if (job.columns.size() == 0) fail(where, "custom requires columns");
      if (job.columns.rows() != s.ambient.total_dim())
        fail(where + ".columns", "row count != ambient total dimension");
    } else {
      fail(where + ".kind", "unknown kind '" + job.kind + "'");
    }
  }
  for (std::size_t i = 0; i < s.analyses.size(); ++i) {
    const auto& a = s.analyses[i];
    const std::string where = "analyses[" + std::to_string(i) + "]";
    if (a.tolerance < 0.0) fail(where + ".tolerance", "must be positive");
    if (a.kind == "verify" || a.kind == "classify" || a.kind == "canonical") {
      if (find_job(s, a.subspace) == nullptr)
        fail(where + ".subspace", "unknown job '" + a.subspace + "'");
      if (a.kind == "canonical" && !a.inner_spec.empty() &&
          find_spec(s, a.inner_spec) == nullptr)
        fail(where + ".inner_spec", "unknown spec '" + a.inner_spec + "'");
      if (a.kind == "classify" && !a.expect_class.empty() &&
          a.expect_class != "type1" && a.expect_class != "type2" &&
          a.expect_class != "not_invariant")
        fail(where + ".expect", "unknown class '" + a.expect_class + "'");
    } else if (a.kind == "equivalence") {
      if (a.mode != "type1" && a.mode != "scalar_type2")
        fail(where + ".mode", "expected 'type1' or 'scalar_type2'");
      const InnerSpec* l = find_spec(s, a.left_spec);
      const InnerSpec* r = find_spec(s, a.right_spec);
      if (l == nullptr)
        fail(where + ".left_spec", "unknown spec '" + a.left_spec + "'");
      if (r == nullptr)
        fail(where + ".right_spec", "unknown spec '" + a.right_spec + "'");
      if (a.mode == "scalar_type2") {
        if (s.ambient.fiber_dim != 1)
          fail(where, "scalar_type2 needs a scalar ambient");
        if (!l->is_scalar() || !r->is_scalar())
          fail(where, "scalar_type2 needs scalar inner specs");
      }
      for (const auto& sig : {a.left_sigma, a.right_sigma})
        if (sig && !(*sig > 0.0)) fail(where, "sigma overrides must be > 0");
    } else if (a.kind == "power_growth") {
      if (a.n_max < 0 || a.n_max > s.ambient.max_degree)
        fail(where + ".n_max", "must be in 0..max_degree");
    } else if (a.kind == "c00") {
      if (a.m_max < 0 || a.m_max > s.ambient.max_degree)
        fail(where + ".m_max", "must be in 0..max_degree");
    } else if (a.kind == "irreducibility") {
      if (a.trials < 1) fail(where + ".trials", "must be >= 1");
      if (s.ambient.fiber_dim != 1)
        fail(where, "irreducibility scan needs a scalar ambient");
    } else {
      fail(where + ".kind", "unknown analysis '" + a.kind + "'");
    }
  }
}

}  // namespace

Scenario parse_scenario(const Json& j) {
  Scenario s;
  if (!j.is_object()) fail("scenario", "expected a JSON object");
  s.schema_version = j.contains("schema_version")
                         ? require_int(j, "schema_version", "scenario")
                         : 1;
  if (j.contains("name")) s.name = require_string(j, "name", "scenario");
  if (j.contains("seed")) {
    const Json& v = j.at("seed");
    if (!v.is_number_integer() || v.get<long long>() < 0)
      fail("scenario.seed", "expected a non-negative integer");
    s.seed = v.get<std::uint64_t>();
  }

  const Json& ambient = require(j, "ambient", "scenario");
  const int d = require_int(ambient, "fiber_dim", "ambient");
  const int n = require_int(ambient, "max_degree", "ambient");
  if (d < 1) fail("ambient.fiber_dim", "must be >= 1");
  if (n < 1) fail("ambient.max_degree", "must be >= 1");
  s.ambient = AmbientSpec(d, n);

  const Json& brownian = require(j, "brownian", "scenario");
  s.sigma = require_number(brownian, "sigma", "brownian");
  s.theta = require_number(brownian, "theta", "brownian");

  if (j.contains("inner_specs")) {
    const Json& specs = j.at("inner_specs");
    if (!specs.is_array()) fail("inner_specs", "expected an array");
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const std::string where = "inner_specs[" + std::to_string(i) + "]";
      const std::string name = require_string(specs[i], "name", where);
      for (const auto& [existing, unused] : s.inner_specs)
        if (existing == name) fail(where, "duplicate name '" + name + "'");
      s.inner_specs.emplace_back(name, inner_spec_from_json(specs[i], where));
    }
  }

  if (j.contains("subspace_jobs")) {
    const Json& jobs = j.at("subspace_jobs");
    if (!jobs.is_array()) fail("subspace_jobs", "expected an array");
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const std::string where = "subspace_jobs[" + std::to_string(i) + "]";
      SubspaceJob job;
      job.name = require_string(jobs[i], "name", where);
      job.kind = require_string(jobs[i], "kind", where);
      if (jobs[i].contains("inner_spec"))
        job.inner_spec = require_string(jobs[i], "inner_spec", where);
      if (jobs[i].contains("parameter_space"))
        job.parameter_space = matrix_from_json(jobs[i].at("parameter_space"),
                                               where + ".parameter_space");
      if (jobs[i].contains("g_basis"))
        job.g_basis =
            matrix_from_json(jobs[i].at("g_basis"), where + ".g_basis");
      if (jobs[i].contains("columns"))
        job.columns =
            matrix_from_json(jobs[i].at("columns"), where + ".columns");
      s.jobs.push_back(std::move(job));
    }
  }

  if (j.contains("analyses")) {
    const Json& list = j.at("analyses");
    if (!list.is_array()) fail("analyses", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "analyses[" + std::to_string(i) + "]";
      const Json& aj = list[i];
      Analysis a;
      a.kind = require_string(aj, "kind", where);
      if (aj.contains("subspace"))
        a.subspace = require_string(aj, "subspace", where);
      if (aj.contains("inner_spec"))
        a.inner_spec = require_string(aj, "inner_spec", where);
      if (aj.contains("expect"))
        a.expect_class = require_string(aj, "expect", where);
      if (aj.contains("mode")) a.mode = require_string(aj, "mode", where);
      if (aj.contains("left_spec"))
        a.left_spec = require_string(aj, "left_spec", where);
      if (aj.contains("right_spec"))
        a.right_spec = require_string(aj, "right_spec", where);
      if (aj.contains("left_brownian")) {
        a.left_sigma = require_number(aj.at("left_brownian"), "sigma", where);
        a.left_theta = require_number(aj.at("left_brownian"), "theta", where);
      }
      if (aj.contains("right_brownian")) {
        a.right_sigma =
            require_number(aj.at("right_brownian"), "sigma", where);
        a.right_theta =
            require_number(aj.at("right_brownian"), "theta", where);
      }
      if (aj.contains("expect_equivalent")) {
        if (!aj.at("expect_equivalent").is_boolean())
          fail(where + ".expect_equivalent", "expected a boolean");
        a.expect_equivalent = aj.at("expect_equivalent").get<bool>();
      }
      if (aj.contains("n_max")) a.n_max = require_int(aj, "n_max", where);
      if (aj.contains("m_max")) a.m_max = require_int(aj, "m_max", where);
      if (aj.contains("trials")) a.trials = require_int(aj, "trials", where);
      if (aj.contains("include_basis")) {
        if (!aj.at("include_basis").is_boolean())
          fail(where + ".include_basis", "expected a boolean");
        a.include_basis = aj.at("include_basis").get<bool>();
      }
      if (aj.contains("tolerance")) {
        a.tolerance = require_number(aj, "tolerance", where);
        if (!(a.tolerance > 0.0))
          fail(where + ".tolerance", "must be positive");
      }
      s.analyses.push_back(std::move(a));
    }
  }

  validate_scenario(s);
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ScenarioError("parse error in '" + path + "': " + e.what());
  }
  return parse_scenario(j);
}

Json scenario_to_json(const Scenario& s) {
  Json j;
  j["schema_version"] = s.schema_version;
  if (!s.name.empty()) j["name"] = s.name;
  j["seed"] = s.seed;
  j["ambient"] = {{"fiber_dim", s.ambient.fiber_dim},
                  {"max_degree", s.ambient.max_degree}};
  j["brownian"] = {{"sigma", s.sigma}, {"theta", s.theta}};
  Json specs = Json::array();
  for (const auto& [name, spec] : s.inner_specs) {
    Json sj = inner_spec_to_json(spec);
    sj["name"] = name;
    specs.push_back(std::move(sj));
  }
  j["inner_specs"] = std::move(specs);
  Json jobs = Json::array();
  for (const auto& job : s.jobs) {
    Json jj;
    jj["name"] = job.name;
    jj["kind"] = job.kind;
    if (!job.inner_spec.empty()) jj["inner_spec"] = job.inner_spec;
    if (job.parameter_space.size() != 0)
      jj["parameter_space"] = matrix_to_json(job.parameter_space);
    if (job.g_basis.size() != 0) jj["g_basis"] = matrix_to_json(job.g_basis);
    if (job.columns.size() != 0) jj["columns"] = matrix_to_json(job.columns);
    jobs.push_back(std::move(jj));
  }
  j["subspace_jobs"] = std::move(jobs);
  Json analyses = Json::array();
  for (const auto& a : s.analyses) {
    Json aj;
    aj["kind"] = a.kind;
    if (!a.subspace.empty()) aj["subspace"] = a.subspace;
    if (!a.inner_spec.empty()) aj["inner_spec"] = a.inner_spec;
    if (!a.expect_class.empty()) aj["expect"] = a.expect_class;
    if (!a.mode.empty()) aj["mode"] = a.mode;
    if (!a.left_spec.empty()) aj["left_spec"] = a.left_spec;
    if (!a.right_spec.empty()) aj["right_spec"] = a.right_spec;
    if (a.left_sigma)
      aj["left_brownian"] = {{"sigma", *a.left_sigma},
                             {"theta", *a.left_theta}};
    if (a.right_sigma)
      aj["right_brownian"] = {{"sigma", *a.right_sigma},
                              {"theta", *a.right_theta}};
    if (a.expect_equivalent) aj["expect_equivalent"] = *a.expect_equivalent;
    if (a.n_max >= 0) aj["n_max"] = a.n_max;
    if (a.m_max >= 0) aj["m_max"] = a.m_max;
    if (a.trials >= 0) aj["trials"] = a.trials;
    if (a.tolerance > 0.0) aj["tolerance"] = a.tolerance;
    if (a.include_basis) aj["include_basis"] = true;
    analyses.push_back(std::move(aj));
  }
  j["analyses"] = std::move(analyses);
  return j;
}

namespace {

struct BuiltJob {
  SubspaceBasis basis;
  std::string inner_spec;  // empty when none applies
  std::string kind;
};

Json run_verify(const BuiltJob& job, const BrownianParams& params,
                const Analysis& a) {
  InvarianceReport r = verify_invariance(job.basis, params, a.tolerance);
  Json out;
  out["max_residual"] = r.max_residual;
  out["tolerance"] = r.tolerance;
  out["per_column"] = r.per_column;
  out["tested"] = r.tested;
  out["pass"] = r.invariant;
  if (job.kind == "reducing") {
    // both residual directions plus the principal angle of the fiber-span
    // extraction against the reconstructed product space
    ReducingReport rr = verify_reducing(job.basis, params, a.tolerance);
    out["fwd_residual"] = rr.fwd_residual;
    out["adj_residual"] = rr.adj_residual;
    out["reducing"] = rr.reducing;
    if (job.basis.dim() > 0) {
      Matrix g = extract_reducing_fiber_span(job.basis);
      SubspaceBasis rebuilt =
          build_reducing(ReducingCandidate{g}, job.basis.ambient);
      out["extraction_principal_angle"] =
          max_principal_angle(rebuilt.columns, job.basis.columns);
    }
    out["pass"] = out["pass"].get<bool>() && rr.reducing;
  }
  if (a.include_basis) out["basis"] = subspace_to_json(job.basis);
  return out;
}

Json run_classify(const BuiltJob& job, const BrownianParams& params,
                  const Analysis& a) {
  SubspaceClass c = classify(job.basis, params, a.tolerance);
  Json out;
  out["class"] = to_string(c);
  if (!a.expect_class.empty()) {
    out["expected"] = a.expect_class;
    out["pass"] = a.expect_class == to_string(c);
  } else {
    out["pass"] = true;
  }
  return out;
}

Json run_canonical(const Scenario& s, const BuiltJob& job,
                   const BrownianParams& params, const Analysis& a) {
  const std::string spec_name =
      !a.inner_spec.empty() ? a.inner_spec : job.inner_spec;
  const InnerSpec* spec = spec_name.empty() ? nullptr : find_spec(s, spec_name);
  CanonicalDecomposition d =
      canonical_decomposition(job.basis, params, spec, a.tolerance);
  const double tol = a.tolerance > 0.0
                         ? a.tolerance
                         : default_tolerance(s.ambient.total_dim());
  Json out;
  out["m0_dim"] = d.m0.dim();
  out["defect_dim"] = d.defect.dim();
  bool pass = true;
  Json elements = Json::array();
  for (const auto& e : d.elements) {
    Json ej;
    ej["x_norm"] = e.x.norm();
    ej["y_norm"] = e.y.norm();
    ej["identity_residual"] = e.build_residual;
    const double norm_gap = std::abs(e.x.norm() - params.sigma * e.y.norm());
    ej["norm_constraint_gap"] = norm_gap;
    double boundary_gap = 0.0;
    if (spec != nullptr) {
      boundary_gap = ((spec->evaluate(params.boundary_point()) * e.x) -
                      params.sigma * e.y)
                         .norm();
      ej["boundary_residual"] = boundary_gap;
    }
    pass = pass && e.build_residual < tol && norm_gap < tol &&
           boundary_gap < tol;
    elements.push_back(std::move(ej));
  }
  out["elements"] = std::move(elements);
  out["pass"] = pass;
  return out;
}

Json run_equivalence(const Scenario& s, const Analysis& a) {
  const InnerSpec* left = find_spec(s, a.left_spec);
  const InnerSpec* right = find_spec(s, a.right_spec);
  BrownianParams pl(a.left_sigma.value_or(s.sigma),
                    a.left_theta.value_or(s.theta), s.ambient);
  BrownianParams pr(a.right_sigma.value_or(s.sigma),
                    a.right_theta.value_or(s.theta), s.ambient);
  EquivalenceVerdict v =
      a.mode == "type1"
          ? decide_type1(*left, pl, *right, pr, a.tolerance)
          : decide_scalar_type2(pl, pr, *left, *right, 1e-6, a.tolerance);
  Json out;
  out["equivalent"] = v.equivalent;
  out["reason"] = to_string(v.reason);
  if (v.residual) out["residual"] = *v.residual;
  if (!v.detail.empty()) out["detail"] = v.detail;
  if (a.expect_equivalent) {
    out["expected"] = *a.expect_equivalent;
    out["pass"] = v.equivalent == *a.expect_equivalent;
  } else {
    out["pass"] = true;
  }
  return out;
}

Json run_power_growth(const Scenario& s, const BrownianParams& params,
                      const Analysis& a, Rng& rng) {
  Vector x = random_vector(rng, s.ambient.fiber_dim);
  x /= x.norm();
  std::vector<double> seq = power_growth(params, x, a.n_max);
  double worst = 0.0;
  for (int n = 0; n <= a.n_max; ++n) {
    const double expected = 1.0 + n * params.sigma * params.sigma;
    worst = std::max(worst, std::abs(seq[n] - expected) / expected);
  }
  const double tol = a.tolerance > 0.0 ? a.tolerance : 1e-10;
  Json out;
  out["sequence"] = seq;
  out["max_relative_error"] = worst;
  out["tolerance"] = tol;
  out["pass"] = worst < tol;
  return out;
}

Json run_c00(const Scenario& s, const BrownianParams& params,
             const Analysis& a, Rng& rng) {
  // polynomial test vector with a fiber component
  HardyElement f(s.ambient.fiber_dim, s.ambient.max_degree);
  const int degree = std::min(8, s.ambient.max_degree - 1);
  f.coeffs().leftCols(degree + 1) =
      random_gaussian_matrix(rng, s.ambient.fiber_dim, degree + 1);
  BrownianElement v(f, random_vector(rng, s.ambient.fiber_dim));
  C00Report r = c00_decay(params, v, a.m_max);
  bool monotone = true;
  for (std::size_t m = 1; m < r.adjoint.size(); ++m)
    monotone = monotone && r.adjoint[m] <= r.adjoint[m - 1] * (1.0 + 1e-12);
  const double final_ratio = r.adjoint.back() / r.adjoint.front();
  Json out;
  out["op_norm"] = r.op_norm;
  out["adjoint"] = r.adjoint;
  out["forward"] = r.forward;
  out["adjoint_monotone"] = monotone;
  out["final_ratio"] = final_ratio;
  out["pass"] = monotone && final_ratio < 1e-3;
  return out;
}

Json run_irreducibility(const BrownianParams& params, const Analysis& a,
                        Rng& rng) {
  IrreducibilityReport r =
      irreducibility_scan(params, a.trials, rng.engine()(), a.tolerance);
  Json out;
  out["trials"] = r.trials;
  out["nontrivial_reducing_found"] = r.nontrivial_reducing_found;
  out["min_residual_observed"] = r.min_residual_observed;
  out["pass"] = r.nontrivial_reducing_found == 0;
  return out;
}

}  // namespace

Json run_scenario(const Scenario& scenario, const RunOptions& options) {
  Scenario s = scenario;
  if (options.seed) s.seed = *options.seed;
  if (options.degree) {
    if (*options.degree < 1) throw ScenarioError("--degree must be >= 1");
    s.ambient = AmbientSpec(s.ambient.fiber_dim, *options.degree);
  }
  validate_scenario(s);

  BrownianParams params(s.sigma, s.theta, s.ambient);
  Rng rng(s.seed);

  Json results = Json::array();
  bool all_pass = true;
  int passed = 0;
  int failed = 0;

  std::map<std::string, BuiltJob> built;
  bool build_ok = true;
  for (const auto& job : s.jobs) {
    try {
      if (job.kind == "type1") {
        built.emplace(
            job.name,
            BuiltJob{build_type1(*find_spec(s, job.inner_spec), s.ambient),
                     job.inner_spec, job.kind});
      } else if (job.kind == "type2") {
        built.emplace(job.name,
                      BuiltJob{build_type2(*find_spec(s, job.inner_spec),
                                           params, job.parameter_space)
                                   .basis,
                               job.inner_spec, job.kind});
      } else if (job.kind == "reducing") {
        Matrix g = job.g_basis.size() == 0 ? Matrix(s.ambient.fiber_dim, 0)
                                           : job.g_basis;
        built.emplace(
            job.name,
            BuiltJob{build_reducing(ReducingCandidate{g}, s.ambient), "",
                     job.kind});
      } else {  // custom
        Matrix q = mgs_orthonormalize(job.columns, 1e-10);
        built.emplace(
            job.name,
            BuiltJob{make_subspace_basis(std::move(q), s.ambient, job.name),
                     "", job.kind});
      }
    } catch (const std::exception& e) {
      Json entry;
      entry["analysis"] = "build";
      entry["subspace"] = job.name;
      entry["pass"] = false;
      entry["error"] = e.what();
      results.push_back(std::move(entry));
      all_pass = false;
      ++failed;
      build_ok = false;
    }
  }

  if (build_ok) {
    for (const auto& a : s.analyses) {
      Json entry;
      entry["analysis"] = a.kind;
      if (!a.subspace.empty()) entry["subspace"] = a.subspace;
      try {
        Json body;
        if (a.kind == "verify") {
          body = run_verify(built.at(a.subspace), params, a);
        } else if (a.kind == "classify") {
          body = run_classify(built.at(a.subspace), params, a);
        } else if (a.kind == "canonical") {
          body = run_canonical(s, built.at(a.subspace), params, a);
        } else if (a.kind == "equivalence") {
          body = run_equivalence(s, a);
        } else if (a.kind == "power_growth") {
          body = run_power_growth(s, params, a, rng);
        } else if (a.kind == "c00") {
          body = run_c00(s, params, a, rng);
        } else {  // irreducibility
          body = run_irreducibility(params, a, rng);
        }
        entry.update(body);
      } catch (const std::exception& e) {
        entry["pass"] = false;
        entry["error"] = e.what();
      }
      const bool ok = entry.value("pass", false);
      all_pass = all_pass && ok;
      (ok ? passed : failed) += 1;
      results.push_back(std::move(entry));
    }
  }

  Json report;
  report["schema_version"] = 1;
  report["kind"] = "scenario_report";
  report["generated_at"] = iso_timestamp();
  report["environment"] = {
      {"precision", "complex<double>"},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                    std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)},
      {"fiber_dim", s.ambient.fiber_dim},
      {"max_degree", s.ambient.max_degree},
      {"seed", s.seed}};
  report["scenario"] = scenario_to_json(s);
  report["results"] = std::move(results);
  report["summary"] = {{"pass", all_pass},
                       {"passed", passed},
                       {"failed", failed},
                       {"total", passed + failed}};
  return report;
}

bool report_passed(const Json& report) {
  return report.contains("summary") &&
         report.at("summary").value("pass", false);
}

namespace {

// psi = z^2, sigma = 1, theta = 0: the canonical scalar Type II example.
constexpr const char* kAglerStankusScalar = R"json({
  "schema_version": 1,
  "name": "agler_stankus_scalar",
  "seed": 42,
  "ambient": {"fiber_dim": 1, "max_degree": 128},
  "brownian": {"sigma": 1.0, "theta": 0.0},
  "inner_specs": [
    {
      "name": "psi",
      "constant_factor": [[[1.0, 0.0]]],
      "factors": [
        {"kind": "scalar", "zero_re": 0.0, "zero_im": 0.0},
        {"kind": "scalar", "zero_re": 0.0, "zero_im": 0.0}
      ]
    }
  ],
  "subspace_jobs": [
    {"name": "M", "kind": "type2", "inner_spec": "psi",
     "parameter_space": [[[1.0, 0.0]]]}
  ],
  "analyses": [
    {"kind": "verify", "subspace": "M"},
    {"kind": "classify", "subspace": "M", "expect": "type2"},
    {"kind": "canonical", "subspace": "M", "inner_spec": "psi"},
    {"kind": "power_growth", "n_max": 64},
    {"kind": "c00", "m_max": 64},
    {"kind": "irreducibility", "trials": 25}
  ]
})json";

constexpr const char* kReducingProbe = R"json({
  "schema_version": 1,
  "name": "reducing_probe",
  "seed": 7,
  "ambient": {"fiber_dim": 2, "max_degree": 48},
  "brownian": {"sigma": 1.0, "theta": 1.1},
  "inner_specs": [],
  "subspace_jobs": [
    {"name": "R", "kind": "reducing", "g_basis": [[[1.0, 0.0]], [[0.0, 0.0]]]},
    {"name": "full", "kind": "reducing",
     "g_basis": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]}
  ],
  "analyses": [
    {"kind": "verify", "subspace": "R"},
    {"kind": "verify", "subspace": "full"},
    {"kind": "classify", "subspace": "R", "expect": "type2"}
  ]
})json";

Json equivalence_grid_scenario() {
  Json j;
  j["schema_version"] = 1;
  j["name"] = "equivalence_grid";
  j["seed"] = 11;
  j["ambient"] = {{"fiber_dim", 1}, {"max_degree", 128}};
  j["brownian"] = {{"sigma", 1.0}, {"theta", 0.0}};
  Json specs = Json::array();
  for (int k = 1; k <= 3; ++k) {
    Json factors = Json::array();
    for (int i = 0; i < k; ++i)
      factors.push_back(
          {{"kind", "scalar"}, {"zero_re", 0.0}, {"zero_im", 0.0}});
    specs.push_back(
        {{"name", "z" + std::to_string(k)},
         {"constant_factor",
          Json::array({Json::array({Json::array({1.0, 0.0})})})},
         {"factors", factors}});
  }
  j["inner_specs"] = std::move(specs);
  j["subspace_jobs"] = Json::array();
  Json analyses = Json::array();
  const double sigmas[] = {0.5, 1.0, 2.0};
  for (int k1 = 1; k1 <= 3; ++k1) {
    for (int k2 = 1; k2 <= 3; ++k2) {
      for (double s1 : sigmas) {
        for (double s2 : sigmas) {
          const double denom = 1.0 + (k1 - k2) * s1 * s1;
          const bool expected =
              denom > 0.0 && std::abs(s2 * s2 - s1 * s1 / denom) < 1e-9;
          analyses.push_back(
              {{"kind", "equivalence"},
               {"mode", "scalar_type2"},
               {"left_spec", "z" + std::to_string(k1)},
               {"right_spec", "z" + std::to_string(k2)},
               {"left_brownian", {{"sigma", s1}, {"theta", 0.0}}},
               {"right_brownian", {{"sigma", s2}, {"theta", 0.0}}},
               {"expect_equivalent", expected}});
        }
        // the solvable pair on the criterion curve
        const double denom = 1.0 + (k1 - k2) * s1 * s1;
        if (denom > 0.0) {
          analyses.push_back(
              {{"kind", "equivalence"},
               {"mode", "scalar_type2"},
               {"left_spec", "z" + std::to_string(k1)},
               {"right_spec", "z" + std::to_string(k2)},
               {"left_brownian", {{"sigma", s1}, {"theta", 0.0}}},
               {"right_brownian",
                {{"sigma", std::sqrt(s1 * s1 / denom)}, {"theta", 0.0}}},
               {"expect_equivalent", true}});
        }
      }
    }
  }
  j["analyses"] = std::move(analyses);
  return j;
}

}  // namespace

std::vector<std::string> bundled_scenario_names() {
  return {"agler_stankus_scalar", "equivalence_grid", "reducing_probe"};
}

std::string bundled_scenario_text(const std::string& name) {
  if (name == "agler_stankus_scalar") return kAglerStankusScalar;
  if (name == "reducing_probe") return kReducingProbe;
  if (name == "equivalence_grid") return equivalence_grid_scenario().dump(2);
  throw ScenarioError("unknown bundled scenario '" + name + "'");
}

}  // namespace bshift
