#include "bshift/suite.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "bshift/random_gen.hpp"

namespace bshift {

namespace {

constexpr int kSweepDegree = 128;
constexpr int kGrowthDegree = 64;

struct SweepCase {
  InnerSpec spec;
  BrownianParams params;
};

SweepCase draw_case(Rng& rng, int max_degree) {
  InnerSpec spec = random_inner_spec(rng, 3, 4, 0.5);
  AmbientSpec ambient(spec.codomain_dim(), max_degree);
  BrownianParams params(rng.uniform(0.4, 2.0), rng.uniform(0.0, 2.0 * M_PI),
                        ambient);
  return SweepCase{std::move(spec), std::move(params)};
}

HardyElement multiply_by_zeta(const HardyElement& q, double theta) {
  HardyElement out = shift(q);
  out -= HardyElement(Matrix(unit_circle(theta) * q.coeffs()));
  return out;
}

// ---------------------------------------------------------------- criteria

SuiteCheck criterion_type1(std::uint64_t seed, double tol_override) {
  Rng rng(seed);
  const double tol = 1e-9 * kSweepDegree;
  const double op_tol = tol_override > 0.0 ? tol_override : tol;
  double worst = 0.0;
  bool pass = true;
  for (int t = 0; t < 20; ++t) {
    SweepCase c = draw_case(rng, kSweepDegree);
    SubspaceBasis m = build_type1(c.spec, c.params.ambient, op_tol);
    InvarianceReport r = verify_invariance(m, c.params, op_tol);
    worst = std::max(worst, r.max_residual);
    pass = pass && r.max_residual < tol &&
           classify(m, c.params, op_tol) == SubspaceClass::TypeI;
  }
  return SuiteCheck{"1", "type1 construction and verification", pass,
                    Json{{"sweeps", 20},
                         {"worst_residual", worst},
                         {"tolerance", tol}}};
}

SuiteCheck criterion_type2(std::uint64_t seed, double tol_override) {
  Rng rng(seed);
  const double tol = 1e-9 * kSweepDegree;
  const double op_tol = tol_override > 0.0 ? tol_override : tol;
  double worst_residual = 0.0;
  double worst_norm_gap = 0.0;
  double worst_boundary = 0.0;
  bool pass = true;
  for (int t = 0; t < 20; ++t) {
    SweepCase c = draw_case(rng, kSweepDegree);
    const int r = rng.uniform_int(1, c.spec.domain_dim());
    Matrix x_space = random_gaussian_matrix(rng, c.spec.domain_dim(), r);
    Type2Construction t2 = build_type2(c.spec, c.params, x_space, op_tol);
    InvarianceReport rep = verify_invariance(t2.basis, c.params, op_tol);
    worst_residual = std::max(worst_residual, rep.max_residual);
    pass = pass && rep.max_residual < tol &&
           classify(t2.basis, c.params, op_tol) == SubspaceClass::TypeII;
    const Matrix boundary = c.spec.evaluate(c.params.boundary_point());
    for (const auto& e : t2.elements) {
      const double scale = c.params.sigma * e.y.norm();
      const double norm_gap = std::abs(e.x.norm() - scale) / scale;
      const double boundary_gap =
          (boundary * e.x - c.params.sigma * e.y).norm();
      worst_norm_gap = std::max(worst_norm_gap, norm_gap);
      worst_boundary = std::max(worst_boundary, boundary_gap);
      pass = pass && norm_gap < 1e-8 && boundary_gap < 1e-8;
    }
  }
  return SuiteCheck{"2", "type2 construction and verification", pass,
                    Json{{"sweeps", 20},
                         {"worst_residual", worst_residual},
                         {"worst_norm_constraint_rel", worst_norm_gap},
                         {"worst_boundary_residual", worst_boundary},
                         {"tolerance", tol}}};
}

SuiteCheck criterion_canonical_roundtrip(std::uint64_t seed,
                                         double tol_override) {
  Rng rng(seed);
  double worst_angle = 0.0;
  double worst_x = 0.0;
  bool pass = true;
  for (int t = 0; t < 20; ++t) {
    SweepCase c = draw_case(rng, kSweepDegree);
    const int r = rng.uniform_int(1, c.spec.domain_dim());
    Matrix x_space = random_gaussian_matrix(rng, c.spec.domain_dim(), r);
    Type2Construction t2 = build_type2(c.spec, c.params, x_space, tol_override);
    CanonicalDecomposition d =
        canonical_decomposition(t2.basis, c.params, &c.spec, tol_override);

    const double a0 =
        max_principal_angle(d.m0.columns, t2.type1_block.columns);
    const double a1 =
        max_principal_angle(d.defect.columns, t2.defect_block.columns);
    worst_angle = std::max({worst_angle, a0, a1});
    pass = pass && a0 < 1e-7 && a1 < 1e-7;

    // the SVD defect basis is a rotation of the constructed one; x is
    // linear in the element, so parameters must transport through the same
    // rotation
    Matrix rot = t2.defect_block.columns.adjoint() * d.defect.columns;
    for (int j = 0; j < d.defect.dim(); ++j) {
      Vector expected = Vector::Zero(c.spec.domain_dim());
      for (int i = 0; i < t2.defect_block.dim(); ++i)
        expected += rot(i, j) * t2.elements[i].x;
      const double rel =
          (d.elements[j].x - expected).norm() / expected.norm();
      worst_x = std::max(worst_x, rel);
      pass = pass && rel < 1e-7;
    }
  }
  return SuiteCheck{"3", "canonical decomposition round trip", pass,
                    Json{{"sweeps", 20},
                         {"worst_principal_angle", worst_angle},
                         {"worst_x_rel_error", worst_x}}};
}

SuiteCheck criterion_scalar_closed_form(std::uint64_t seed) {
  (void)seed;
  AmbientSpec ambient(1, kSweepDegree);
  double worst_coeff = 0.0;
  double worst_norm = 0.0;
  bool pass = true;
  for (int k = 1; k <= 5; ++k) {
    for (double sigma : {0.5, 1.0, 2.0}) {
      BrownianParams params(sigma, 0.0, ambient);
      InnerSpec psi = InnerSpec::monomial(k);
      GPhiElement e = build_gphi_element(
          psi, params, scalar_canonical_parameter(psi, params));
      // g = sigma (1 + z + ... + z^{k-1})
      for (int n = 0; n <= ambient.max_degree; ++n) {
        const Complex expected = n < k ? Complex(sigma) : Complex(0.0);
        worst_coeff =
            std::max(worst_coeff, std::abs(e.g.coeffs()(0, n) - expected));
      }
      const double norm_gap =
          std::abs(e.g.squared_norm() - k * sigma * sigma);
      worst_norm = std::max(worst_norm, norm_gap);
      pass = pass && worst_coeff < 1e-12 &&
             norm_gap < 1e-12 * std::max(1.0, k * sigma * sigma);
    }
  }
  return SuiteCheck{"4", "scalar Agler-Stankus closed form", pass,
                    Json{{"worst_coefficient_error", worst_coeff},
                         {"worst_norm_error", worst_norm}}};
}

SuiteCheck criterion_equivalence_grid(std::uint64_t seed) {
  (void)seed;
  AmbientSpec ambient(1, kSweepDegree);
  const double sigmas[] = {0.5, 1.0, 2.0};
  int decisions = 0;
  double worst_residual = 0.0;
  bool pass = true;
  for (int k1 = 1; k1 <= 3; ++k1) {
    for (int k2 = 1; k2 <= 3; ++k2) {
      for (double s1 : sigmas) {
        const double denom = 1.0 + (k1 - k2) * s1 * s1;
        auto run_pair = [&](double s2, bool expected) {
          BrownianParams p1(s1, 0.0, ambient);
          BrownianParams p2(s2, 0.0, ambient);
          EquivalenceVerdict v = decide_scalar_type2(
              p1, p2, InnerSpec::monomial(k1), InnerSpec::monomial(k2));
          pass = pass && v.equivalent == expected;
          if (v.equivalent) {
            pass = pass && v.residual && *v.residual < 1e-8;
            worst_residual = std::max(worst_residual, *v.residual);
          }
          ++decisions;
        };
        for (double s2 : sigmas) {
          const bool expected =
              denom > 0.0 && std::abs(s2 * s2 - s1 * s1 / denom) < 1e-9;
          run_pair(s2, expected);
        }
        if (denom > 0.0) run_pair(std::sqrt(s1 * s1 / denom), true);
      }
    }
  }
  return SuiteCheck{"5", "scalar equivalence criterion grid", pass,
                    Json{{"decisions", decisions},
                         {"worst_intertwining_residual", worst_residual}}};
}

SuiteCheck criterion_norm_separation(std::uint64_t seed) {
  Rng rng(seed);
  bool pass = true;
  double worst_type1_dev = 0.0;
  AmbientSpec ambient(1, kGrowthDegree);
  BrownianParams p(1.0, 0.0, ambient);

  SubspaceBasis m1 = build_type1(InnerSpec::monomial(1), ambient);
  Type2Construction m2 =
      build_type2(InnerSpec::monomial(1), p, Matrix::Identity(1, 1));
  NormSeparationReport r = norm_separation(m1, p, m2.basis, p);
  pass = pass && r.cross_type && r.separated;
  worst_type1_dev = std::max(worst_type1_dev, r.type1_deviation);
  pass = pass && r.type1_deviation <= 1e-8;
  // sigma = 1, |y|^2 = 1/2 case: restricted norm at least sqrt(3/2 - 1e-6)
  const double type2_norm = r.norm2;
  pass = pass && type2_norm >= std::sqrt(1.5 - 1e-6);

  // a few random Type I restricted norms stay at 1
  for (int t = 0; t < 5; ++t) {
    SweepCase c = draw_case(rng, kGrowthDegree);
    SubspaceBasis m = build_type1(c.spec, c.params.ambient);
    const double dev = std::abs(restricted_norm(m, c.params) - 1.0);
    worst_type1_dev = std::max(worst_type1_dev, dev);
    pass = pass && dev <= 1e-8;
  }
  return SuiteCheck{"6", "cross-type norm separation", pass,
                    Json{{"type1_worst_deviation", worst_type1_dev},
                         {"type2_norm", type2_norm},
                         {"type2_lower_bound", std::sqrt(1.5 - 1e-6)}}};
}

SuiteCheck criterion_reducing(std::uint64_t seed, double tol_override) {
  Rng rng(seed);
  const double tol = 1e-9 * kGrowthDegree;
  const double op_tol = tol_override > 0.0 ? tol_override : tol;
  bool pass = true;
  double worst_residual = 0.0;
  double worst_angle = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int d = rng.uniform_int(1, 3);
    AmbientSpec ambient(d, kGrowthDegree);
    BrownianParams params(rng.uniform(0.4, 2.0),
                          rng.uniform(0.0, 2.0 * M_PI), ambient);
    Matrix g = random_isometry(rng, d, rng.uniform_int(1, d));
    SubspaceBasis m = build_reducing(ReducingCandidate{g}, ambient);
    ReducingReport r = verify_reducing(m, params, op_tol);
    worst_residual =
        std::max({worst_residual, r.fwd_residual, r.adj_residual});
    pass = pass && r.reducing;

    Matrix extracted = extract_reducing_fiber_span(m);
    const double angle = max_principal_angle(extracted, g);
    worst_angle = std::max(worst_angle, angle);
    pass = pass && angle < 1e-7;
  }
  int random_failures = 0;
  AmbientSpec ambient2(2, 32);
  BrownianParams params2(1.0, 0.9, ambient2);
  for (int t = 0; t < 100; ++t) {
    SubspaceBasis m = random_subspace(rng, ambient2, rng.uniform_int(1, 6));
    if (!verify_reducing(m, params2).reducing) ++random_failures;
  }
  pass = pass && random_failures == 100;
  return SuiteCheck{"7", "reducing subspace characterization", pass,
                    Json{{"worst_residual", worst_residual},
                         {"tolerance", tol},
                         {"worst_extraction_angle", worst_angle},
                         {"random_rejected", random_failures}}};
}

SuiteCheck criterion_growth_c00(std::uint64_t seed) {
  Rng rng(seed);
  bool pass = true;
  double worst_growth = 0.0;
  double worst_final_ratio = 0.0;
  for (double sigma : {0.5, 1.0, 2.0}) {
    for (int d : {1, 2}) {
      AmbientSpec ambient(d, kGrowthDegree);
      BrownianParams params(sigma, rng.uniform(0.0, 2.0 * M_PI), ambient);
      Vector x = random_vector(rng, d);
      std::vector<double> seq = power_growth(params, x, kGrowthDegree);
      for (int n = 0; n <= kGrowthDegree; ++n) {
        const double expected =
            (1.0 + n * sigma * sigma) * x.squaredNorm();
        worst_growth =
            std::max(worst_growth, std::abs(seq[n] - expected) / expected);
      }
      pass = pass && worst_growth < 1e-10;

      // polynomial test vector for the adjoint decay
      HardyElement f(d, kGrowthDegree);
      f.coeffs().leftCols(11) = random_gaussian_matrix(rng, d, 11);
      C00Report r = c00_decay(params, BrownianElement(f, Vector::Zero(d)),
                              kGrowthDegree);
      bool monotone = true;
      for (std::size_t m = 1; m < r.adjoint.size(); ++m)
        monotone = monotone && r.adjoint[m] <= r.adjoint[m - 1] * (1 + 1e-12);
      const double ratio = r.adjoint.back() / r.adjoint.front();
      worst_final_ratio = std::max(worst_final_ratio, ratio);
      pass = pass && monotone && ratio < 1e-3;
    }
  }
  return SuiteCheck{"8", "2-isometry growth and C00 decay", pass,
                    Json{{"worst_growth_rel_error", worst_growth},
                         {"worst_adjoint_final_ratio", worst_final_ratio}}};
}

SuiteCheck criterion_division(std::uint64_t seed, double tol_override) {
  Rng rng(seed);
  const int n_max = kGrowthDegree;
  bool pass = true;
  double worst_coeff = 0.0;
  int flagged = 0;
  for (int t = 0; t < 50; ++t) {
    const double theta = rng.uniform(0.0, 2.0 * M_PI);
    const int d = rng.uniform_int(1, 3);
    HardyElement q(d, n_max);
    q.coeffs() = random_gaussian_matrix(rng, d, n_max + 1);
    q.coeffs().col(n_max).setZero();
    HardyElement h = multiply_by_zeta(q, theta);
    DivisionResult r = divide_by_zeta(h, theta, tol_override);
    const double err =
        (r.quotient.coeffs() - q.coeffs()).cwiseAbs().maxCoeff();
    worst_coeff = std::max(worst_coeff, err);
    pass = pass && !r.flagged && err < 1e-10;

    // perturbed numerator with boundary value at least 1e-3
    HardyElement bad = h;
    Vector bump = random_vector(rng, d);
    bump *= rng.uniform(1e-3, 1.0) / bump.norm();
    bad.coeffs().col(0) += bump;
    DivisionResult rb = divide_by_zeta(bad, theta, tol_override);
    if (rb.flagged) ++flagged;
  }
  pass = pass && flagged == 50;
  return SuiteCheck{"9", "division oracle and boundary flags", pass,
                    Json{{"worst_coefficient_error", worst_coeff},
                         {"perturbed_flagged", flagged}}};
}

Json determinism_payload(std::uint64_t seed) {
  Json out;
  out["properties"] = suite_report_to_json(run_properties(seed));
  Json scenario_runs = Json::array();
  for (const std::string& name : bundled_scenario_names()) {
    Scenario s = parse_scenario(Json::parse(bundled_scenario_text(name)));
    Json report = run_scenario(s);
    report.erase("generated_at");
    scenario_runs.push_back(std::move(report));
  }
  out["scenarios"] = std::move(scenario_runs);
  return out;
}

SuiteCheck criterion_determinism(std::uint64_t seed) {
  const std::string first = determinism_payload(seed).dump();
  const std::string second = determinism_payload(seed).dump();
  const bool pass = first == second;
  return SuiteCheck{"10", "determinism of seeded runs", pass,
                    Json{{"payload_bytes", first.size()},
                         {"identical", pass}}};
}

// -------------------------------------------------------------- properties

SuiteCheck property_hardy(std::uint64_t seed) {
  Rng rng(seed);
  bool pass = true;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int d = rng.uniform_int(1, 3);
    const int n = 32;
    HardyElement f(d, n);
    f.coeffs() = random_gaussian_matrix(rng, d, n + 1);
    f.coeffs().col(n).setZero();
    worst = std::max(worst, std::abs(shift(f).norm() - f.norm()));
    HardyElement g(d, n);
    g.coeffs() = random_gaussian_matrix(rng, d, n + 1);
    worst = std::max(worst, std::abs(inner_product(shift(f), g) -
                                     inner_product(f, shift_adjoint(g))));
    Vector x = random_vector(rng, d);
    worst = std::max(worst,
                     std::abs(include_fiber(x, n).norm() - x.norm()));
    pass = pass && worst < 1e-11;
  }
  for (int t = 0; t < 30; ++t) {
    const double theta = rng.uniform(0.0, 2.0 * M_PI);
    HardyElement q(1, 48);
    q.coeffs() = random_gaussian_matrix(rng, 1, 49);
    q.coeffs().col(48).setZero();
    HardyElement h = multiply_by_zeta(q, theta);
    DivisionResult r = divide_by_zeta(h, theta);
    HardyElement check = multiply_by_zeta(r.quotient, theta);
    check -= h;
    pass = pass && check.norm() <= r.residual + 48 * 1e-16 * h.norm() &&
           !r.flagged;
  }
  return SuiteCheck{"hardy", "shift/adjoint/division invariants", pass,
                    Json{{"worst_identity_error", worst}}};
}

SuiteCheck property_inner(std::uint64_t seed) {
  Rng rng(seed);
  bool pass = true;
  double worst_iso = 0.0;
  for (int t = 0; t < 5; ++t) {
    InnerSpec spec = random_inner_spec(rng, 3, 4, 0.6);
    for (int p = 0; p < 20; ++p) {
      const Complex w = unit_circle(rng.uniform(0.0, 2.0 * M_PI));
      Vector x = random_vector(rng, spec.domain_dim());
      worst_iso = std::max(
          worst_iso,
          std::abs((spec.evaluate(w) * x).norm() - x.norm()) / x.norm());
    }
    pass = pass && worst_iso < 1e-12;

    const double theta = rng.uniform(0.0, 2.0 * M_PI);
    const Matrix boundary = spec.evaluate(unit_circle(theta));
    double last = 1e99;
    for (double radius : {0.9, 0.99, 0.999}) {
      const double gap =
          (spec.evaluate(radius * unit_circle(theta)) - boundary).norm();
      pass = pass && gap < last;
      last = gap;
    }

    const int n = 64;
    TaylorTable table = taylor(spec, n);
    HardyElement f(spec.domain_dim(), n);
    f.coeffs().leftCols(16) =
        random_gaussian_matrix(rng, spec.domain_dim(), 16);
    HardyElement lhs = table.apply(shift(f));
    HardyElement rhs = shift(table.apply(f));
    pass = pass && (lhs.coeffs() - rhs.coeffs()).norm() < 1e-10 * f.norm();

    HardyElement v(spec.codomain_dim(), n);
    v.coeffs().leftCols(16) =
        random_gaussian_matrix(rng, spec.codomain_dim(), 16);
    HardyElement once = model_space_projection(table, v);
    HardyElement twice = model_space_projection(table, once);
    pass = pass && (once.coeffs() - twice.coeffs()).norm() < 1e-10 * v.norm();
  }
  return SuiteCheck{"inner", "boundary isometry/intertwining/projection",
                    pass, Json{{"worst_boundary_isometry_rel", worst_iso}}};
}

SuiteCheck property_brownian(std::uint64_t seed) {
  Rng rng(seed);
  bool pass = true;
  for (int t = 0; t < 30; ++t) {
    const int d = rng.uniform_int(1, 3);
    AmbientSpec ambient(d, 32);
    BrownianParams params(rng.uniform(0.3, 2.2),
                          rng.uniform(0.0, 2.0 * M_PI), ambient);
    HardyElement f(d, 32);
    f.coeffs() = random_gaussian_matrix(rng, d, 33);
    f.coeffs().col(32).setZero();
    Vector x = random_vector(rng, d);
    // block identity, coefficientwise
    BrownianElement image = apply(params, BrownianElement(f, x));
    HardyElement expected = shift(f);
    expected += include_fiber(Vector(params.sigma * x), 32);
    pass = pass &&
           (image.analytic.coeffs() - expected.coeffs()).norm() < 1e-13 &&
           (image.fiber - params.boundary_point() * x).norm() < 1e-13;
    // restriction to the analytic block is the plain shift
    BrownianElement restricted =
        apply(params, BrownianElement(f, Vector::Zero(d)));
    pass = pass && restricted.fiber.norm() == 0.0 &&
           (restricted.analytic.coeffs() - shift(f).coeffs()).norm() == 0.0;
  }
  for (double sigma : {0.5, 1.0, 2.0}) {
    AmbientSpec ambient(1, 48);
    BrownianParams params(sigma, 1.1, ambient);
    OperatorNormResult norm = operator_norm(params);
    pass = pass && norm.stable && norm.value > 1.0;
    Vector x(1);
    x(0) = 1.0;
    std::vector<double> growth = power_growth(params, x, 48);
    for (int n = 0; n <= 48; ++n) {
      const double expected = 1.0 + n * sigma * sigma;
      pass = pass && std::abs(growth[n] - expected) < 1e-9 * expected;
    }
  }
  return SuiteCheck{"brownian", "block identity and growth law", pass,
                    Json::object()};
}

SuiteCheck property_subspace(std::uint64_t seed) {
  Rng rng(seed);
  bool pass = true;
  for (int t = 0; t < 6; ++t) {
    SweepCase c = draw_case(rng, kGrowthDegree);
    TaylorTable table = taylor(c.spec, kGrowthDegree);
    Vector x1 = random_vector(rng, c.spec.domain_dim());
    Vector x2 = random_vector(rng, c.spec.domain_dim());
    GPhiElement e1 = build_gphi_element(c.spec, c.params, x1);
    GPhiElement e2 = build_gphi_element(c.spec, c.params, x2);
    pass = pass && e1.y.norm() > 0.0 && !e1.flagged;
    // model-space membership
    HardyElement proj = model_space_projection(table, e1.g);
    pass = pass &&
           (proj.coeffs() - e1.g.coeffs()).norm() < 1e-9 * (1 + e1.g.norm());
    // linearity
    const Complex a(rng.gaussian(), rng.gaussian());
    const Complex b(rng.gaussian(), rng.gaussian());
    GPhiElement mix = build_gphi_element(c.spec, c.params,
                                         Vector(a * x1 + b * x2));
    pass = pass && (mix.g.coeffs() -
                    (a * e1.g.coeffs() + b * e2.g.coeffs()))
                           .norm() < 1e-10 * (1 + mix.g.norm());
    // parameter uniqueness through recovery
    XRecovery rec = recover_parameter(table, c.params, e1.g, e1.y);
    pass = pass && (rec.x - x1).norm() < 1e-9 * (1 + x1.norm());
    // invariance of both builders
    SubspaceBasis m1 = build_type1(c.spec, c.params.ambient);
    pass = pass && verify_invariance(m1, c.params).invariant;
    Type2Construction t2 = build_type2(
        c.spec, c.params,
        random_gaussian_matrix(rng, c.spec.domain_dim(), 1));
    pass = pass && verify_invariance(t2.basis, c.params).invariant;
    // boundary identity
    pass = pass &&
           (c.spec.evaluate(c.params.boundary_point()) * e1.x -
            c.params.sigma * e1.y)
                   .norm() < 1e-9;
  }
  return SuiteCheck{"subspace", "G_Phi lemma and builder invariants", pass,
                    Json::object()};
}

// Exhaustive search over the one-parameter family of U_G phases for the
// scalar case; the criterion must agree with certificate existence.
bool scalar_certificate_search(const InnerSpec& psi1,
                               const BrownianParams& p1,
                               const InnerSpec& psi2,
                               const BrownianParams& p2) {
  Type2Construction c1 = build_type2(psi1, p1, Matrix::Identity(1, 1));
  Type2Construction c2 = build_type2(psi2, p2, Matrix::Identity(1, 1));
  TaylorTable table2 = taylor(psi2, p2.ambient.max_degree);
  const Complex x1 = c1.elements[0].x(0);
  for (int step = 0; step < 16; ++step) {
    const double phase = 2.0 * M_PI * step / 16.0;
    Matrix ug(1, 1);
    ug(0, 0) = unit_circle(phase);
    BrownianElement image =
        unpack(Vector(c2.defect_block.columns * ug.col(0)), p2.ambient);
    XRecovery rec = recover_parameter(table2, p2, image.analytic, image.fiber);
    const Complex ratio = rec.x(0) / x1;
    if (std::abs(std::abs(ratio) - 1.0) > 1e-6) return false;  // no unitary U_E
    Matrix ue(1, 1);
    ue(0, 0) = ratio / std::abs(ratio);
    EquivalenceVerdict v =
        certify_type2(c1, psi1, p1, c2, psi2, p2, ug, ue, 1e-8);
    if (v.equivalent) return true;
    if (v.reason == VerdictReason::theta_mismatch) return false;
  }
  return false;
}

SuiteCheck property_equivalence(std::uint64_t seed) {
  Rng rng(seed);
  bool pass = true;
  AmbientSpec ambient(1, kSweepDegree);
  // reflexivity
  for (int t = 0; t < 3; ++t) {
    const int k = rng.uniform_int(1, 3);
    BrownianParams p(rng.uniform(0.4, 2.0), 0.0, ambient);
    EquivalenceVerdict v1 =
        decide_type1(InnerSpec::monomial(k), p, InnerSpec::monomial(k), p);
    pass = pass && v1.equivalent && *v1.residual < 1e-9;
    EquivalenceVerdict v2 = decide_scalar_type2(
        p, p, InnerSpec::monomial(k), InnerSpec::monomial(k));
    pass = pass && v2.equivalent && *v2.residual < 1e-9;
  }
  // criterion vs certificate search on 50 random scalar pairs, with the
  // verdict symmetric under swapping the inputs
  int agreements = 0;
  for (int t = 0; t < 50; ++t) {
    const int k1 = rng.uniform_int(1, 3);
    const int k2 = rng.uniform_int(1, 3);
    const double s1 = rng.uniform(0.4, 2.0);
    double s2;
    if (rng.uniform(0.0, 1.0) < 0.4) {
      const double denom = 1.0 + (k1 - k2) * s1 * s1;
      s2 = denom > 0.0 ? std::sqrt(s1 * s1 / denom)
                       : rng.uniform(0.4, 2.0);
    } else {
      s2 = rng.uniform(0.4, 2.0);
    }
    const double theta = rng.uniform(0.0, 1.0) < 0.8 ? 0.7 : 1.9;
    BrownianParams p1(s1, 0.7, ambient);
    BrownianParams p2(s2, theta, ambient);
    InnerSpec psi1 = InnerSpec::monomial(k1);
    InnerSpec psi2 = InnerSpec::monomial(k2);
    EquivalenceVerdict v = decide_scalar_type2(p1, p2, psi1, psi2);
    const bool found = scalar_certificate_search(psi1, p1, psi2, p2);
    if (v.equivalent == found) ++agreements;
    EquivalenceVerdict swapped = decide_scalar_type2(p2, p1, psi2, psi1);
    pass = pass && swapped.equivalent == v.equivalent;
  }
  pass = pass && agreements == 50;
  return SuiteCheck{"equivalence", "criterion matches certificate search",
                    pass, Json{{"agreements", agreements}}};
}

SuiteCheck property_structure(std::uint64_t seed) {
  Rng rng(seed);
  bool pass = true;
  for (int t = 0; t < 20; ++t) {
    const int d = rng.uniform_int(1, 3);
    AmbientSpec ambient(d, 32);
    BrownianParams params(rng.uniform(0.4, 2.0),
                          rng.uniform(0.0, 2.0 * M_PI), ambient);
    Matrix g = random_isometry(rng, d, rng.uniform_int(1, d));
    SubspaceBasis m = build_reducing(ReducingCandidate{g}, ambient);
    pass = pass && verify_reducing(m, params).reducing;
    Matrix extracted = extract_reducing_fiber_span(m);
    pass = pass && max_principal_angle(extracted, g) < 1e-7;
  }
  // no Type II invariant subspace reduces
  for (int t = 0; t < 8; ++t) {
    SweepCase c = draw_case(rng, kGrowthDegree);
    Type2Construction t2 = build_type2(
        c.spec, c.params,
        random_gaussian_matrix(rng, c.spec.domain_dim(), 1));
    pass = pass && !verify_reducing(t2.basis, c.params).reducing;
  }
  return SuiteCheck{"structure", "product reducing characterization", pass,
                    Json::object()};
}

SuiteReport finalize(std::string name, std::uint64_t seed,
                     std::vector<SuiteCheck> checks) {
  bool all = true;
  for (const auto& c : checks) all = all && c.pass;
  return SuiteReport{std::move(name), seed, std::move(checks), all};
}

// A criterion that throws (for example a construction flag fired under a
// forced tolerance) is an honest FAIL, not a crash.
template <typename Fn>
SuiteCheck guarded(const char* id, const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return SuiteCheck{id, name, false, Json{{"error", e.what()}}};
  }
}

}  // namespace

SuiteReport run_acceptance(std::uint64_t seed, double tolerance_override) {
  const double ov = tolerance_override;
  std::vector<SuiteCheck> checks;
  checks.push_back(guarded("1", "type1 construction and verification",
                           [&] { return criterion_type1(seed + 1, ov); }));
  checks.push_back(guarded("2", "type2 construction and verification",
                           [&] { return criterion_type2(seed + 2, ov); }));
  checks.push_back(
      guarded("3", "canonical decomposition round trip",
              [&] { return criterion_canonical_roundtrip(seed + 3, ov); }));
  checks.push_back(guarded("4", "scalar Agler-Stankus closed form", [&] {
    return criterion_scalar_closed_form(seed + 4);
  }));
  checks.push_back(guarded("5", "scalar equivalence criterion grid", [&] {
    return criterion_equivalence_grid(seed + 5);
  }));
  checks.push_back(guarded("6", "cross-type norm separation", [&] {
    return criterion_norm_separation(seed + 6);
  }));
  checks.push_back(guarded("7", "reducing subspace characterization", [&] {
    return criterion_reducing(seed + 7, ov);
  }));
  checks.push_back(guarded("8", "2-isometry growth and C00 decay", [&] {
    return criterion_growth_c00(seed + 8);
  }));
  checks.push_back(guarded("9", "division oracle and boundary flags", [&] {
    return criterion_division(seed + 9, ov);
  }));
  checks.push_back(guarded("10", "determinism of seeded runs", [&] {
    return criterion_determinism(seed + 10);
  }));
  return finalize("acceptance", seed, std::move(checks));
}

SuiteReport run_properties(std::uint64_t seed) {
  std::vector<SuiteCheck> checks;
  checks.push_back(property_hardy(seed + 21));
  checks.push_back(property_inner(seed + 22));
  checks.push_back(property_brownian(seed + 23));
  checks.push_back(property_subspace(seed + 24));
  checks.push_back(property_equivalence(seed + 25));
  checks.push_back(property_structure(seed + 26));
  return finalize("properties", seed, std::move(checks));
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed,
                      double tolerance_override) {
  if (name == "acceptance") return run_acceptance(seed, tolerance_override);
  if (name == "properties") return run_properties(seed);
  if (name != "all")
    throw ScenarioError("unknown suite '" + name +
                        "' (expected acceptance, properties, or all)");
  SuiteReport acc = run_acceptance(seed, tolerance_override);
  SuiteReport props = run_properties(seed);
  std::vector<SuiteCheck> checks = std::move(props.checks);
  for (auto& c : acc.checks) checks.push_back(std::move(c));
  return finalize("all", seed, std::move(checks));
}

Json suite_report_to_json(const SuiteReport& report) {
  Json j;
  j["kind"] = "suite_report";
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["pass"] = report.all_pass;
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json cj;
    cj["id"] = c.id;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["details"] = c.details;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j;
}

void print_suite_report(const SuiteReport& report, std::ostream& os) {
  os << "suite: " << report.suite << " (seed " << report.seed << ")\n";
  for (const auto& c : report.checks) {
    os << "  [" << std::setw(2) << c.id << "] "
       << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
    if (!c.details.empty()) os << "  " << c.details.dump();
    os << "\n";
  }
  os << (report.all_pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
}

}  // namespace bshift
