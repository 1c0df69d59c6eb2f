#include "pluri/variational.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "pluri/rng.hpp"

namespace pluri {

double fd_step(double v) { return 1e-6 * std::max(1.0, std::fabs(v)); }

namespace {

struct TriangleLeg {
  int a, b, sign;
};
constexpr TriangleLeg kLegs[3] = {{0, 1, +1}, {0, 2, -1}, {1, 2, +1}};

// Accumulates d(action)/d(value at center) over the black triangles of a chain.
CornerResidual chain_derivative(const TwoForm& L, const CellChain& chain,
                                const LatticePoint& center, const FieldAssignment& field) {
  CornerResidual out;
  out.center = center;
  for (const auto& [cell, coeff] : chain.terms()) {
    if (cell.kind != CellKind::BlackTriangle) continue;
    for (const TriangleLeg& leg : kLegs) {
      int i = cell.dirs[static_cast<std::size_t>(leg.a)];
      int j = cell.dirs[static_cast<std::size_t>(leg.b)];
      LatticePoint p = cell.base.shifted(i, 1);
      LatticePoint q = cell.base.shifted(j, 1);
      if (p != center && q != center) continue;
      double u = field.at(p);
      double v = field.at(q);
      double d = (p == center) ? L.family->du(i, j, u, v, L.params)
                               : L.family->dv(i, j, u, v, L.params);
      double contribution = static_cast<double>(coeff) * leg.sign * d;
      out.value += contribution;
      out.legs.push_back(
          {OrientedCell(CellKind::Edge, cell.base, {i, j}, coeff * leg.sign > 0 ? +1 : -1),
           contribution});
    }
  }
  return out;
}

double central_difference(const std::function<double(double)>& f, double v0) {
  double h = fd_step(v0);
  return (f(v0 + h) - f(v0 - h)) / (2.0 * h);
}

}  // namespace

CornerResidual corner_residual(const TwoForm& L, const OrientedCell& cell3,
                               const LatticePoint& center, const FieldAssignment& field,
                               DerivativeMethod method) {
  if (dimension(cell3.kind) != 3 || cell3.kind == CellKind::Cube)
    throw InvalidCell("corner_residual expects a root-lattice 3-cell");
  if (!has_vertex(cell3, center))
    throw NotAVertex(to_string(center) + " is not a vertex of " + to_string(cell3));
  if (method == DerivativeMethod::Analytic) {
    CornerResidual out = chain_derivative(L, facets(cell3), center, field);
    out.cell3 = cell3;
    return out;
  }
  FieldAssignment probe = field;
  double v0 = field.at(center);
  CornerResidual out;
  out.cell3 = cell3;
  out.center = center;
  out.value = central_difference(
      [&](double v) {
        probe.set(center, v);
        return exterior_derivative(L, cell3, probe);
      },
      v0);
  return out;
}

int cube_insertion_parity(int dropped, const OrientedCell& cube) {
  Projection proj(dropped);
  int rank = 0;
  for (int d : cube.dirs)
    if (proj.unproject_direction(d) < dropped) ++rank;
  return rank % 2 == 0 ? +1 : -1;
}

namespace {

// All legs of the pushforward form over the six faces of a cube, as
// (z-point, z-point, q-dir pair, sign) tuples.
struct QuadLeg {
  LatticePoint p, q;  // cubic-lattice points; form slot u at p, v at q
  int i, j;           // root-lattice directions i < j
  int sign;
};

std::vector<QuadLeg> cube_face_legs(const PushforwardForm& Lz, const OrientedCell& cube) {
  Projection proj(Lz.dropped);
  std::vector<QuadLeg> out;
  for (const auto& [face, coeff] : facets(cube).terms()) {
    int j = proj.unproject_direction(face.dirs[0]);
    int k = proj.unproject_direction(face.dirs[1]);
    int i = Lz.dropped;
    LatticePoint x = face.base;
    LatticePoint xj = face.base.shifted(face.dirs[0], 1);
    LatticePoint xk = face.base.shifted(face.dirs[1], 1);
    int c = static_cast<int>(coeff);
    auto add = [&](int a, int b, const LatticePoint& pa, const LatticePoint& pb, int s) {
      if (a < b)
        out.push_back({pa, pb, a, b, s * c});
      else
        out.push_back({pb, pa, b, a, -s * c});
    };
    add(i, j, x, xj, +1);
    add(i, k, x, xk, -1);
    add(j, k, xj, xk, +1);
  }
  return out;
}

void check_cube_center(const OrientedCell& cube, const LatticePoint& center) {
  if (cube.kind != CellKind::Cube) throw InvalidCell("expected a cube");
  if (!has_vertex(cube, center))
    throw NotAVertex(to_string(center) + " is not a vertex of " + to_string(cube));
}

}  // namespace

CornerResidual cube_corner_residual_via_faces(const PushforwardForm& Lz, const OrientedCell& cube,
                                              const LatticePoint& center,
                                              const FieldAssignment& field) {
  check_cube_center(cube, center);
  int parity = cube_insertion_parity(Lz.dropped, cube);
  CornerResidual out;
  out.cell3 = cube;
  out.center = center;
  for (const QuadLeg& leg : cube_face_legs(Lz, cube)) {
    if (leg.p != center && leg.q != center) continue;
    double u = field.at(leg.p);
    double v = field.at(leg.q);
    double d = (leg.p == center) ? Lz.form.family->du(leg.i, leg.j, u, v, Lz.form.params)
                                 : Lz.form.family->dv(leg.i, leg.j, u, v, Lz.form.params);
    out.value += -parity * leg.sign * d;
  }
  return out;
}

CornerResidual cube_corner_residual(const PushforwardForm& Lz, const OrientedCell& cube,
                                    const LatticePoint& center, const FieldAssignment& field,
                                    DerivativeMethod method) {
  check_cube_center(cube, center);
  if (method == DerivativeMethod::FiniteDifference) {
    int parity = cube_insertion_parity(Lz.dropped, cube);
    FieldAssignment probe = field;
    double v0 = field.at(center);
    CornerResidual out;
    out.cell3 = cube;
    out.center = center;
    out.value = central_difference(
        [&](double v) {
          probe.set(center, v);
          return -parity * pushforward_action(Lz, facets(cube), probe);
        },
        v0);
    return out;
  }
  // bottom and top corners do not enter the source octahedron
  Projection proj(Lz.dropped);
  OrientedCell octa = cube_source_octahedron(Lz, cube);
  octa.sign = cube.sign;
  LatticePoint qcenter;
  bool found = false;
  for (const auto& v : vertices(octa)) {
    if (proj.project_point(v) == center) {
      qcenter = v;
      found = true;
      break;
    }
  }
  if (!found) {
    CornerResidual out;
    out.cell3 = cube;
    out.center = center;
    return out;
  }
  FieldAssignment pulled = pull_back_field(proj, field, vertices(octa));
  CornerResidual out = corner_residual(Lz.form, octa, qcenter, pulled);
  out.cell3 = cube;
  out.center = center;
  return out;
}

double flower_el_residual(const TwoForm& L, const CellChain& flower, const LatticePoint& center,
                          const FieldAssignment& field, DerivativeMethod method) {
  if (!flower.unit_coefficients())
    throw InvalidManifold("flower chain has a coefficient outside {-1,0,+1}");
  if (method == DerivativeMethod::Analytic)
    return chain_derivative(L, flower, center, field).value;
  FieldAssignment probe = field;
  double v0 = field.at(center);
  return central_difference(
      [&](double v) {
        probe.set(center, v);
        return action(L, flower, probe);
      },
      v0);
}

// ---------------------------------------------------------------------------

OctahedronSystem::OctahedronSystem(TwoForm form_in) : form(std::move(form_in)) {
  octahedron = canonicalize(CellKind::Octahedron, origin(4), {0, 1, 2, 3}, +1);
  variables = vertices(octahedron);
  std::sort(variables.begin(), variables.end());
}

FieldAssignment OctahedronSystem::to_field(const std::array<double, 6>& values) const {
  FieldAssignment field;
  for (std::size_t m = 0; m < 6; ++m) field.set(variables[m], values[m]);
  return field;
}

std::array<double, 6> OctahedronSystem::residuals(const std::array<double, 6>& values) const {
  FieldAssignment field = to_field(values);
  std::array<double, 6> out{};
  for (std::size_t m = 0; m < 6; ++m)
    out[m] = corner_residual(form, octahedron, variables[m], field).value;
  return out;
}

std::array<std::array<double, 6>, 6> OctahedronSystem::jacobian(
    const std::array<double, 6>& values) const {
  FieldAssignment field = to_field(values);
  std::array<std::array<double, 6>, 6> J{};
  auto index_of = [&](const LatticePoint& p) -> int {
    for (std::size_t m = 0; m < 6; ++m)
      if (variables[m] == p) return static_cast<int>(m);
    return -1;
  };
  for (const auto& [cell, coeff] : facets(octahedron).terms()) {
    if (cell.kind != CellKind::BlackTriangle) continue;
    for (const TriangleLeg& leg : kLegs) {
      int i = cell.dirs[static_cast<std::size_t>(leg.a)];
      int j = cell.dirs[static_cast<std::size_t>(leg.b)];
      LatticePoint p = cell.base.shifted(i, 1);
      LatticePoint q = cell.base.shifted(j, 1);
      int mp = index_of(p);
      int mq = index_of(q);
      if (mp < 0 || mq < 0) continue;
      double u = field.at(p);
      double v = field.at(q);
      double w = static_cast<double>(coeff) * leg.sign;
      const auto& fam = *form.family;
      J[static_cast<std::size_t>(mp)][static_cast<std::size_t>(mp)] +=
          w * fam.duu(i, j, u, v, form.params);
      J[static_cast<std::size_t>(mp)][static_cast<std::size_t>(mq)] +=
          w * fam.duv(i, j, u, v, form.params);
      J[static_cast<std::size_t>(mq)][static_cast<std::size_t>(mp)] +=
          w * fam.duv(i, j, u, v, form.params);
      J[static_cast<std::size_t>(mq)][static_cast<std::size_t>(mq)] +=
          w * fam.dvv(i, j, u, v, form.params);
    }
  }
  return J;
}

std::string to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::Pass: return "pass";
    case TrialStatus::Fail: return "fail";
    case TrialStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

int ConsistencyReport::count(TrialStatus s) const {
  int n = 0;
  for (const auto& t : trials)
    if (t.status == s) ++n;
  return n;
}

double ConsistencyReport::max_closedness() const {
  double m = 0.0;
  for (const auto& t : trials)
    if (t.closedness) m = std::max(m, std::fabs(*t.closedness));
  return m;
}

namespace {

double max_abs(const std::array<double, 6>& r) {
  double m = 0.0;
  for (double x : r) m = std::max(m, std::fabs(x));
  return m;
}

double norm2(const std::array<double, 6>& r) {
  double s = 0.0;
  for (double x : r) s += x * x;
  return std::sqrt(s);
}

struct GaussNewtonResult {
  bool converged = false;
  bool gauge_fixed = false;
  std::array<double, 6> solution{};
  double max_residual = 0.0;
  int iterations = 0;
};

// Iterates leaving this box are treated as divergence, not solutions;
// residuals of the scale-homogeneous families vanish spuriously at infinity.
constexpr double kIterateBound = 1e3;

// Damped Gauss-Newton on the six residuals. With `gauge_fixed`, steps are
// restricted to the orthogonal complement of span{(1,..,1), v}: the
// difference-only families are invariant under translation and homogeneous
// under dilation, so unrestricted least-squares steps drift to infinity
// along those two directions.
GaussNewtonResult gauss_newton(const OctahedronSystem& sys, std::array<double, 6> v,
                               const ConsistencyOptions& opt, bool gauge_fixed) {
  GaussNewtonResult out;
  out.gauge_fixed = gauge_fixed;
  std::array<double, 6> r = sys.residuals(v);
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    out.iterations = iter;
    if (max_abs(r) <= opt.residual_tol) {
      out.converged = true;
      break;
    }
    auto Ja = sys.jacobian(v);
    Eigen::MatrixXd J(6, 6);
    Eigen::VectorXd R(6);
    for (int m = 0; m < 6; ++m) {
      R(m) = r[static_cast<std::size_t>(m)];
      for (int w = 0; w < 6; ++w)
        J(m, w) = Ja[static_cast<std::size_t>(m)][static_cast<std::size_t>(w)];
    }
    Eigen::VectorXd delta;
    if (gauge_fixed) {
      // orthonormal basis of the complement of the gauge directions
      Eigen::MatrixXd gauge(6, 2);
      for (int w = 0; w < 6; ++w) {
        gauge(w, 0) = 1.0;
        gauge(w, 1) = v[static_cast<std::size_t>(w)];
      }
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauge);
      Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(6, 6);
      Eigen::MatrixXd B = Q.rightCols(4);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(J * B,
                                            Eigen::ComputeThinU | Eigen::ComputeThinV);
      svd.setThreshold(1e-8);
      delta = B * svd.solve(-R);
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
      svd.setThreshold(1e-8);
      delta = svd.solve(-R);
    }
    // keep steps at the scale of the iterate; tiny singular values otherwise
    // blow the minimum-norm solution up
    double step_norm = delta.norm();
    double cap = 4.0 * std::max(1.0, max_abs(v));
    if (step_norm > cap) delta *= cap / step_norm;
    // damping: halve the step until the residual norm decreases
    double t = 1.0;
    bool accepted = false;
    double base_norm = norm2(r);
    for (int halve = 0; halve < opt.max_step_halvings; ++halve, t *= 0.5) {
      std::array<double, 6> v2 = v;
      for (int w = 0; w < 6; ++w) v2[static_cast<std::size_t>(w)] += t * delta(w);
      std::array<double, 6> r2;
      try {
        r2 = sys.residuals(v2);
      } catch (const SingularEvaluation&) {
        continue;
      }
      if (norm2(r2) < base_norm) {
        v = v2;
        r = r2;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // stalled
    if (max_abs(v) > kIterateBound) break;  // diverging
  }
  if (max_abs(r) <= opt.residual_tol && max_abs(v) <= kIterateBound) out.converged = true;
  out.solution = v;
  out.max_residual = max_abs(r);
  return out;
}

GaussNewtonResult gauss_newton_with_fallback(const OctahedronSystem& sys,
                                             const std::array<double, 6>& start,
                                             const ConsistencyOptions& opt) {
  GaussNewtonResult gn = gauss_newton(sys, start, opt, false);
  if (gn.converged) return gn;
  return gauss_newton(sys, start, opt, true);
}

}  // namespace

ConsistencyReport octahedron_consistency_check(const OneFormFamily& family,
                                               const ConsistencyOptions& options) {
  ConsistencyReport report;
  report.family = family.name;
  report.options = options;
  for (int t = 0; t < options.trials; ++t) {
    ConsistencyTrial trial;
    trial.index = t;
    trial.derived_seed = derive_trial_seed(options.seed, static_cast<std::uint64_t>(t));
    Rng rng(trial.derived_seed);
    bool settled = false;
    for (int attempt = 0; attempt <= options.max_resamples && !settled; ++attempt) {
      trial.resamples = attempt;
      try {
        std::vector<double> alphas = sample_separated(rng, 4, 0.5, 2.0, 0.05);
        FormParameters params;
        for (int d = 0; d < 4; ++d) params.alpha[d] = alphas[static_cast<std::size_t>(d)];
        OctahedronSystem sys(TwoForm{&family, params});
        std::vector<double> start = sample_separated(rng, 6, -1.0, 1.0, 0.05);
        std::array<double, 6> v0;
        std::copy(start.begin(), start.end(), v0.begin());
        GaussNewtonResult gn = gauss_newton_with_fallback(sys, v0, options);
        trial.iterations = gn.iterations;
        trial.gauge_fixed = gn.gauge_fixed;
        trial.max_residual = gn.max_residual;
        if (!gn.converged) continue;  // resample
        auto Ja = sys.jacobian(gn.solution);
        Eigen::MatrixXd J(6, 6);
        for (int m = 0; m < 6; ++m)
          for (int w = 0; w < 6; ++w)
            J(m, w) = Ja[static_cast<std::size_t>(m)][static_cast<std::size_t>(w)];
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
        trial.singular_values.assign(svd.singularValues().data(),
                                     svd.singularValues().data() + 6);
        double sigma_max = trial.singular_values.front();
        trial.rank = 0;
        for (double s : trial.singular_values)
          if (s > options.rank_rel_threshold * sigma_max) ++trial.rank;
        trial.solution.assign(gn.solution.begin(), gn.solution.end());
        try {
          trial.closedness = closedness_value(sys.form, sys.octahedron,
                                              sys.to_field(gn.solution), options.residual_tol);
        } catch (const SingularEvaluation&) {
          trial.closedness.reset();
          trial.note = "closedness evaluation singular";
        }
        trial.status = trial.rank == 2 ? TrialStatus::Pass : TrialStatus::Fail;
        if (trial.status == TrialStatus::Fail)
          trial.note = "jacobian rank " + std::to_string(trial.rank);
        settled = true;
      } catch (const SingularEvaluation&) {
        continue;
      } catch (const std::runtime_error& e) {
        trial.note = e.what();
        continue;
      }
    }
    if (!settled) {
      trial.status = TrialStatus::Inconclusive;
      if (trial.note.empty()) trial.note = "no convergence within resample budget";
    }
    report.trials.push_back(std::move(trial));
  }
  return report;
}

std::optional<std::array<double, 6>> solve_octahedron_corners(const OctahedronSystem& sys,
                                                              std::uint64_t seed,
                                                              double residual_tol) {
  Rng rng(seed);
  ConsistencyOptions opt;
  opt.residual_tol = residual_tol;
  for (int attempt = 0; attempt < 10; ++attempt) {
    try {
      std::vector<double> start = sample_separated(rng, 6, -1.0, 1.0, 0.05);
      std::array<double, 6> v0;
      std::copy(start.begin(), start.end(), v0.begin());
      GaussNewtonResult gn = gauss_newton_with_fallback(sys, v0, opt);
      if (gn.converged) return gn.solution;
    } catch (const SingularEvaluation&) {
    }
  }
  return std::nullopt;
}

double closedness_value(const TwoForm& L, const OrientedCell& octahedron,
                        const FieldAssignment& solution_field, double residual_tol) {
  for (const auto& v : vertices(octahedron)) {
    double r = corner_residual(L, octahedron, v, solution_field).value;
    if (std::fabs(r) > residual_tol)
      throw PreconditionViolated("corner residual " + std::to_string(r) + " at " + to_string(v) +
                                 " exceeds the solution tolerance");
  }
  return exterior_derivative(L, octahedron, solution_field);
}

bool PushforwardReport::all_pass() const {
  for (const auto& t : trials)
    if (t.status != TrialStatus::Pass) return false;
  return true;
}

double PushforwardReport::max_deviation() const {
  double m = 0.0;
  for (const auto& t : trials) m = std::max(m, t.max_identity_deviation);
  return m;
}

PushforwardReport pushforward_identity_check(const OneFormFamily& family, int dropped, int trials,
                                             std::uint64_t seed) {
  PushforwardReport report;
  report.family = family.name;
  report.dropped = dropped;
  OrientedCell cube = canonicalize(CellKind::Cube, origin(3), {0, 1, 2}, +1);
  auto cube_vertices = vertices(cube);
  LatticePoint bottom = cube_vertices.front();
  LatticePoint top = cube_vertices.back();
  for (int t = 0; t < trials; ++t) {
    PushforwardTrial trial;
    trial.index = t;
    trial.derived_seed = derive_trial_seed(seed, static_cast<std::uint64_t>(t));
    Rng rng(trial.derived_seed);
    std::vector<double> alphas = sample_separated(rng, 4, 0.5, 2.0, 0.05);
    FormParameters params;
    for (int d = 0; d < 4; ++d) params.alpha[d] = alphas[static_cast<std::size_t>(d)];
    PushforwardForm Lz{TwoForm{&family, params}, dropped};
    std::vector<double> values = sample_separated(rng, 8, -1.0, 1.0, 0.05);
    FieldAssignment field;
    for (std::size_t m = 0; m < 8; ++m) field.set(cube_vertices[m], values[m]);
    for (const auto& center : cube_vertices) {
      double via_octa = cube_corner_residual(Lz, cube, center, field).value;
      double via_faces = cube_corner_residual_via_faces(Lz, cube, center, field).value;
      trial.max_identity_deviation =
          std::max(trial.max_identity_deviation, std::fabs(via_octa - via_faces));
      if (center == bottom || center == top) {
        trial.max_passive_residual = std::max(trial.max_passive_residual, std::fabs(via_faces));
        double fd =
            cube_corner_residual(Lz, cube, center, field, DerivativeMethod::FiniteDifference)
                .value;
        trial.max_passive_sensitivity = std::max(trial.max_passive_sensitivity, std::fabs(fd));
      }
    }
    bool ok = trial.max_identity_deviation <= report.identity_tol &&
              trial.max_passive_residual <= report.identity_tol &&
              trial.max_passive_sensitivity <= report.passive_tol;
    trial.status = ok ? TrialStatus::Pass : TrialStatus::Fail;
    report.trials.push_back(trial);
  }
  return report;
}

}  // namespace pluri
