#include "pluri/forms.hpp"

#include <cmath>

namespace pluri {

namespace {

constexpr double kCoincidenceTol = 1e-12;

void guard_log_args(double u, double v) {
  if (std::fabs(u - v) < kCoincidenceTol)
    throw SingularEvaluation("log edge function evaluated at coincident endpoint values");
}

double cr_value(int i, int j, double u, double v, const FormParameters& p) {
  guard_log_args(u, v);
  return (p.at(i) - p.at(j)) * std::log(std::fabs(u - v));
}
double cr_du(int i, int j, double u, double v, const FormParameters& p) {
  guard_log_args(u, v);
  return (p.at(i) - p.at(j)) / (u - v);
}
double cr_dv(int i, int j, double u, double v, const FormParameters& p) {
  return -cr_du(i, j, u, v, p);
}
double cr_duu(int i, int j, double u, double v, const FormParameters& p) {
  guard_log_args(u, v);
  double d = u - v;
  return -(p.at(i) - p.at(j)) / (d * d);
}
double cr_duv(int i, int j, double u, double v, const FormParameters& p) {
  return -cr_duu(i, j, u, v, p);
}

bool mixed_bilinear_pair(int i, int j) { return i == 0 && j >= 1 && j <= 3; }

}  // namespace

const OneFormFamily& cross_ratio_log_family() {
  static const OneFormFamily family{
      "cross-ratio", cr_value, cr_du, cr_dv, cr_duu, cr_duv, cr_duu,
  };
  return family;
}

const OneFormFamily& mixed_q_a3_family() {
  static const OneFormFamily family{
      "mixed",
      [](int i, int j, double u, double v, const FormParameters& p) {
        return mixed_bilinear_pair(i, j) ? -u * v : cr_value(i, j, u, v, p);
      },
      [](int i, int j, double u, double v, const FormParameters& p) {
        return mixed_bilinear_pair(i, j) ? -v : cr_du(i, j, u, v, p);
      },
      [](int i, int j, double u, double v, const FormParameters& p) {
        return mixed_bilinear_pair(i, j) ? -u : cr_dv(i, j, u, v, p);
      },
      [](int i, int j, double u, double v, const FormParameters& p) {
        return mixed_bilinear_pair(i, j) ? 0.0 : cr_duu(i, j, u, v, p);
      },
      [](int i, int j, double u, double v, const FormParameters& p) {
        return mixed_bilinear_pair(i, j) ? -1.0 : cr_duv(i, j, u, v, p);
      },
      [](int i, int j, double u, double v, const FormParameters& p) {
        return mixed_bilinear_pair(i, j) ? 0.0 : cr_duu(i, j, u, v, p);
      },
  };
  return family;
}

const OneFormFamily& bilinear_perturbed_family() {
  // the (2,3) pair is scaled, which breaks the corner-system rank
  constexpr double kFactor = 1.25;
  auto scale = [](int i, int j) { return (i == 2 && j == 3) ? kFactor : 1.0; };
  static const OneFormFamily family{
      "bilinear-perturbed",
      [scale](int i, int j, double u, double v, const FormParameters&) {
        return scale(i, j) * u * v;
      },
      [scale](int i, int j, double u, double v, const FormParameters&) {
        (void)u;
        return scale(i, j) * v;
      },
      [scale](int i, int j, double u, double v, const FormParameters&) {
        (void)v;
        return scale(i, j) * u;
      },
      [](int, int, double, double, const FormParameters&) { return 0.0; },
      [scale](int i, int j, double, double, const FormParameters&) { return scale(i, j); },
      [](int, int, double, double, const FormParameters&) { return 0.0; },
  };
  return family;
}

const OneFormFamily& family_by_name(const std::string& name) {
  if (name == "cross-ratio") return cross_ratio_log_family();
  if (name == "mixed") return mixed_q_a3_family();
  if (name == "bilinear-perturbed") return bilinear_perturbed_family();
  throw ConfigError("unknown one-form family: " + name);
}

double eval_one_form(const TwoForm& L, const OrientedCell& edge, const FieldAssignment& field) {
  if (edge.kind != CellKind::Edge) throw InvalidCell("eval_one_form expects an edge");
  double u = field.at(edge.base.shifted(edge.dirs[0], 1));
  double v = field.at(edge.base.shifted(edge.dirs[1], 1));
  return edge.sign * L.family->value(edge.dirs[0], edge.dirs[1], u, v, L.params);
}

namespace {

// The three legs of a black triangle |_ijk_|: [ij], -[ik], [jk].
struct Leg {
  int a, b;    // directions, a < b
  int sign;    // contribution sign within the triangle
};

constexpr Leg kTriangleLegs[3] = {{0, 1, +1}, {0, 2, -1}, {1, 2, +1}};

}  // namespace

double eval_two_form(const TwoForm& L, const OrientedCell& tri, const FieldAssignment& field) {
  if (tri.kind == CellKind::WhiteTriangle) return 0.0;
  if (tri.kind != CellKind::BlackTriangle)
    throw InvalidCell("eval_two_form expects a triangle, got " + to_string(tri.kind));
  double total = 0.0;
  for (const Leg& leg : kTriangleLegs) {
    int i = tri.dirs[static_cast<std::size_t>(leg.a)];
    int j = tri.dirs[static_cast<std::size_t>(leg.b)];
    double u = field.at(tri.base.shifted(i, 1));
    double v = field.at(tri.base.shifted(j, 1));
    total += leg.sign * L.family->value(i, j, u, v, L.params);
  }
  return tri.sign * total;
}

double action(const TwoForm& L, const CellChain& manifold, const FieldAssignment& field) {
  double total = 0.0;
  for (const auto& [cell, coeff] : manifold.terms())
    total += static_cast<double>(coeff) * eval_two_form(L, cell, field);
  return total;
}

ActionValue action_with_scale(const TwoForm& L, const CellChain& manifold,
                              const FieldAssignment& field) {
  ActionValue out;
  for (const auto& [cell, coeff] : manifold.terms()) {
    if (cell.kind == CellKind::WhiteTriangle) continue;
    if (cell.kind != CellKind::BlackTriangle)
      throw InvalidCell("action over non-triangle chain");
    for (const Leg& leg : kTriangleLegs) {
      int i = cell.dirs[static_cast<std::size_t>(leg.a)];
      int j = cell.dirs[static_cast<std::size_t>(leg.b)];
      double u = field.at(cell.base.shifted(i, 1));
      double v = field.at(cell.base.shifted(j, 1));
      double leg_value = L.family->value(i, j, u, v, L.params);
      out.value += static_cast<double>(coeff) * leg.sign * leg_value;
      out.abs_scale += std::fabs(leg_value);
    }
  }
  return out;
}

double exterior_derivative(const TwoForm& L, const OrientedCell& cell3,
                           const FieldAssignment& field) {
  if (dimension(cell3.kind) != 3 || cell3.kind == CellKind::Cube)
    throw InvalidCell("exterior_derivative expects a root-lattice 3-cell");
  return action(L, facets(cell3), field);
}

double eval_pushforward(const PushforwardForm& Lz, const OrientedCell& quad,
                        const FieldAssignment& field) {
  if (quad.kind != CellKind::Quad) throw InvalidCell("eval_pushforward expects a quad");
  Projection proj(Lz.dropped);
  int j = proj.unproject_direction(quad.dirs[0]);
  int k = proj.unproject_direction(quad.dirs[1]);
  int i = Lz.dropped;
  // legs of the source triangle T_i|_{ijk}_| read at projected points
  double x = field.at(quad.base);
  double xj = field.at(quad.base.shifted(quad.dirs[0], 1));
  double xk = field.at(quad.base.shifted(quad.dirs[1], 1));
  auto leg = [&](int a, int b, double va, double vb) {
    if (a < b) return Lz.form.family->value(a, b, va, vb, Lz.form.params);
    return -Lz.form.family->value(b, a, vb, va, Lz.form.params);
  };
  double total = leg(i, j, x, xj) - leg(i, k, x, xk) + leg(j, k, xj, xk);
  return quad.sign * total;
}

double pushforward_action(const PushforwardForm& Lz, const CellChain& quads,
                          const FieldAssignment& field) {
  double total = 0.0;
  for (const auto& [cell, coeff] : quads.terms())
    total += static_cast<double>(coeff) * eval_pushforward(Lz, cell, field);
  return total;
}

OrientedCell cube_source_octahedron(const PushforwardForm& Lz, const OrientedCell& cube) {
  if (cube.kind != CellKind::Cube) throw InvalidCell("expected a cube");
  Projection proj(Lz.dropped);
  std::vector<int> dirs{Lz.dropped, proj.unproject_direction(cube.dirs[0]),
                        proj.unproject_direction(cube.dirs[1]),
                        proj.unproject_direction(cube.dirs[2])};
  return canonicalize(CellKind::Octahedron, proj.lift(cube.base), dirs, cube.sign);
}

FieldAssignment pull_back_field(const Projection& proj, const FieldAssignment& zfield,
                                const std::vector<LatticePoint>& qan_points) {
  FieldAssignment out;
  for (const auto& p : qan_points) out.set(p, zfield.at(proj.project_point(p)));
  return out;
}

double cube_exterior_derivative(const PushforwardForm& Lz, const OrientedCell& cube,
                                const FieldAssignment& field) {
  OrientedCell octa = cube_source_octahedron(Lz, cube);
  octa.sign = +1;
  Projection proj(Lz.dropped);
  FieldAssignment pulled = pull_back_field(proj, field, vertices(octa));
  return cube.sign * exterior_derivative(Lz.form, octa, pulled);
}

}  // namespace pluri
