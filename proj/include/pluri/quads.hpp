#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pluri/variational.hpp"

namespace pluri {

using Rational = mpq_class;

// The three built-in multi-affine quad-equations. Residuals in the argument
// order (x, x_a, x_b, x_ab) for a face with direction pair a < b.
enum class QuadEqKind {
  CrossRatioQ1,   //  ab*(x-xa)(xb-xab) - aa*(x-xb)(xa-xab)
  KdVH1,          //  (x-xab)(xa-xb) - (aa-ab)
  TrapezoidalH1,  //  (x-xb)(xa-xab) + ab
};

std::string to_string(QuadEqKind);

// One equation bound to a face's parameter pair.
struct QuadEquation {
  QuadEqKind kind;
  double alpha_a = 0.0;
  double alpha_b = 0.0;

  double residual(double x, double xa, double xb, double xab) const;
  // Unique root in the chosen slot (0:x, 1:xa, 2:xb, 3:xab) given the other
  // three; DegenerateCoefficient when the slot's linear coefficient vanishes.
  double solve(int slot, std::array<double, 4> args) const;

  Rational residual_exact(const Rational& x, const Rational& xa, const Rational& xb,
                          const Rational& xab, const Rational& aa, const Rational& ab) const;
  Rational solve_exact(int slot, std::array<Rational, 4> args, const Rational& aa,
                       const Rational& ab) const;
};

// Assignment of equations to cube faces; opposite faces carry the same
// equation for all built-ins, so a face is determined by its direction pair.
struct QuadSystem {
  enum class Kind { CrossRatioAll, KdVAll, MixedTrapezoidal };

  Kind kind;
  std::string name;
  std::array<double, 3> alpha{};  // per cubic direction; MixedTrapezoidal uses alpha[1], alpha[2]

  QuadEquation face(int a, int b) const;  // a < b in {0,1,2}
};

QuadSystem cross_ratio_all(double a0, double a1, double a2);
QuadSystem kdv_all(double a0, double a1, double a2);
QuadSystem mixed_trapezoidal(double a1, double a2);
QuadSystem system_by_name(const std::string& name, const std::array<double, 3>& alpha);

// Cube values indexed by corner bitmask: bit0 = first direction, bit1 =
// second, bit2 = third.
template <typename T>
using CubeValues = std::array<T, 8>;

// Interchanges x_k with x_jk and x_l with x_jl; involutive.
template <typename T>
CubeValues<T> flip_cube(CubeValues<T> values) {
  std::swap(values[0b010], values[0b011]);
  std::swap(values[0b100], values[0b101]);
  return values;
}

// ---------------------------------------------------------------------------
// Three-way propagation over one cube.

struct CubePropagation {
  CubeValues<double> values{};
  std::array<double, 3> top_candidates{};  // x_jkl from each of the three top faces
  double max_disagreement = 0.0;           // relative, over the candidates
};

CubePropagation propagate_cube(const QuadSystem&, const std::array<double, 4>& initial);

struct ExactCubePropagation {
  CubeValues<Rational> values{};
  std::array<Rational, 3> top_candidates{};
  bool identical = false;
  std::string canonical;  // x_jkl as a canonical fraction string
};

ExactCubePropagation propagate_cube_exact(const QuadSystem&, const std::array<Rational, 4>& initial);

struct QuadTrial {
  int index = 0;
  std::uint64_t derived_seed = 0;
  TrialStatus status = TrialStatus::Pass;
  double deviation = 0.0;
  std::string note;
};

struct QuadReport {
  std::string system;
  std::string check;
  double tolerance = 0.0;
  std::vector<QuadTrial> trials;
  bool all_pass() const;
  double max_deviation() const;
};

// Rank-4 consistency, checked as agreement of the three x_jkl routes.
QuadReport cube_consistency_check(const QuadSystem&, int trials, std::uint64_t seed,
                                  double tol = 1e-9);

// x_jkl stays fixed while x is varied; the operational tetrahedron property.
QuadReport tetrahedron_property_check(const QuadSystem&, int trials, std::uint64_t seed,
                                      int perturbations = 10, double tol = 1e-9);

// Flipped solutions satisfy the four side faces in permuted argument order,
// and both top-face solves reproduce the flipped x_jkl.
QuadReport flip_side_face_check(const QuadSystem&, int trials, std::uint64_t seed,
                                double tol = 1e-10);

// The pushforward form paired with a built-in system, with the declared
// parameter normalization applied.
PushforwardForm paired_form(const QuadSystem&);

// Each active cube corner residual of the paired form equals the declared
// difference of two three-leg expressions.
QuadReport three_leg_difference_check(const QuadSystem&, int trials, std::uint64_t seed,
                                      double tol = 1e-10);

// ---------------------------------------------------------------------------
// Quad solutions versus corner equations.

struct PatchReport {
  std::string system;
  double corner_tol = 1e-9;
  std::array<int, 3> extent{};
  std::vector<QuadTrial> trials;
  // the non-inclusion witness: a corner-system solution violating a quad
  std::optional<double> witness_quad_residual;
  std::vector<double> witness_field;
  bool all_pass() const;
  double max_deviation() const;
};

// Propagates a quad-system solution over a patch of unit cubes and evaluates
// every cube corner residual of the paired form. For the cross-ratio system a
// corner-solution witness with a large quad residual is also recorded.
PatchReport quad_solutions_satisfy_corners(const QuadSystem&, const std::array<int, 3>& extent,
                                           int trials, std::uint64_t seed, double tol = 1e-9);

// The two projections of the mixed form produce different cube corner
// functions; returns the largest pointwise difference seen.
double mixed_projection_contrast(int trials, std::uint64_t seed);

}  // namespace pluri
