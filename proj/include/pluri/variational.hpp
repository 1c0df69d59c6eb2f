#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pluri/forms.hpp"

namespace pluri {

enum class DerivativeMethod { Analytic, FiniteDifference };

// Central-difference step for derivatives in the field value `v`.
double fd_step(double v);

struct CornerLeg {
  OrientedCell edge;
  double contribution;
};

// Derivative of a 3-cell action in the field value at one vertex, with the
// per-edge contributions kept for diagnostics. Octahedron corners have the
// four-leg structure: exactly the edges from the center to its four
// non-antipodal vertices contribute.
struct CornerResidual {
  OrientedCell cell3;
  LatticePoint center;
  double value = 0.0;
  std::vector<CornerLeg> legs;
};

CornerResidual corner_residual(const TwoForm&, const OrientedCell& cell3,
                               const LatticePoint& center, const FieldAssignment&,
                               DerivativeMethod method = DerivativeMethod::Analytic);

// Parity of inserting the dropped direction into the cube's direction set;
// relates the facet-chain action to the pulled-back octahedron derivative.
int cube_insertion_parity(int dropped, const OrientedCell& cube);

// Derivative of the cube 3-form in the field value at `center`. Centers at
// the cube's bottom and top corners carry no corner equation and return zero.
CornerResidual cube_corner_residual(const PushforwardForm&, const OrientedCell& cube,
                                    const LatticePoint& center, const FieldAssignment&,
                                    DerivativeMethod method = DerivativeMethod::Analytic);

// Same value computed through the six quad faces instead of the source
// octahedron; the independent route used by the identity checks.
CornerResidual cube_corner_residual_via_faces(const PushforwardForm&, const OrientedCell& cube,
                                              const LatticePoint& center,
                                              const FieldAssignment&);

// Derivative of the action over a 2-manifold chain in the value at `center`.
// The chain is expected to be a validated flower when used as an
// Euler-Lagrange residual.
double flower_el_residual(const TwoForm&, const CellChain& flower, const LatticePoint& center,
                          const FieldAssignment&,
                          DerivativeMethod method = DerivativeMethod::Analytic);

// ---------------------------------------------------------------------------
// Octahedron corner-equation system: the six residuals as functions of the
// six vertex values, their Jacobian, and the rank-2 consistency check.

struct OctahedronSystem {
  TwoForm form;
  OrientedCell octahedron;              // positively oriented
  std::vector<LatticePoint> variables;  // the six vertices, sorted

  explicit OctahedronSystem(TwoForm form_in);

  std::array<double, 6> residuals(const std::array<double, 6>& values) const;
  // J(m, w) = d residual_m / d value_w, from the analytic second partials.
  std::array<std::array<double, 6>, 6> jacobian(const std::array<double, 6>& values) const;

  FieldAssignment to_field(const std::array<double, 6>& values) const;
};

struct ConsistencyOptions {
  int trials = 100;
  std::uint64_t seed = 0;
  double residual_tol = 1e-10;
  double rank_rel_threshold = 1e-8;
  double closedness_tol = 1e-9;
  int max_iterations = 200;
  int max_step_halvings = 30;
  int max_resamples = 10;
};

enum class TrialStatus { Pass, Fail, Inconclusive };

std::string to_string(TrialStatus);

struct ConsistencyTrial {
  int index = 0;
  std::uint64_t derived_seed = 0;
  TrialStatus status = TrialStatus::Inconclusive;
  std::string note;
  double max_residual = 0.0;
  int iterations = 0;
  int resamples = 0;
  bool gauge_fixed = false;  // solved with the translation/dilation gauge pinned
  int rank = -1;
  std::vector<double> singular_values;
  std::optional<double> closedness;
  std::vector<double> solution;
};

struct ConsistencyReport {
  std::string family;
  ConsistencyOptions options;
  std::vector<ConsistencyTrial> trials;

  int count(TrialStatus s) const;
  bool all_pass() const { return count(TrialStatus::Pass) == static_cast<int>(trials.size()); }
  double max_closedness() const;
};

// Gauss-Newton descent on the six corner residuals from random nonsingular
// starts; PASS means convergence to max|residual| <= residual_tol with
// exactly two singular values above rank_rel_threshold * sigma_max.
ConsistencyReport octahedron_consistency_check(const OneFormFamily& family,
                                               const ConsistencyOptions& options);

// Exterior derivative at a solution of the corner system; throws
// PreconditionViolated when the residuals exceed the tolerance.
double closedness_value(const TwoForm&, const OrientedCell& octahedron,
                        const FieldAssignment& solution_field, double residual_tol = 1e-10);

// One Gauss-Newton solve of the six corner residuals from a random
// nonsingular start; nullopt when it does not converge.
std::optional<std::array<double, 6>> solve_octahedron_corners(const OctahedronSystem&,
                                                              std::uint64_t seed,
                                                              double residual_tol = 1e-10);

// ---------------------------------------------------------------------------
// Pushforward identity: cube corner residuals computed through the quad faces
// agree with the pulled-back octahedron residuals, and the bottom/top corners
// are insensitive.

struct PushforwardTrial {
  int index = 0;
  std::uint64_t derived_seed = 0;
  TrialStatus status = TrialStatus::Pass;
  double max_identity_deviation = 0.0;
  double max_passive_residual = 0.0;
  double max_passive_sensitivity = 0.0;
};

struct PushforwardReport {
  std::string family;
  int dropped = 0;
  double identity_tol = 1e-12;
  double passive_tol = 1e-9;
  std::vector<PushforwardTrial> trials;
  bool all_pass() const;
  double max_deviation() const;
};

PushforwardReport pushforward_identity_check(const OneFormFamily& family, int dropped, int trials,
                                             std::uint64_t seed);

}  // namespace pluri
