#pragma once

#include <functional>
#include <map>
#include <string>

#include "pluri/cells.hpp"
#include "pluri/field.hpp"
#include "pluri/projection.hpp"

namespace pluri {

// One real parameter per lattice direction.
struct FormParameters {
  std::map<int, double> alpha;

  double at(int dir) const {
    auto it = alpha.find(dir);
    if (it == alpha.end())
      throw ConfigError("no alpha assigned to direction " + std::to_string(dir));
    return it->second;
  }
};

// Edge functions Lambda^{ij} for directions i<j, as functions of the endpoint
// values (u at x_i, v at x_j), together with their partial derivatives.
// Second partials feed the Jacobians of corner-equation systems.
struct OneFormFamily {
  using Eval = std::function<double(int i, int j, double u, double v, const FormParameters&)>;

  std::string name;
  Eval value;
  Eval du, dv;
  Eval duu, duv, dvv;
};

// Lambda^{ij} = (alpha^i - alpha^j) log|x_i - x_j| on every direction pair.
const OneFormFamily& cross_ratio_log_family();

// Lambda^{0m} = -x_0 x_m for m in {1,2,3}; the log family on every other pair.
const OneFormFamily& mixed_q_a3_family();

// Lambda^{ij} = x_i x_j everywhere except one pair, which is scaled; a
// deliberately inconsistent control.
const OneFormFamily& bilinear_perturbed_family();

// Lookup by CLI name: "cross-ratio", "mixed", "bilinear-perturbed".
const OneFormFamily& family_by_name(const std::string& name);

// Triangle 2-form: vanishes on white triangles; on a black triangle it is the
// alternating sum of the three edge legs.
struct TwoForm {
  const OneFormFamily* family = nullptr;
  FormParameters params;
};

double eval_one_form(const TwoForm&, const OrientedCell& edge, const FieldAssignment&);
double eval_two_form(const TwoForm&, const OrientedCell& triangle, const FieldAssignment&);

// Sum of the 2-form over a chain of 2-cells.
double action(const TwoForm&, const CellChain& manifold, const FieldAssignment&);

// Same, also accumulating the sum of absolute leg values (the magnitude scale
// for cancellation tests).
struct ActionValue {
  double value = 0.0;
  double abs_scale = 0.0;
};
ActionValue action_with_scale(const TwoForm&, const CellChain& manifold, const FieldAssignment&);

// Action over the facet chain of a 3-cell. Identically zero on black and
// white tetrahedra; the twelve-leg octahedron value otherwise.
double exterior_derivative(const TwoForm&, const OrientedCell& cell3, const FieldAssignment&);

// Pushforward of a root-lattice 2-form to the cubic lattice along P_i.
struct PushforwardForm {
  TwoForm form;
  int dropped;
};

// Value on a quad: the source form on the black triangle whose projection is
// the quad's lower-left half (the white partner contributes zero).
double eval_pushforward(const PushforwardForm&, const OrientedCell& quad, const FieldAssignment&);

double pushforward_action(const PushforwardForm&, const CellChain& quads, const FieldAssignment&);

// Exterior derivative on a unit cube, evaluated through the source
// octahedron with projected field lookups. The literal action over the cube's
// facet chain has the opposite sign; see the forms tests.
double cube_exterior_derivative(const PushforwardForm&, const OrientedCell& cube,
                                const FieldAssignment&);

// Lifts a cube to its source octahedron (level-0 lift of the base).
OrientedCell cube_source_octahedron(const PushforwardForm&, const OrientedCell& cube);

// Materializes the pulled-back field on the given root-lattice points (each
// vertex reads the projected cubic-lattice point).
FieldAssignment pull_back_field(const Projection&, const FieldAssignment& zfield,
                                const std::vector<LatticePoint>& qan_points);

}  // namespace pluri
