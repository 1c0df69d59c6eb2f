#pragma once

#include "pluri/cells.hpp"

namespace pluri {

// Deletes one ambient coordinate. Bijective per fixed coordinate level; the
// deleted value is recovered from a declared level on unprojection.
struct Projection {
  int dropped;

  explicit Projection(int dropped_direction) : dropped(dropped_direction) {}

  LatticePoint project_point(const LatticePoint& p) const;

  // Inserts the coordinate so that the coordinate sum equals `level`.
  LatticePoint unproject_point(const LatticePoint& p, Coord level) const;

  // Inserts the coordinate with value 0; the lift used for cell bases.
  LatticePoint lift(const LatticePoint& p) const;

  int project_direction(int d) const;
  int unproject_direction(int d) const;
};

// The pair of root-lattice triangles whose projected vertex set is the quad.
// For sorted directions this is T_i|_ijk_| - |^ijk^|; a general i carries the
// parity of sorting (i,j,k).
CellChain quad_correspondence(const Projection&, const OrientedCell& quad);

// The three adjacent 3-cells whose projected vertex set is the cube:
// parity(i,j,k,l) * ( -T_i|_ijkl_| + [ijkl] - T_ibar|^ijkl^| ).
CellChain cube_correspondence(const Projection&, const OrientedCell& cube);

// Correspondences expressed with root-lattice direction labels and a
// root-lattice base. `i` is the projection direction.
CellChain quad_correspondence_q(int i, int j, int k, const LatticePoint& qan_base, int sign = +1);
CellChain cube_correspondence_q(int i, int j, int k, int l, const LatticePoint& qan_base,
                                int sign = +1);

}  // namespace pluri
