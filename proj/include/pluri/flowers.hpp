#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pluri/variational.hpp"

namespace pluri {

// Chain of triangles forming an oriented 2-manifold: coefficients in {-1,+1},
// at most two triangles per edge, shared edges with opposite orientations.
struct TwoManifold {
  CellChain chain;
  std::size_t ambient_dim = 0;
};

struct ManifoldViolation {
  enum class Type { CoefficientRange, EdgeOveruse, OrientationClash, NotTriangle };
  Type type;
  std::string detail;
};

std::vector<ManifoldViolation> validate(const TwoManifold&);

// 2-manifold with exactly one interior vertex.
struct Flower {
  TwoManifold manifold;
  LatticePoint center;
};

// Sub-chain of all triangles containing `vertex`, validated as a flower.
// Throws NotInterior when an incident edge lies in only one triangle.
Flower flower_at(const TwoManifold&, const LatticePoint& vertex);

// One 3D corner of the decomposition: the facets of `cell3` adjacent to the
// flower's center.
struct DecompositionCorner {
  OrientedCell cell3;
  LatticePoint center;
};

// The three-step construction in two auxiliary directions M = N+1, L = N+2:
// black triangles lift to black tetrahedra, white triangles to octahedra, and
// the leftover white triangles through M close up via white tetrahedra.
// Returned cells live in the ambient extended by two directions.
std::vector<DecompositionCorner> decompose(const Flower&);

// Exact chain equality of the corner sum against the (lifted) flower chain.
bool verify_decomposition(const Flower&, const std::vector<DecompositionCorner>&);

// Lifts a chain into a larger ambient by zero-padding the bases.
CellChain lift_chain(const CellChain&, std::size_t new_ambient);
LatticePoint lift_point(const LatticePoint&, std::size_t new_ambient);

// ---------------------------------------------------------------------------

struct ElSumExtension {
  std::uint64_t extension_seed = 0;
  double flower_residual = 0.0;
  double corner_sum = 0.0;
  double deviation = 0.0;
};

struct ElSumReport {
  std::string family;
  double tolerance = 1e-9;
  std::vector<ElSumExtension> extensions;
  double cross_extension_spread = 0.0;
  bool pass = false;
};

// Extends the field to the auxiliary vertices of the decomposition for three
// independent seeds and compares the flower residual with the corner-residual
// sum each time. Fresh alphas are assigned to the auxiliary directions.
ElSumReport el_sum_check(const OneFormFamily&, const FormParameters&, const Flower&,
                         const FieldAssignment&, std::uint64_t seed, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Built-in corpus.

// The six-triangle flower around an interior vertex of a planar sub-lattice
// spanned by three directions.
Flower planar_six_flower(std::size_t ambient_dim, int i, int j, int k);

// 3D corners of every 3-cell sort, as flowers.
std::vector<Flower> corner_flowers(std::size_t ambient_dim);

// Cyclic fan of 8..12 triangles grown around a center with legal adjacencies;
// deterministic for a given seed.
Flower random_flower(std::size_t ambient_dim, std::uint64_t seed);

std::string flower_to_json(const Flower&);
Flower flower_from_json(const std::string& text);
Flower flower_from_file(const std::string& path);

}  // namespace pluri
