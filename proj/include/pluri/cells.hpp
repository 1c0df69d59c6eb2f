#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pluri/errors.hpp"

namespace pluri {

using Coord = int;

// A field site, addressed by ambient integer coordinates. For the root
// lattice the ambient is Z^{N+1}; shifted vertices live on neighboring
// levels, so the zero-sum constraint is not enforced here.
struct LatticePoint {
  std::vector<Coord> coords;

  LatticePoint() = default;
  explicit LatticePoint(std::vector<Coord> c) : coords(std::move(c)) {}

  std::size_t ambient() const { return coords.size(); }

  LatticePoint shifted(int direction, Coord steps) const;

  auto operator<=>(const LatticePoint&) const = default;
};

LatticePoint origin(std::size_t ambient);
std::string to_string(const LatticePoint&);

// Cell sorts of the root lattice plus the cubic-lattice sorts used by the
// projection layer. Vertex and ZEdge exist so that boundaries of boundaries
// can be taken on both sides.
enum class CellKind : std::uint8_t {
  Vertex,
  Edge,              // [ij]        {x_i, x_j}
  BlackTriangle,     // |_ijk_|     {x_i, x_j, x_k}
  WhiteTriangle,     // |^ijk^|     {x_ij, x_ik, x_jk}
  BlackTetrahedron,  // |_ijkl_|    {x_i, x_j, x_k, x_l}
  WhiteTetrahedron,  // |^ijkl^|    {x_ijk, ..., x_jkl}
  Octahedron,        // [ijkl]      {x_ij, ..., x_kl}
  ZEdge,             // {j}         {x, x_j}
  Quad,              // {jk}        {x, x_j, x_k, x_jk}
  Cube,              // {jkl}       eight corners
};

int dimension(CellKind kind);
std::size_t dir_count(CellKind kind);
std::string to_string(CellKind kind);

// Canonical form: dirs strictly increasing, orientation carried by sign.
struct OrientedCell {
  CellKind kind = CellKind::Vertex;
  LatticePoint base;
  std::vector<int> dirs;  // strictly increasing
  int sign = +1;

  OrientedCell() = default;
  OrientedCell(CellKind k, LatticePoint b, std::vector<int> d, int s = +1);

  OrientedCell negated() const;
  OrientedCell shifted(int direction, Coord steps) const;

  auto operator<=>(const OrientedCell&) const = default;
};

// Sorts dirs, multiplying sign by the parity of the sorting permutation.
// Throws InvalidCell on duplicate or out-of-range directions, or a dir count
// that does not match the kind.
OrientedCell canonicalize(CellKind kind, LatticePoint base, std::vector<int> dirs, int sign);

std::vector<LatticePoint> vertices(const OrientedCell&);
bool has_vertex(const OrientedCell&, const LatticePoint&);
std::string to_string(const OrientedCell&);

// Formal integer combination of canonical cells with exact cancellation.
class CellChain {
 public:
  using Key = std::tuple<CellKind, std::vector<int>, LatticePoint>;
  using Terms = std::map<Key, long long>;

  CellChain() = default;
  static CellChain single(const OrientedCell& cell, long long coeff = 1);

  void add(const OrientedCell& cell, long long coeff = 1);

  CellChain& operator+=(const CellChain& other);
  CellChain& operator-=(const CellChain& other);
  CellChain operator-() const;
  friend CellChain operator+(CellChain a, const CellChain& b) { return a += b; }
  friend CellChain operator-(CellChain a, const CellChain& b) { return a -= b; }

  bool operator==(const CellChain&) const = default;

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  long long coefficient(const OrientedCell& cell) const;

  // Deterministic iteration as (positively oriented cell, coefficient).
  std::vector<std::pair<OrientedCell, long long>> terms() const;

  // All coefficients within [-1,+1].
  bool unit_coefficients() const;

  // Sub-chain of terms whose cells contain the given vertex.
  CellChain restricted_to_vertex(const LatticePoint&) const;

  std::vector<LatticePoint> vertex_set() const;

 private:
  Terms terms_;
};

std::string to_string(const CellChain&);

// Signed facet chain; the facet omitting the p-th index carries the
// alternating sign that starts with "+" on the last index.
CellChain facets(const OrientedCell&);
CellChain facets(const CellChain&);

// The terms of facets(cell3) whose vertex sets contain `center`.
CellChain corner_at(const OrientedCell& cell3, const LatticePoint& center);

// Same-dimension cells sharing a facet with opposite orientations.
bool is_adjacent(const OrientedCell& a, const OrientedCell& b);

}  // namespace pluri
