#include "pluri/projection.hpp"

#include <algorithm>
#include <numeric>

namespace pluri {

namespace {

void check_range(const Projection& p, std::size_t ambient_out) {
  if (p.dropped < 0 || static_cast<std::size_t>(p.dropped) > ambient_out)
    throw InvalidDirection("projection direction " + std::to_string(p.dropped) +
                           " out of range");
}

void check_distinct(std::initializer_list<int> dirs) {
  std::vector<int> v(dirs);
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw InvalidDirection("projection direction collides with a cell direction");
}

}  // namespace

LatticePoint Projection::project_point(const LatticePoint& p) const {
  if (dropped < 0 || static_cast<std::size_t>(dropped) >= p.ambient())
    throw InvalidDirection("projection direction " + std::to_string(dropped) +
                           " outside ambient of size " + std::to_string(p.ambient()));
  LatticePoint out;
  out.coords.reserve(p.ambient() - 1);
  for (std::size_t c = 0; c < p.ambient(); ++c)
    if (c != static_cast<std::size_t>(dropped)) out.coords.push_back(p.coords[c]);
  return out;
}

LatticePoint Projection::unproject_point(const LatticePoint& p, Coord level) const {
  check_range(*this, p.ambient());
  Coord sum = std::accumulate(p.coords.begin(), p.coords.end(), Coord{0});
  LatticePoint out = p;
  out.coords.insert(out.coords.begin() + dropped, level - sum);
  return out;
}

LatticePoint Projection::lift(const LatticePoint& p) const {
  check_range(*this, p.ambient());
  LatticePoint out = p;
  out.coords.insert(out.coords.begin() + dropped, 0);
  return out;
}

int Projection::project_direction(int d) const {
  if (d == dropped) throw InvalidDirection("cannot project the dropped direction");
  return d < dropped ? d : d - 1;
}

int Projection::unproject_direction(int d) const {
  return d < dropped ? d : d + 1;
}

CellChain quad_correspondence_q(int i, int j, int k, const LatticePoint& qan_base, int sign) {
  check_distinct({i, j, k});
  // canonicalize carries the parity of sorting (i,j,k) into the cell sign
  CellChain out;
  out.add(canonicalize(CellKind::BlackTriangle, qan_base.shifted(i, 1), {i, j, k}, sign), +1);
  out.add(canonicalize(CellKind::WhiteTriangle, qan_base, {i, j, k}, sign), -1);
  return out;
}

CellChain cube_correspondence_q(int i, int j, int k, int l, const LatticePoint& qan_base,
                                int sign) {
  check_distinct({i, j, k, l});
  CellChain out;
  out.add(canonicalize(CellKind::BlackTetrahedron, qan_base.shifted(i, 1), {i, j, k, l}, sign),
          -1);
  out.add(canonicalize(CellKind::Octahedron, qan_base, {i, j, k, l}, sign), +1);
  out.add(canonicalize(CellKind::WhiteTetrahedron, qan_base.shifted(i, -1), {i, j, k, l}, sign),
          -1);
  return out;
}

CellChain quad_correspondence(const Projection& proj, const OrientedCell& quad) {
  if (quad.kind != CellKind::Quad) throw InvalidCell("quad_correspondence expects a quad");
  int j = proj.unproject_direction(quad.dirs[0]);
  int k = proj.unproject_direction(quad.dirs[1]);
  return quad_correspondence_q(proj.dropped, j, k, proj.lift(quad.base), quad.sign);
}

CellChain cube_correspondence(const Projection& proj, const OrientedCell& cube) {
  if (cube.kind != CellKind::Cube) throw InvalidCell("cube_correspondence expects a cube");
  int j = proj.unproject_direction(cube.dirs[0]);
  int k = proj.unproject_direction(cube.dirs[1]);
  int l = proj.unproject_direction(cube.dirs[2]);
  return cube_correspondence_q(proj.dropped, j, k, l, proj.lift(cube.base), cube.sign);
}

}  // namespace pluri
