#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pluri/cells.hpp"
#include "pluri/rng.hpp"

using namespace pluri;

namespace {

LatticePoint pt(std::vector<Coord> c) { return LatticePoint(std::move(c)); }

OrientedCell cell(CellKind kind, const LatticePoint& base, std::vector<int> dirs, int sign = +1) {
  return canonicalize(kind, base, std::move(dirs), sign);
}

// Hard-coded facet tables for dirs (i,j,k[,l]) = (0,1,2[,3]) at a generic
// base; shifts and signs spelled out term by term.
CellChain expected_octahedron_facets(const LatticePoint& n) {
  CellChain out;
  out.add(cell(CellKind::BlackTriangle, n.shifted(3, 1), {0, 1, 2}), +1);
  out.add(cell(CellKind::BlackTriangle, n.shifted(2, 1), {0, 1, 3}), -1);
  out.add(cell(CellKind::BlackTriangle, n.shifted(1, 1), {0, 2, 3}), +1);
  out.add(cell(CellKind::BlackTriangle, n.shifted(0, 1), {1, 2, 3}), -1);
  out.add(cell(CellKind::WhiteTriangle, n, {0, 1, 2}), +1);
  out.add(cell(CellKind::WhiteTriangle, n, {0, 1, 3}), -1);
  out.add(cell(CellKind::WhiteTriangle, n, {0, 2, 3}), +1);
  out.add(cell(CellKind::WhiteTriangle, n, {1, 2, 3}), -1);
  return out;
}

}  // namespace

TEST_CASE("points shift one coordinate at a time") {
  LatticePoint n = pt({1, -2, 0, 3});
  CHECK(n.shifted(2, 1) == pt({1, -2, 1, 3}));
  CHECK(n.shifted(0, -1) == pt({0, -2, 0, 3}));
  CHECK(n.shifted(2, 1).shifted(2, -1) == n);
  CHECK_THROWS_AS(n.shifted(4, 1), InvalidDirection);
}

TEST_CASE("canonicalize sorts directions with a sign per transposition") {
  LatticePoint n = origin(4);
  // (j,i,k) with i<j<k is one transposition away from sorted
  OrientedCell swapped = canonicalize(CellKind::BlackTriangle, n, {1, 0, 2}, +1);
  CHECK(swapped.dirs == std::vector<int>{0, 1, 2});
  CHECK(swapped.sign == -1);

  OrientedCell sorted = canonicalize(CellKind::BlackTriangle, n, {0, 1, 2}, +1);
  CHECK(sorted.sign == +1);

  // cube (k,j,l) with j<k<l
  OrientedCell cube = canonicalize(CellKind::Cube, origin(3), {1, 0, 2}, +1);
  CHECK(cube.dirs == std::vector<int>{0, 1, 2});
  CHECK(cube.sign == -1);

  CHECK_THROWS_AS(canonicalize(CellKind::BlackTriangle, n, {0, 0, 2}, +1), InvalidCell);
  CHECK_THROWS_AS(canonicalize(CellKind::BlackTriangle, n, {0, 1, 7}, +1), InvalidCell);
  CHECK_THROWS_AS(canonicalize(CellKind::BlackTriangle, n, {0, 1}, +1), InvalidCell);
}

TEST_CASE("vertex sets of each sort") {
  LatticePoint n = origin(4);
  auto single = [&](int d) { return n.shifted(d, 1); };
  auto pair = [&](int a, int b) { return n.shifted(a, 1).shifted(b, 1); };

  CHECK(vertices(cell(CellKind::Edge, n, {0, 2})) ==
        std::vector<LatticePoint>{single(0), single(2)});
  CHECK(vertices(cell(CellKind::BlackTriangle, n, {0, 1, 3})) ==
        std::vector<LatticePoint>{single(0), single(1), single(3)});
  CHECK(vertices(cell(CellKind::WhiteTriangle, n, {0, 1, 3})) ==
        std::vector<LatticePoint>{pair(0, 1), pair(0, 3), pair(1, 3)});
  CHECK(vertices(cell(CellKind::Octahedron, n, {0, 1, 2, 3})) ==
        std::vector<LatticePoint>{pair(0, 1), pair(0, 2), pair(0, 3), pair(1, 2), pair(1, 3),
                                  pair(2, 3)});
  auto triple = [&](int a, int b, int c) {
    return n.shifted(a, 1).shifted(b, 1).shifted(c, 1);
  };
  CHECK(vertices(cell(CellKind::WhiteTetrahedron, n, {0, 1, 2, 3})) ==
        std::vector<LatticePoint>{triple(0, 1, 2), triple(0, 1, 3), triple(0, 2, 3),
                                  triple(1, 2, 3)});
}

TEST_CASE("black triangle facets are the three edges with alternating signs") {
  LatticePoint n = pt({0, 0, 0, 0, 0});
  CellChain expected;
  expected.add(cell(CellKind::Edge, n, {0, 1}), +1);
  expected.add(cell(CellKind::Edge, n, {0, 2}), -1);
  expected.add(cell(CellKind::Edge, n, {1, 2}), +1);
  CHECK(facets(cell(CellKind::BlackTriangle, n, {0, 1, 2})) == expected);
}

TEST_CASE("white triangle facets are shifted edges") {
  LatticePoint n = origin(4);
  CellChain expected;
  expected.add(cell(CellKind::Edge, n.shifted(2, 1), {0, 1}), +1);
  expected.add(cell(CellKind::Edge, n.shifted(1, 1), {0, 2}), -1);
  expected.add(cell(CellKind::Edge, n.shifted(0, 1), {1, 2}), +1);
  CHECK(facets(cell(CellKind::WhiteTriangle, n, {0, 1, 2})) == expected);
}

TEST_CASE("black tetrahedron facets") {
  LatticePoint n = origin(4);
  CellChain expected;
  expected.add(cell(CellKind::BlackTriangle, n, {0, 1, 2}), +1);
  expected.add(cell(CellKind::BlackTriangle, n, {0, 1, 3}), -1);
  expected.add(cell(CellKind::BlackTriangle, n, {0, 2, 3}), +1);
  expected.add(cell(CellKind::BlackTriangle, n, {1, 2, 3}), -1);
  CHECK(facets(cell(CellKind::BlackTetrahedron, n, {0, 1, 2, 3})) == expected);
}

TEST_CASE("octahedron facets: shifted black triangles plus white triangles") {
  LatticePoint n = pt({2, -1, 0, 1});
  CHECK(facets(cell(CellKind::Octahedron, n, {0, 1, 2, 3})) == expected_octahedron_facets(n));
}

TEST_CASE("white tetrahedron facets are shifted white triangles") {
  LatticePoint n = origin(4);
  CellChain expected;
  expected.add(cell(CellKind::WhiteTriangle, n.shifted(3, 1), {0, 1, 2}), +1);
  expected.add(cell(CellKind::WhiteTriangle, n.shifted(2, 1), {0, 1, 3}), -1);
  expected.add(cell(CellKind::WhiteTriangle, n.shifted(1, 1), {0, 2, 3}), +1);
  expected.add(cell(CellKind::WhiteTriangle, n.shifted(0, 1), {1, 2, 3}), -1);
  CHECK(facets(cell(CellKind::WhiteTetrahedron, n, {0, 1, 2, 3})) == expected);
}

TEST_CASE("facets are linear in orientation") {
  LatticePoint n = origin(5);
  for (CellKind kind : {CellKind::BlackTriangle, CellKind::WhiteTriangle,
                        CellKind::BlackTetrahedron, CellKind::WhiteTetrahedron,
                        CellKind::Octahedron}) {
    std::vector<int> dirs(dir_count(kind));
    for (std::size_t d = 0; d < dirs.size(); ++d) dirs[d] = static_cast<int>(d) + 1;
    OrientedCell c = cell(kind, n, dirs);
    CHECK(facets(c.negated()) == -facets(c));
  }
}

TEST_CASE("boundary of a boundary vanishes for every 3-cell sort") {
  LatticePoint n = pt({1, 0, -1, 2, 0});
  for (CellKind kind :
       {CellKind::BlackTetrahedron, CellKind::WhiteTetrahedron, CellKind::Octahedron}) {
    OrientedCell c = cell(kind, n, {0, 2, 3, 4});
    CHECK(facets(facets(c)).empty());
  }
  // and one dimension further down
  CHECK(facets(facets(cell(CellKind::BlackTriangle, n, {0, 1, 4}))).empty());
  CHECK(facets(facets(cell(CellKind::WhiteTriangle, n, {0, 1, 4}))).empty());
}

TEST_CASE("octahedron corner keeps the four facets at the center") {
  LatticePoint n = origin(4);
  OrientedCell octa = cell(CellKind::Octahedron, n, {0, 1, 2, 3});
  LatticePoint x01 = n.shifted(0, 1).shifted(1, 1);
  CellChain expected;
  expected.add(cell(CellKind::BlackTriangle, n.shifted(1, 1), {0, 2, 3}), +1);
  expected.add(cell(CellKind::BlackTriangle, n.shifted(0, 1), {1, 2, 3}), -1);
  expected.add(cell(CellKind::WhiteTriangle, n, {0, 1, 2}), +1);
  expected.add(cell(CellKind::WhiteTriangle, n, {0, 1, 3}), -1);
  CHECK(corner_at(octa, x01) == expected);
}

TEST_CASE("black tetrahedron corner keeps three black triangles") {
  LatticePoint n = origin(4);
  OrientedCell tet = cell(CellKind::BlackTetrahedron, n, {0, 1, 2, 3});
  CellChain expected;
  expected.add(cell(CellKind::BlackTriangle, n, {0, 1, 2}), +1);
  expected.add(cell(CellKind::BlackTriangle, n, {0, 1, 3}), -1);
  expected.add(cell(CellKind::BlackTriangle, n, {0, 2, 3}), +1);
  CHECK(corner_at(tet, n.shifted(0, 1)) == expected);
  CHECK(corner_at(tet.negated(), n.shifted(0, 1)) == -expected);
}

TEST_CASE("white tetrahedron corner keeps three shifted white triangles") {
  LatticePoint n = origin(4);
  OrientedCell tet = cell(CellKind::WhiteTetrahedron, n, {0, 1, 2, 3});
  LatticePoint x012 = n.shifted(0, 1).shifted(1, 1).shifted(2, 1);
  CellChain expected;
  expected.add(cell(CellKind::WhiteTriangle, n.shifted(2, 1), {0, 1, 3}), -1);
  expected.add(cell(CellKind::WhiteTriangle, n.shifted(1, 1), {0, 2, 3}), +1);
  expected.add(cell(CellKind::WhiteTriangle, n.shifted(0, 1), {1, 2, 3}), -1);
  CHECK(corner_at(tet, x012) == expected);
}

TEST_CASE("corner_at equals the facet chain restricted to the vertex, everywhere") {
  LatticePoint n = origin(4);
  for (CellKind kind :
       {CellKind::BlackTetrahedron, CellKind::WhiteTetrahedron, CellKind::Octahedron}) {
    OrientedCell c = cell(kind, n, {0, 1, 2, 3});
    for (const auto& v : vertices(c))
      CHECK(corner_at(c, v) == facets(c).restricted_to_vertex(v));
  }
  OrientedCell octa = cell(CellKind::Octahedron, n, {0, 1, 2, 3});
  CHECK_THROWS_AS(corner_at(octa, n), NotAVertex);
}

TEST_CASE("shift relocates the base only") {
  LatticePoint n = origin(4);
  OrientedCell tri = cell(CellKind::BlackTriangle, n, {0, 1, 2});
  OrientedCell moved = tri.shifted(3, 1);
  CHECK(moved.base == n.shifted(3, 1));
  CHECK(moved.dirs == tri.dirs);
  CHECK(moved.sign == tri.sign);
  CHECK(moved.shifted(3, -1) == tri);
}

TEST_CASE("adjacency pairs a shifted black triangle with the white triangle") {
  LatticePoint n = origin(4);
  OrientedCell black = cell(CellKind::BlackTriangle, n.shifted(0, 1), {0, 1, 2});
  OrientedCell white = cell(CellKind::WhiteTriangle, n, {0, 1, 2}, -1);
  CHECK(is_adjacent(black, white));
  OrientedCell tri = cell(CellKind::BlackTriangle, n, {0, 1, 2});
  CHECK_FALSE(is_adjacent(tri, tri));
  CHECK_THROWS_AS(is_adjacent(tri, cell(CellKind::Edge, n, {0, 1})), DimensionMismatch);
}

TEST_CASE("within octahedron facets, triangles sharing an edge are adjacent") {
  LatticePoint n = origin(4);
  auto terms = facets(cell(CellKind::Octahedron, n, {0, 1, 2, 3})).terms();
  int adjacent_pairs = 0;
  for (std::size_t a = 0; a < terms.size(); ++a)
    for (std::size_t b = a + 1; b < terms.size(); ++b) {
      OrientedCell ca = terms[a].first;
      ca.sign = static_cast<int>(terms[a].second);
      OrientedCell cb = terms[b].first;
      cb.sign = static_cast<int>(terms[b].second);
      bool share_edge = false;
      for (const auto& [edge, s] : facets(ca).terms())
        if (facets(cb).coefficient(edge) != 0) share_edge = true;
      if (share_edge) {
        CHECK(is_adjacent(ca, cb));
        ++adjacent_pairs;
      }
    }
  // a closed surface of 8 triangles has 12 interior edges
  CHECK(adjacent_pairs == 12);
}

TEST_CASE("closed-surface check: every facet edge of a 3-cell is shared exactly twice") {
  LatticePoint n = origin(4);
  for (CellKind kind : {CellKind::BlackTetrahedron, CellKind::Octahedron}) {
    CellChain boundary = facets(cell(kind, n, {0, 1, 2, 3}));
    std::map<CellChain::Key, int> edge_count;
    for (const auto& [tri, coeff] : boundary.terms())
      for (const auto& [edge, s] : facets(tri).terms())
        edge_count[{edge.kind, edge.dirs, edge.base}] += 1;
    for (const auto& [key, count] : edge_count) CHECK(count == 2);
    CHECK(facets(boundary).empty());
  }
}

TEST_CASE("chain arithmetic cancels exactly") {
  LatticePoint n = origin(4);
  OrientedCell tri = cell(CellKind::BlackTriangle, n, {0, 1, 2});
  CellChain chain;
  chain.add(tri, 1);
  chain.add(tri.negated(), 1);
  CHECK(chain.empty());

  chain.add(tri, 3);
  CHECK(chain.coefficient(tri) == 3);
  CHECK(chain.coefficient(tri.negated()) == -3);
  CHECK_FALSE(chain.unit_coefficients());
  chain.add(tri, -2);
  CHECK(chain.unit_coefficients());
}

TEST_CASE("cell operations accept any ambient dimension") {
  // the decomposition works two directions above the flower's ambient
  LatticePoint n = origin(7);
  OrientedCell octa = cell(CellKind::Octahedron, n, {1, 3, 5, 6});
  CHECK(facets(facets(octa)).empty());
  CHECK(vertices(octa).size() == 6);
}
