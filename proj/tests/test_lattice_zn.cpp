#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "pluri/projection.hpp"
#include "pluri/rng.hpp"

using namespace pluri;

namespace {

LatticePoint pt(std::vector<Coord> c) { return LatticePoint(std::move(c)); }

OrientedCell cell(CellKind kind, const LatticePoint& base, std::vector<int> dirs, int sign = +1) {
  return canonicalize(kind, base, std::move(dirs), sign);
}

std::set<LatticePoint> projected_vertex_set(const Projection& proj, const CellChain& chain) {
  std::set<LatticePoint> out;
  for (const auto& p : chain.vertex_set()) out.insert(proj.project_point(p));
  return out;
}

}  // namespace

TEST_CASE("project_point deletes one coordinate and keeps the others in order") {
  Projection p0(0);
  CHECK(p0.project_point(pt({2, 0, 0, 0})) == pt({0, 0, 0}));
  Projection p2(2);
  CHECK(p2.project_point(pt({4, -1, 7, 3})) == pt({4, -1, 3}));
  CHECK_THROWS_AS(p2.project_point(pt({1, 2})), InvalidDirection);
}

TEST_CASE("x_ii, x_ij, x_jk project as expected") {
  // i = 1 in a 4-dimensional ambient
  Projection proj(1);
  LatticePoint n = origin(4);
  CHECK(proj.project_point(n.shifted(1, 2)) == origin(3));                      // x_ii -> x
  CHECK(proj.project_point(n.shifted(1, 1).shifted(2, 1)) ==
        origin(3).shifted(1, 1));                                               // x_ij -> x_j
  CHECK(proj.project_point(n.shifted(2, 1).shifted(3, 1)) ==
        origin(3).shifted(1, 1).shifted(2, 1));                                 // x_jk -> x_jk
  CHECK(proj.project_point(n.shifted(1, -1).shifted(0, 1).shifted(2, 1).shifted(3, 1)) ==
        pt({1, 1, 1}));                                                         // x_{ibar jkl} -> x_jkl
}

TEST_CASE("unproject restores the declared level and inverts project") {
  Projection proj(2);
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    LatticePoint p(std::vector<Coord>{static_cast<Coord>(rng.below(9)) - 4,
                                      static_cast<Coord>(rng.below(9)) - 4,
                                      static_cast<Coord>(rng.below(9)) - 4});
    Coord level = static_cast<Coord>(rng.below(7)) - 3;
    LatticePoint lifted = proj.unproject_point(p, level);
    Coord sum = 0;
    for (Coord c : lifted.coords) sum += c;
    CHECK(sum == level);
    CHECK(proj.project_point(lifted) == p);
  }
}

TEST_CASE("projection is injective on every cell's vertex set") {
  LatticePoint n = origin(5);
  for (CellKind kind : {CellKind::Edge, CellKind::BlackTriangle, CellKind::WhiteTriangle,
                        CellKind::BlackTetrahedron, CellKind::WhiteTetrahedron,
                        CellKind::Octahedron}) {
    std::vector<int> dirs(dir_count(kind));
    for (std::size_t d = 0; d < dirs.size(); ++d) dirs[d] = static_cast<int>(d);
    OrientedCell c = cell(kind, n, dirs);
    for (int dropped = 0; dropped < 5; ++dropped) {
      Projection proj(dropped);
      auto vs = vertices(c);
      std::set<LatticePoint> images;
      for (const auto& v : vs) images.insert(proj.project_point(v));
      CHECK(images.size() == vs.size());
    }
  }
}

TEST_CASE("quad corresponds to a shifted black triangle minus the white one") {
  LatticePoint b = origin(3);
  OrientedCell quad = cell(CellKind::Quad, b, {0, 1});
  Projection proj(0);  // i = 0, so root-lattice directions are {1,2}
  CellChain chain = quad_correspondence(proj, quad);

  CellChain expected;
  LatticePoint n = origin(4);
  expected.add(cell(CellKind::BlackTriangle, n.shifted(0, 1), {0, 1, 2}), +1);
  expected.add(cell(CellKind::WhiteTriangle, n, {0, 1, 2}), -1);
  CHECK(chain == expected);

  CHECK(quad_correspondence(proj, quad.negated()) == -chain);
}

TEST_CASE("quad correspondence projects onto the quad's vertices") {
  Rng rng(11);
  for (int dropped = 0; dropped < 4; ++dropped) {
    Projection proj(dropped);
    LatticePoint b(std::vector<Coord>{static_cast<Coord>(rng.below(5)) - 2,
                                      static_cast<Coord>(rng.below(5)) - 2,
                                      static_cast<Coord>(rng.below(5)) - 2});
    for (int a = 0; a < 3; ++a)
      for (int c = a + 1; c < 3; ++c) {
        OrientedCell quad = cell(CellKind::Quad, b, {a, c});
        CellChain chain = quad_correspondence(proj, quad);
        auto quad_vertices = vertices(quad);
        std::set<LatticePoint> expected(quad_vertices.begin(), quad_vertices.end());
        CHECK(projected_vertex_set(proj, chain) == expected);
        // two adjacent 2-cells
        auto terms = chain.terms();
        REQUIRE(terms.size() == 2);
        OrientedCell first = terms[0].first;
        first.sign = static_cast<int>(terms[0].second);
        OrientedCell second = terms[1].first;
        second.sign = static_cast<int>(terms[1].second);
        CHECK(is_adjacent(first, second));
      }
  }
}

TEST_CASE("cube corresponds to the three adjacent 3-cells") {
  LatticePoint b = origin(3);
  OrientedCell cube = cell(CellKind::Cube, b, {0, 1, 2});
  Projection proj(0);
  CellChain chain = cube_correspondence(proj, cube);

  CellChain expected;
  LatticePoint n = origin(4);
  expected.add(cell(CellKind::BlackTetrahedron, n.shifted(0, 1), {0, 1, 2, 3}), -1);
  expected.add(cell(CellKind::Octahedron, n, {0, 1, 2, 3}), +1);
  expected.add(cell(CellKind::WhiteTetrahedron, n.shifted(0, -1), {0, 1, 2, 3}), -1);
  CHECK(chain == expected);

  // sixteen triangles before cancellation, twelve after
  std::size_t before = 0;
  CellChain boundary;
  for (const auto& [cell3, coeff] : chain.terms()) {
    CellChain f = facets(OrientedCell(cell3.kind, cell3.base, cell3.dirs, +1));
    before += f.size();
    for (const auto& [tri, s] : f.terms()) boundary.add(tri, s * coeff);
  }
  CHECK(before == 16);
  CHECK(boundary.size() == 12);

  // the projected vertex set is the eight cube corners
  auto cube_vertices = vertices(cube);
  std::set<LatticePoint> corners(cube_vertices.begin(), cube_vertices.end());
  CHECK(projected_vertex_set(proj, chain) == corners);
}

TEST_CASE("cube facets follow the alternating recipe") {
  LatticePoint b = pt({1, 0, -2});
  OrientedCell cube = cell(CellKind::Cube, b, {0, 1, 2});
  CellChain expected;
  expected.add(cell(CellKind::Quad, b, {0, 1}), +1);
  expected.add(cell(CellKind::Quad, b, {0, 2}), -1);
  expected.add(cell(CellKind::Quad, b, {1, 2}), +1);
  expected.add(cell(CellKind::Quad, b.shifted(2, 1), {0, 1}), -1);
  expected.add(cell(CellKind::Quad, b.shifted(1, 1), {0, 2}), +1);
  expected.add(cell(CellKind::Quad, b.shifted(0, 1), {1, 2}), -1);
  CHECK(facets(cube) == expected);
  CHECK(facets(cube.negated()) == -expected);
  CHECK(facets(facets(cube)).empty());
}

TEST_CASE("boundary compatibility: cube boundary pulls back to the negated 3-chain boundary") {
  // With a level-aware lift per face (top faces sit one level below), the
  // pulled-back facet quads reproduce the boundary of the corresponded
  // 3-chain with a single global orientation flip.
  for (int dropped = 0; dropped < 4; ++dropped) {
    Projection proj(dropped);
    LatticePoint b = pt({0, 1, -1});
    OrientedCell cube = cell(CellKind::Cube, b, {0, 1, 2});
    CellChain chain3 = cube_correspondence(proj, cube);
    CellChain boundary = facets(chain3);

    CellChain pulled;
    int qdir[3];
    for (int d = 0; d < 3; ++d) qdir[d] = proj.unproject_direction(d);
    LatticePoint n = proj.lift(b);
    // bottom faces at the base lift, top faces shifted down along the
    // dropped direction
    pulled += quad_correspondence_q(proj.dropped, qdir[0], qdir[1], n, +1);
    pulled += quad_correspondence_q(proj.dropped, qdir[0], qdir[2], n, -1);
    pulled += quad_correspondence_q(proj.dropped, qdir[1], qdir[2], n, +1);
    pulled += quad_correspondence_q(proj.dropped, qdir[0], qdir[1],
                                    n.shifted(qdir[2], 1).shifted(proj.dropped, -1), -1);
    pulled += quad_correspondence_q(proj.dropped, qdir[0], qdir[2],
                                    n.shifted(qdir[1], 1).shifted(proj.dropped, -1), +1);
    pulled += quad_correspondence_q(proj.dropped, qdir[1], qdir[2],
                                    n.shifted(qdir[0], 1).shifted(proj.dropped, -1), -1);

    CHECK(boundary == -pulled);
  }
}

TEST_CASE("correspondences reject a colliding projection direction") {
  LatticePoint n = origin(4);
  CHECK_THROWS_AS(quad_correspondence_q(1, 1, 2, n, +1), InvalidDirection);
  CHECK_THROWS_AS(cube_correspondence_q(2, 0, 1, 2, n, +1), InvalidDirection);
}

TEST_CASE("z-side boundary of a boundary vanishes") {
  LatticePoint b = origin(3);
  CHECK(facets(facets(cell(CellKind::Quad, b, {0, 2}))).empty());
  CHECK(facets(facets(cell(CellKind::Cube, b, {0, 1, 2}))).empty());
}
