#include "pluri/flowers.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pluri/rng.hpp"

namespace pluri {

namespace {

bool is_triangle(CellKind k) {
  return k == CellKind::BlackTriangle || k == CellKind::WhiteTriangle;
}

using EdgeKey = CellChain::Key;

EdgeKey edge_key(const OrientedCell& edge) { return {edge.kind, edge.dirs, edge.base}; }

// edge cell -> signed uses (triangle coefficient times facet sign)
std::map<EdgeKey, std::vector<long long>> edge_uses(const CellChain& chain) {
  std::map<EdgeKey, std::vector<long long>> uses;
  for (const auto& [cell, coeff] : chain.terms()) {
    if (!is_triangle(cell.kind)) continue;
    for (const auto& [edge, esign] : facets(cell).terms())
      uses[edge_key(edge)].push_back(coeff * esign);
  }
  return uses;
}

OrientedCell cell_of(const EdgeKey& key) {
  const auto& [kind, dirs, base] = key;
  return OrientedCell(kind, base, dirs, +1);
}

}  // namespace

std::vector<ManifoldViolation> validate(const TwoManifold& m) {
  std::vector<ManifoldViolation> out;
  for (const auto& [cell, coeff] : m.chain.terms()) {
    if (!is_triangle(cell.kind)) {
      out.push_back({ManifoldViolation::Type::NotTriangle,
                     to_string(cell) + " is not a triangle"});
      continue;
    }
    if (coeff < -1 || coeff > 1)
      out.push_back({ManifoldViolation::Type::CoefficientRange,
                     to_string(cell) + " has coefficient " + std::to_string(coeff)});
  }
  if (!out.empty()) return out;
  for (const auto& [key, uses] : edge_uses(m.chain)) {
    if (uses.size() > 2) {
      out.push_back({ManifoldViolation::Type::EdgeOveruse,
                     to_string(cell_of(key)) + " lies in " + std::to_string(uses.size()) +
                         " triangles"});
      continue;
    }
    if (uses.size() == 2 && uses[0] + uses[1] != 0)
      out.push_back({ManifoldViolation::Type::OrientationClash,
                     to_string(cell_of(key)) + " shared with equal orientation"});
  }
  return out;
}

Flower flower_at(const TwoManifold& m, const LatticePoint& vertex) {
  auto violations = validate(m);
  if (!violations.empty())
    throw InvalidManifold("not a 2-manifold: " + violations.front().detail);
  CellChain sub = m.chain.restricted_to_vertex(vertex);
  if (sub.empty()) throw NotAVertex(to_string(vertex) + " lies in no triangle");
  // every incident edge must be shared by two triangles
  for (const auto& [key, uses] : edge_uses(sub)) {
    OrientedCell edge = cell_of(key);
    if (!has_vertex(edge, vertex)) continue;
    if (uses.size() != 2)
      throw NotInterior(to_string(vertex) + " is a boundary vertex: " + to_string(edge) +
                        " lies in one triangle");
  }
  Flower flower{TwoManifold{sub, m.ambient_dim}, vertex};
  return flower;
}

namespace {

// Full flower validation: valid manifold, every triangle contains the center,
// the center is the unique interior vertex, and the fan around the center is
// a single connected cycle.
void require_flower(const Flower& flower) {
  auto violations = validate(flower.manifold);
  if (!violations.empty())
    throw InvalidFlower("flower chain is not a 2-manifold: " + violations.front().detail);
  const auto terms = flower.manifold.chain.terms();
  if (terms.empty()) return;  // the empty flower is allowed
  std::vector<OrientedCell> triangles;
  for (const auto& [cell, coeff] : terms) {
    if (!has_vertex(cell, flower.center))
      throw InvalidFlower(to_string(cell) + " does not contain the center");
    OrientedCell oriented = cell;
    oriented.sign = static_cast<int>(coeff);
    triangles.push_back(oriented);
  }
  auto uses = edge_uses(flower.manifold.chain);
  // center interior, every other vertex on the boundary
  std::set<LatticePoint> boundary_vertices;
  for (const auto& [key, u] : uses) {
    OrientedCell edge = cell_of(key);
    bool through_center = has_vertex(edge, flower.center);
    if (through_center && u.size() != 2)
      throw InvalidFlower("center edge " + to_string(edge) + " not shared by two triangles");
    if (u.size() == 1)
      for (const auto& v : vertices(edge)) boundary_vertices.insert(v);
  }
  if (boundary_vertices.count(flower.center))
    throw InvalidFlower("center lies on a boundary edge");
  for (const auto& v : flower.manifold.chain.vertex_set())
    if (v != flower.center && !boundary_vertices.count(v))
      throw InvalidFlower("second interior vertex at " + to_string(v));
  // connected cycle around the center
  std::map<EdgeKey, std::vector<std::size_t>> center_edge_to_tris;
  for (std::size_t t = 0; t < triangles.size(); ++t)
    for (const auto& [edge, esign] : facets(triangles[t]).terms())
      if (has_vertex(edge, flower.center)) center_edge_to_tris[edge_key(edge)].push_back(t);
  std::vector<bool> seen(triangles.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t t = stack.back();
    stack.pop_back();
    for (const auto& [edge, esign] : facets(triangles[t]).terms()) {
      auto it = center_edge_to_tris.find(edge_key(edge));
      if (it == center_edge_to_tris.end()) continue;
      for (std::size_t other : it->second)
        if (!seen[other]) {
          seen[other] = true;
          ++reached;
          stack.push_back(other);
        }
    }
  }
  if (reached != triangles.size())
    throw InvalidFlower("flower fan is not connected around the center");
}

}  // namespace

LatticePoint lift_point(const LatticePoint& p, std::size_t new_ambient) {
  if (new_ambient < p.ambient()) throw InvalidDirection("lift shrinks the ambient");
  LatticePoint out = p;
  out.coords.resize(new_ambient, 0);
  return out;
}

CellChain lift_chain(const CellChain& chain, std::size_t new_ambient) {
  CellChain out;
  for (const auto& [cell, coeff] : chain.terms())
    out.add(OrientedCell(cell.kind, lift_point(cell.base, new_ambient), cell.dirs, cell.sign),
            coeff);
  return out;
}

std::vector<DecompositionCorner> decompose(const Flower& flower) {
  require_flower(flower);
  const std::size_t ambient = flower.manifold.ambient_dim;
  const int M = static_cast<int>(ambient);
  const int L = M + 1;
  const std::size_t ambient2 = ambient + 2;
  const LatticePoint center = lift_point(flower.center, ambient2);

  std::vector<DecompositionCorner> corners;
  CellChain sum;
  for (const auto& [cell, coeff] : flower.manifold.chain.terms()) {
    LatticePoint base = lift_point(cell.base, ambient2);
    std::vector<int> dirs = cell.dirs;
    dirs.push_back(M);
    CellKind lifted_kind = cell.kind == CellKind::BlackTriangle ? CellKind::BlackTetrahedron
                                                                : CellKind::Octahedron;
    OrientedCell cell3 =
        canonicalize(lifted_kind, base, dirs, static_cast<int>(coeff));
    corners.push_back({cell3, center});
    sum += corner_at(cell3, center);
  }
  // the leftover terms must be white triangles through M, one per fan edge
  CellChain residual = sum - lift_chain(flower.manifold.chain, ambient2);
  if (!residual.unit_coefficients())
    throw InvalidFlower("decomposition residual has a coefficient outside {-1,0,+1}");
  for (const auto& [cell, coeff] : residual.terms()) {
    if (cell.kind != CellKind::WhiteTriangle ||
        std::find(cell.dirs.begin(), cell.dirs.end(), M) == cell.dirs.end())
      throw InvalidFlower("unexpected residual term " + to_string(cell));
    std::vector<int> dirs = cell.dirs;
    dirs.push_back(L);
    OrientedCell cell3 = canonicalize(CellKind::WhiteTetrahedron,
                                      cell.base.shifted(L, -1), dirs,
                                      -static_cast<int>(coeff));
    corners.push_back({cell3, center});
  }
  return corners;
}

bool verify_decomposition(const Flower& flower, const std::vector<DecompositionCorner>& corners) {
  std::size_t ambient2 = flower.manifold.ambient_dim + 2;
  for (const auto& corner : corners)
    ambient2 = std::max(ambient2, corner.cell3.base.ambient());
  CellChain sum;
  for (const auto& corner : corners) sum += corner_at(corner.cell3, corner.center);
  return sum == lift_chain(flower.manifold.chain, ambient2);
}

ElSumReport el_sum_check(const OneFormFamily& family, const FormParameters& params,
                         const Flower& flower, const FieldAssignment& field, std::uint64_t seed,
                         double tol) {
  ElSumReport report;
  report.family = family.name;
  report.tolerance = tol;

  auto corners = decompose(flower);
  const std::size_t ambient2 = flower.manifold.ambient_dim + 2;
  const int M = static_cast<int>(flower.manifold.ambient_dim);
  const int L = M + 1;
  const LatticePoint center = lift_point(flower.center, ambient2);
  const CellChain lifted = lift_chain(flower.manifold.chain, ambient2);

  // fresh parameters for the auxiliary directions
  FormParameters extended = params;
  std::vector<double> existing;
  for (const auto& [d, a] : params.alpha) existing.push_back(a);
  Rng alpha_rng(derive_trial_seed(seed, 0xa1fa));
  auto fresh = sample_separated(alpha_rng, 2, 0.5, 2.0, 0.05, existing);
  extended.alpha[M] = fresh[0];
  extended.alpha[L] = fresh[1];
  TwoForm L2{&family, extended};

  std::vector<LatticePoint> needed;
  for (const auto& corner : corners)
    for (auto& v : vertices(corner.cell3)) needed.push_back(std::move(v));

  for (int e = 0; e < 3; ++e) {
    ElSumExtension ext;
    ext.extension_seed = derive_trial_seed(seed, static_cast<std::uint64_t>(e));
    FieldAssignment extended_field(ext.extension_seed);
    for (const auto& [p, v] : field.values()) extended_field.set(lift_point(p, ambient2), v);
    extended_field.extend_all(needed);
    ext.flower_residual = flower_el_residual(L2, lifted, center, extended_field);
    double sum = 0.0;
    for (const auto& corner : corners)
      sum += corner_residual(L2, corner.cell3, corner.center, extended_field).value;
    ext.corner_sum = sum;
    ext.deviation = std::fabs(ext.flower_residual - ext.corner_sum);
    report.extensions.push_back(ext);
  }
  for (const auto& a : report.extensions)
    for (const auto& b : report.extensions)
      report.cross_extension_spread =
          std::max(report.cross_extension_spread, std::fabs(a.corner_sum - b.corner_sum));
  report.pass = report.cross_extension_spread <= tol;
  for (const auto& ext : report.extensions)
    if (ext.deviation > tol) report.pass = false;
  return report;
}

// ---------------------------------------------------------------------------

Flower planar_six_flower(std::size_t ambient_dim, int i, int j, int k) {
  LatticePoint center = origin(ambient_dim);
  CellChain chain;
  std::array<int, 3> d{i, j, k};
  std::sort(d.begin(), d.end());
  for (int a : d)
    chain.add(canonicalize(CellKind::BlackTriangle, center.shifted(a, -1), {d[0], d[1], d[2]}, +1));
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      chain.add(canonicalize(CellKind::WhiteTriangle,
                             center.shifted(d[static_cast<std::size_t>(a)], -1)
                                 .shifted(d[static_cast<std::size_t>(b)], -1),
                             {d[0], d[1], d[2]}, +1),
                -1);
  return {TwoManifold{chain, ambient_dim}, center};
}

std::vector<Flower> corner_flowers(std::size_t ambient_dim) {
  if (ambient_dim < 4) throw InvalidDirection("3-cell corners need ambient dimension >= 4");
  std::vector<Flower> out;
  for (CellKind kind : {CellKind::BlackTetrahedron, CellKind::Octahedron,
                        CellKind::WhiteTetrahedron}) {
    OrientedCell cell3 = canonicalize(kind, origin(ambient_dim), {0, 1, 2, 3}, +1);
    for (const auto& v : vertices(cell3))
      out.push_back({TwoManifold{corner_at(cell3, v), ambient_dim}, v});
  }
  return out;
}

namespace {

struct FanCandidate {
  OrientedCell cell;  // positive orientation
  std::array<EdgeKey, 2> center_edges;
  std::array<long long, 2> edge_signs;  // facet signs in the positive orientation
};

std::vector<FanCandidate> triangles_around(const LatticePoint& center) {
  std::vector<FanCandidate> out;
  const int n = static_cast<int>(center.ambient());
  auto push = [&](OrientedCell cell) {
    FanCandidate c{std::move(cell), {}, {}};
    std::size_t found = 0;
    for (const auto& [edge, esign] : facets(c.cell).terms()) {
      if (!has_vertex(edge, center)) continue;
      if (found == 2) return;
      c.center_edges[found] = edge_key(edge);
      c.edge_signs[found] = esign;
      ++found;
    }
    if (found == 2) out.push_back(std::move(c));
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        for (int a : {i, j, k})
          push(canonicalize(CellKind::BlackTriangle, center.shifted(a, -1), {i, j, k}, +1));
        for (int a : {i, j, k})
          for (int b : {i, j, k})
            if (a < b)
              push(canonicalize(CellKind::WhiteTriangle,
                                center.shifted(a, -1).shifted(b, -1), {i, j, k}, +1));
      }
  return out;
}

std::optional<Flower> grow_fan(const LatticePoint& center, std::size_t ambient_dim,
                               const std::vector<FanCandidate>& candidates, std::size_t target,
                               Rng& rng) {
  std::size_t start = rng.below(candidates.size());
  int start_orient = rng.below(2) == 0 ? +1 : -1;
  const FanCandidate& first = candidates[start];

  CellChain chain;
  chain.add(first.cell, start_orient);
  std::set<EdgeKey> used_cells{edge_key(first.cell)};
  // pair slot 1 next; slot 0 must close the cycle at the end
  EdgeKey pending = first.center_edges[0];
  long long pending_sign = start_orient * first.edge_signs[0];
  EdgeKey open = first.center_edges[1];
  long long open_sign = start_orient * first.edge_signs[1];
  std::set<EdgeKey> closed_edges;

  for (std::size_t len = 1; len < target; ++len) {
    bool closing = len + 1 == target;
    std::vector<std::pair<std::size_t, int>> options;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const FanCandidate& cand = candidates[c];
      if (used_cells.count(edge_key(cand.cell))) continue;
      for (int slot = 0; slot < 2; ++slot) {
        if (cand.center_edges[static_cast<std::size_t>(slot)] != open) continue;
        // orientation that cancels the open edge
        long long esign = cand.edge_signs[static_cast<std::size_t>(slot)];
        int orient = (esign == -open_sign) ? +1 : -1;
        const EdgeKey& other = cand.center_edges[static_cast<std::size_t>(1 - slot)];
        long long other_sign = orient * cand.edge_signs[static_cast<std::size_t>(1 - slot)];
        if (closing) {
          if (other == pending && other_sign == -pending_sign) options.emplace_back(c, orient);
        } else {
          if (other != pending && !closed_edges.count(other)) options.emplace_back(c, orient);
        }
      }
    }
    if (options.empty()) return std::nullopt;
    auto [chosen, orient] = options[rng.below(options.size())];
    const FanCandidate& cand = candidates[chosen];
    chain.add(cand.cell, orient);
    used_cells.insert(edge_key(cand.cell));
    closed_edges.insert(open);
    int slot = cand.center_edges[0] == open ? 0 : 1;
    open = cand.center_edges[static_cast<std::size_t>(1 - slot)];
    open_sign = orient * cand.edge_signs[static_cast<std::size_t>(1 - slot)];
  }
  Flower flower{TwoManifold{chain, ambient_dim}, center};
  try {
    require_flower(flower);
  } catch (const InvalidFlower&) {
    return std::nullopt;
  } catch (const InvalidManifold&) {
    return std::nullopt;
  }
  return flower;
}

}  // namespace

Flower random_flower(std::size_t ambient_dim, std::uint64_t seed) {
  LatticePoint center = origin(ambient_dim);
  auto candidates = triangles_around(center);
  for (int attempt = 0; attempt < 4096; ++attempt) {
    Rng rng(derive_trial_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::size_t target = 8 + rng.below(5);
    auto flower = grow_fan(center, ambient_dim, candidates, target, rng);
    if (flower) return *flower;
  }
  throw InvalidFlower("random flower generation did not converge");
}

// ---------------------------------------------------------------------------

std::string flower_to_json(const Flower& flower) {
  nlohmann::ordered_json j;
  j["ambient"] = flower.manifold.ambient_dim;
  j["center"] = flower.center.coords;
  j["triangles"] = nlohmann::ordered_json::array();
  for (const auto& [cell, coeff] : flower.manifold.chain.terms()) {
    nlohmann::ordered_json tri;
    tri["kind"] = cell.kind == CellKind::BlackTriangle ? "black" : "white";
    tri["base"] = cell.base.coords;
    tri["dirs"] = cell.dirs;
    tri["coeff"] = coeff;
    j["triangles"].push_back(tri);
  }
  return j.dump(2);
}

Flower flower_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Flower flower;
  flower.manifold.ambient_dim = j.at("ambient").get<std::size_t>();
  flower.center = LatticePoint(j.at("center").get<std::vector<Coord>>());
  for (const auto& tri : j.at("triangles")) {
    CellKind kind = tri.at("kind").get<std::string>() == "black" ? CellKind::BlackTriangle
                                                                 : CellKind::WhiteTriangle;
    OrientedCell cell = canonicalize(kind, LatticePoint(tri.at("base").get<std::vector<Coord>>()),
                                     tri.at("dirs").get<std::vector<int>>(), +1);
    flower.manifold.chain.add(cell, tri.at("coeff").get<long long>());
  }
  require_flower(flower);
  return flower;
}

Flower flower_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open flower file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return flower_from_json(buf.str());
}

}  // namespace pluri
