#include "pluri/cells.hpp"

#include <algorithm>
#include <sstream>

namespace pluri {

LatticePoint LatticePoint::shifted(int direction, Coord steps) const {
  if (direction < 0 || static_cast<std::size_t>(direction) >= coords.size())
    throw InvalidDirection("shift direction " + std::to_string(direction) +
                           " outside ambient of size " + std::to_string(coords.size()));
  LatticePoint out = *this;
  out.coords[static_cast<std::size_t>(direction)] += steps;
  return out;
}

LatticePoint origin(std::size_t ambient) {
  return LatticePoint(std::vector<Coord>(ambient, 0));
}

std::string to_string(const LatticePoint& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    if (i) os << ',';
    os << p.coords[i];
  }
  os << ')';
  return os.str();
}

int dimension(CellKind kind) {
  switch (kind) {
    case CellKind::Vertex: return 0;
    case CellKind::Edge:
    case CellKind::ZEdge: return 1;
    case CellKind::BlackTriangle:
    case CellKind::WhiteTriangle:
    case CellKind::Quad: return 2;
    case CellKind::BlackTetrahedron:
    case CellKind::WhiteTetrahedron:
    case CellKind::Octahedron:
    case CellKind::Cube: return 3;
  }
  throw InvalidCell("unknown cell kind");
}

std::size_t dir_count(CellKind kind) {
  switch (kind) {
    case CellKind::Vertex: return 0;
    case CellKind::ZEdge: return 1;
    case CellKind::Edge:
    case CellKind::Quad: return 2;
    case CellKind::BlackTriangle:
    case CellKind::WhiteTriangle:
    case CellKind::Cube: return 3;
    case CellKind::BlackTetrahedron:
    case CellKind::WhiteTetrahedron:
    case CellKind::Octahedron: return 4;
  }
  throw InvalidCell("unknown cell kind");
}

std::string to_string(CellKind kind) {
  switch (kind) {
    case CellKind::Vertex: return "vertex";
    case CellKind::Edge: return "edge";
    case CellKind::BlackTriangle: return "black-triangle";
    case CellKind::WhiteTriangle: return "white-triangle";
    case CellKind::BlackTetrahedron: return "black-tetrahedron";
    case CellKind::WhiteTetrahedron: return "white-tetrahedron";
    case CellKind::Octahedron: return "octahedron";
    case CellKind::ZEdge: return "z-edge";
    case CellKind::Quad: return "quad";
    case CellKind::Cube: return "cube";
  }
  return "?";
}

OrientedCell::OrientedCell(CellKind k, LatticePoint b, std::vector<int> d, int s)
    : kind(k), base(std::move(b)), dirs(std::move(d)), sign(s) {}

OrientedCell OrientedCell::negated() const {
  OrientedCell out = *this;
  out.sign = -out.sign;
  return out;
}

OrientedCell OrientedCell::shifted(int direction, Coord steps) const {
  OrientedCell out = *this;
  out.base = base.shifted(direction, steps);
  return out;
}

OrientedCell canonicalize(CellKind kind, LatticePoint base, std::vector<int> dirs, int sign) {
  if (sign != 1 && sign != -1) throw InvalidCell("orientation sign must be +1 or -1");
  if (dirs.size() != dir_count(kind))
    throw InvalidCell(to_string(kind) + " needs " + std::to_string(dir_count(kind)) +
                      " directions, got " + std::to_string(dirs.size()));
  for (int d : dirs) {
    if (d < 0 || static_cast<std::size_t>(d) >= base.ambient())
      throw InvalidCell("direction " + std::to_string(d) + " outside ambient of size " +
                        std::to_string(base.ambient()));
  }
  // insertion sort, tracking transpositions
  for (std::size_t i = 1; i < dirs.size(); ++i) {
    for (std::size_t j = i; j > 0 && dirs[j - 1] > dirs[j]; --j) {
      std::swap(dirs[j - 1], dirs[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < dirs.size(); ++i)
    if (dirs[i - 1] == dirs[i])
      throw InvalidCell("duplicate direction index " + std::to_string(dirs[i]));
  return OrientedCell(kind, std::move(base), std::move(dirs), sign);
}

std::vector<LatticePoint> vertices(const OrientedCell& c) {
  std::vector<LatticePoint> out;
  const auto& d = c.dirs;
  switch (c.kind) {
    case CellKind::Vertex:
      out.push_back(c.base);
      break;
    case CellKind::Edge:
    case CellKind::BlackTriangle:
    case CellKind::BlackTetrahedron:
      for (int a : d) out.push_back(c.base.shifted(a, 1));
      break;
    case CellKind::WhiteTriangle:
    case CellKind::Octahedron:
      for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j)
          out.push_back(c.base.shifted(d[i], 1).shifted(d[j], 1));
      break;
    case CellKind::WhiteTetrahedron: {
      LatticePoint all = c.base;
      for (int a : d) all = all.shifted(a, 1);
      for (std::size_t i = d.size(); i-- > 0;) out.push_back(all.shifted(d[i], -1));
      break;
    }
    case CellKind::ZEdge:
      out.push_back(c.base);
      out.push_back(c.base.shifted(d[0], 1));
      break;
    case CellKind::Quad:
      out.push_back(c.base);
      out.push_back(c.base.shifted(d[0], 1));
      out.push_back(c.base.shifted(d[1], 1));
      out.push_back(c.base.shifted(d[0], 1).shifted(d[1], 1));
      break;
    case CellKind::Cube:
      for (int mask = 0; mask < 8; ++mask) {
        LatticePoint p = c.base;
        for (int b = 0; b < 3; ++b)
          if (mask & (1 << b)) p = p.shifted(d[static_cast<std::size_t>(b)], 1);
        out.push_back(p);
      }
      break;
  }
  return out;
}

bool has_vertex(const OrientedCell& c, const LatticePoint& p) {
  auto vs = vertices(c);
  return std::find(vs.begin(), vs.end(), p) != vs.end();
}

std::string to_string(const OrientedCell& c) {
  std::ostringstream os;
  os << (c.sign < 0 ? "-" : "+") << to_string(c.kind) << '{';
  for (std::size_t i = 0; i < c.dirs.size(); ++i) {
    if (i) os << ',';
    os << c.dirs[i];
  }
  os << "}@" << to_string(c.base);
  return os.str();
}

CellChain CellChain::single(const OrientedCell& cell, long long coeff) {
  CellChain out;
  out.add(cell, coeff);
  return out;
}

void CellChain::add(const OrientedCell& cell, long long coeff) {
  Key key{cell.kind, cell.dirs, cell.base};
  long long& slot = terms_[key];
  slot += cell.sign * coeff;
  if (slot == 0) terms_.erase(key);
}

CellChain& CellChain::operator+=(const CellChain& other) {
  for (const auto& [key, coeff] : other.terms_) {
    long long& slot = terms_[key];
    slot += coeff;
    if (slot == 0) terms_.erase(key);
  }
  return *this;
}

CellChain& CellChain::operator-=(const CellChain& other) {
  for (const auto& [key, coeff] : other.terms_) {
    long long& slot = terms_[key];
    slot -= coeff;
    if (slot == 0) terms_.erase(key);
  }
  return *this;
}

CellChain CellChain::operator-() const {
  CellChain out = *this;
  for (auto& [key, coeff] : out.terms_) coeff = -coeff;
  return out;
}

long long CellChain::coefficient(const OrientedCell& cell) const {
  Key key{cell.kind, cell.dirs, cell.base};
  auto it = terms_.find(key);
  if (it == terms_.end()) return 0;
  return cell.sign * it->second;
}

std::vector<std::pair<OrientedCell, long long>> CellChain::terms() const {
  std::vector<std::pair<OrientedCell, long long>> out;
  out.reserve(terms_.size());
  for (const auto& [key, coeff] : terms_) {
    const auto& [kind, dirs, base] = key;
    out.emplace_back(OrientedCell(kind, base, dirs, +1), coeff);
  }
  return out;
}

bool CellChain::unit_coefficients() const {
  for (const auto& [key, coeff] : terms_)
    if (coeff < -1 || coeff > 1) return false;
  return true;
}

CellChain CellChain::restricted_to_vertex(const LatticePoint& p) const {
  CellChain out;
  for (const auto& [cell, coeff] : terms())
    if (has_vertex(cell, p)) out.add(cell, coeff);
  return out;
}

std::vector<LatticePoint> CellChain::vertex_set() const {
  std::vector<LatticePoint> out;
  for (const auto& [cell, coeff] : terms())
    for (auto& v : vertices(cell)) out.push_back(std::move(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string to_string(const CellChain& chain) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [cell, coeff] : chain.terms()) {
    if (!first) os << ' ';
    first = false;
    os << (coeff >= 0 ? "+" : "") << coeff << '*' << to_string(cell).substr(1);
  }
  if (first) os << "0";
  return os.str();
}

namespace {

// Alternating facet sign: "+" on the last index, alternating towards the front.
int omit_sign(std::size_t count, std::size_t position) {
  return ((count - 1 - position) % 2 == 0) ? +1 : -1;
}

std::vector<int> without(const std::vector<int>& dirs, std::size_t position) {
  std::vector<int> out;
  out.reserve(dirs.size() - 1);
  for (std::size_t i = 0; i < dirs.size(); ++i)
    if (i != position) out.push_back(dirs[i]);
  return out;
}

}  // namespace

CellChain facets(const OrientedCell& c) {
  if (dimension(c.kind) < 1) throw InvalidCell("facets of a 0-cell");
  CellChain out;
  const auto& d = c.dirs;
  const std::size_t n = d.size();
  switch (c.kind) {
    case CellKind::Edge:
      // deleting one index leaves the vertex reached along the other
      out.add(OrientedCell(CellKind::Vertex, c.base.shifted(d[0], 1), {}, c.sign), omit_sign(2, 1));
      out.add(OrientedCell(CellKind::Vertex, c.base.shifted(d[1], 1), {}, c.sign), omit_sign(2, 0));
      break;
    case CellKind::BlackTriangle:
    case CellKind::BlackTetrahedron: {
      CellKind facet_kind =
          c.kind == CellKind::BlackTriangle ? CellKind::Edge : CellKind::BlackTriangle;
      for (std::size_t p = 0; p < n; ++p)
        out.add(OrientedCell(facet_kind, c.base, without(d, p), c.sign), omit_sign(n, p));
      break;
    }
    case CellKind::WhiteTriangle:
    case CellKind::WhiteTetrahedron: {
      CellKind facet_kind =
          c.kind == CellKind::WhiteTriangle ? CellKind::Edge : CellKind::WhiteTriangle;
      for (std::size_t p = 0; p < n; ++p)
        out.add(OrientedCell(facet_kind, c.base.shifted(d[p], 1), without(d, p), c.sign),
                omit_sign(n, p));
      break;
    }
    case CellKind::Octahedron:
      for (std::size_t p = 0; p < n; ++p) {
        int s = omit_sign(n, p);
        out.add(OrientedCell(CellKind::BlackTriangle, c.base.shifted(d[p], 1), without(d, p),
                             c.sign),
                s);
        out.add(OrientedCell(CellKind::WhiteTriangle, c.base, without(d, p), c.sign), s);
      }
      break;
    case CellKind::ZEdge:
      out.add(OrientedCell(CellKind::Vertex, c.base, {}, c.sign), +1);
      out.add(OrientedCell(CellKind::Vertex, c.base.shifted(d[0], 1), {}, c.sign), -1);
      break;
    case CellKind::Quad:
    case CellKind::Cube: {
      CellKind facet_kind = c.kind == CellKind::Quad ? CellKind::ZEdge : CellKind::Quad;
      for (std::size_t p = 0; p < n; ++p) {
        int s = omit_sign(n, p);
        out.add(OrientedCell(facet_kind, c.base, without(d, p), c.sign), s);
        out.add(OrientedCell(facet_kind, c.base.shifted(d[p], 1), without(d, p), c.sign), -s);
      }
      break;
    }
    default:
      throw InvalidCell("facets not defined for " + to_string(c.kind));
  }
  return out;
}

CellChain facets(const CellChain& chain) {
  CellChain out;
  for (const auto& [cell, coeff] : chain.terms()) {
    CellChain f = facets(cell);
    for (const auto& [fcell, fcoeff] : f.terms()) out.add(fcell, fcoeff * coeff);
  }
  return out;
}

CellChain corner_at(const OrientedCell& cell3, const LatticePoint& center) {
  if (dimension(cell3.kind) != 3) throw InvalidCell("corner_at expects a 3-cell");
  if (!has_vertex(cell3, center))
    throw NotAVertex(to_string(center) + " is not a vertex of " + to_string(cell3));
  return facets(cell3).restricted_to_vertex(center);
}

bool is_adjacent(const OrientedCell& a, const OrientedCell& b) {
  if (dimension(a.kind) != dimension(b.kind))
    throw DimensionMismatch("adjacency between cells of dimension " +
                            std::to_string(dimension(a.kind)) + " and " +
                            std::to_string(dimension(b.kind)));
  if (dimension(a.kind) < 1) throw DimensionMismatch("adjacency needs dimension >= 1");
  CellChain fb = facets(b);
  for (const auto& [cell, coeff] : facets(a).terms()) {
    long long other = fb.coefficient(cell);
    if (other != 0 && (coeff > 0) != (other > 0)) return true;
  }
  return false;
}

}  // namespace pluri
