#include "multibanana/geometry.hpp"

#include <gmpxx.h>

#include <charconv>
#include <sstream>

namespace mb::geometry {

namespace {

int mod(int x, int m) { return ((x % m) + m) % m; }

// Hexagon coordinates (a,b) of edge index i, per family.  The (2,2) labels
// follow the figure numbering of the fundamental domain; (1,w) is a single row.
constexpr std::array<std::array<std::array<int, 2>, 4>, 3> kLabels22{{
    {{{1, 0}, {1, 1}, {0, 0}, {0, 1}}},  // A0..A3 = V(1,0), V(1,1), V(0,0), V(0,1)
    {{{0, 0}, {1, 0}, {0, 1}, {1, 1}}},  // B0..B3 = H(0,0), H(1,0), H(0,1), H(1,1)
    {{{1, 0}, {1, 1}, {0, 0}, {0, 1}}},  // C0..C3 = D(1,0), D(1,1), D(0,0), D(0,1)
}};

int family_slot(CurveFamily f) { return static_cast<int>(f); }

void require_supported(const BananaShape& shape) {
  if (!shape.supported()) throw GeometryError("unsupported shape " + shape.name());
}

LatticeEdge edge_at(const BananaShape& shape, CurveFamily f, int a, int b) {
  a = mod(a, shape.v);
  b = mod(b, shape.w);
  if (shape.is_22()) {
    const auto& table = kLabels22[static_cast<std::size_t>(family_slot(f))];
    for (int i = 0; i < 4; ++i) {
      if (table[static_cast<std::size_t>(i)] == std::array<int, 2>{a, b}) return {f, i};
    }
    throw GeometryError("edge_at: no label for hexagon");
  }
  return {f, b};
}

std::size_t flat_index(const BananaShape& shape, const LatticeEdge& e) {
  return static_cast<std::size_t>(family_slot(e.family) * shape.v * shape.w + e.index);
}

void check_edge(const BananaShape& shape, const LatticeEdge& e) {
  if (e.index < 0 || e.index >= shape.v * shape.w) {
    throw GeometryError("edge " + to_string(e) + " lies outside the fundamental domain of " +
                        shape.name());
  }
}

// Solves edge = sum_j coeff_j * basis_j modulo the hexagon relations.
std::vector<mpq_class> solve_in_basis(const BananaShape& shape, const LatticeEdge& edge) {
  const Basis basis = basis_classes(shape);
  const auto relations = hexagon_relations(shape);
  const std::size_t rows = static_cast<std::size_t>(3 * shape.v * shape.w);
  const std::size_t nrel = relations.size();
  std::vector<LatticeEdge> bvec;
  for (const auto* fam : {&basis.a, &basis.b, &basis.c}) bvec.insert(bvec.end(), fam->begin(), fam->end());
  const std::size_t cols = nrel + bvec.size();

  std::vector<std::vector<mpq_class>> m(rows, std::vector<mpq_class>(cols + 1, 0));
  for (std::size_t j = 0; j < nrel; ++j) {
    for (const auto& e : relations[j].lhs) m[flat_index(shape, e)][j] += 1;
    for (const auto& e : relations[j].rhs) m[flat_index(shape, e)][j] -= 1;
  }
  for (std::size_t j = 0; j < bvec.size(); ++j) m[flat_index(shape, bvec[j])][nrel + j] = 1;
  m[flat_index(shape, edge)][cols] = 1;

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const mpq_class inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const mpq_class f = m[i][c];
      for (std::size_t k = c; k <= cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (m[i][cols] != 0) throw GeometryError("reduce_edge_class: edge not in the span");
  }
  std::vector<mpq_class> coeffs(bvec.size(), 0);
  std::size_t basis_pivots = 0;
  for (std::size_t i = 0; i < pivot_col.size(); ++i) {
    if (pivot_col[i] >= nrel) {
      coeffs[pivot_col[i] - nrel] = m[i][cols];
      ++basis_pivots;
    }
  }
  if (basis_pivots != bvec.size()) {
    throw GeometryError("reduce_edge_class: basis is dependent modulo the hexagon relations");
  }
  return coeffs;
}

}  // namespace

BananaShape BananaShape::parse(std::string_view shape, int w) {
  if (shape == "2x2") return {2, 2};
  if (shape == "1xW" || shape == "1xw") {
    if (w < 1) throw GeometryError("shape 1xW needs w >= 1");
    return {1, w};
  }
  throw GeometryError("unknown shape '" + std::string(shape) + "' (expected 2x2 or 1xW)");
}

std::string BananaShape::name() const { return std::to_string(v) + "x" + std::to_string(w); }

char family_letter(CurveFamily f) {
  switch (f) {
    case CurveFamily::A: return 'A';
    case CurveFamily::B: return 'B';
    case CurveFamily::C: return 'C';
  }
  return '?';
}

std::string to_string(const LatticeEdge& e) { return family_letter(e.family) + std::to_string(e.index); }

LatticeEdge parse_edge(std::string_view text) {
  if (text.size() < 2) throw GeometryError("bad edge '" + std::string(text) + "'");
  CurveFamily f;
  switch (text.front()) {
    case 'A': f = CurveFamily::A; break;
    case 'B': f = CurveFamily::B; break;
    case 'C': f = CurveFamily::C; break;
    default: throw GeometryError("bad edge family in '" + std::string(text) + "'");
  }
  int index = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data() + 1, end, index);
  if (ec != std::errc{} || ptr != end) throw GeometryError("bad edge index in '" + std::string(text) + "'");
  return {f, index};
}

std::string to_string(const CurveClass& cls) {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](char letter, const std::vector<int>& coeffs, bool single) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      if (!first) os << " + ";
      if (coeffs[i] != 1) os << coeffs[i] << '*';
      os << letter;
      if (!single) os << i;
      first = false;
    }
  };
  emit('A', cls.a, false);
  emit('B', cls.b, cls.b.size() == 1);
  emit('C', cls.c, cls.c.size() == 1);
  if (first) os << '0';
  return os.str();
}

Basis basis_classes(const BananaShape& shape) {
  require_supported(shape);
  Basis basis;
  if (shape.is_22()) {
    for (int i = 0; i < 2; ++i) {
      basis.a.push_back({CurveFamily::A, i});
      basis.b.push_back({CurveFamily::B, i});
      basis.c.push_back({CurveFamily::C, i});
    }
    return basis;
  }
  for (int i = 0; i < shape.w; ++i) basis.a.push_back({CurveFamily::A, i});
  basis.b.push_back({CurveFamily::B, 0});
  basis.c.push_back({CurveFamily::C, 0});
  return basis;
}

std::array<int, 2> hexagon_of(const BananaShape& shape, const LatticeEdge& edge) {
  require_supported(shape);
  check_edge(shape, edge);
  if (shape.is_22()) {
    return kLabels22[static_cast<std::size_t>(family_slot(edge.family))][static_cast<std::size_t>(edge.index)];
  }
  return {0, edge.index};
}

std::vector<HexagonRelation> hexagon_relations(const BananaShape& shape) {
  require_supported(shape);
  using F = CurveFamily;
  std::vector<HexagonRelation> out;
  for (int a = 0; a < shape.v; ++a) {
    for (int b = 0; b < shape.w; ++b) {
      const LatticeEdge shared = edge_at(shape, F::C, a - 1, b + 1);
      const LatticeEdge own = edge_at(shape, F::C, a, b);
      out.push_back({{edge_at(shape, F::A, a - 1, b), shared}, {edge_at(shape, F::A, a, b), own}});
      out.push_back({{edge_at(shape, F::B, a, b), shared}, {edge_at(shape, F::B, a, b - 1), own}});
    }
  }
  return out;
}

CurveClass reduce_edge_class(const BananaShape& shape, const LatticeEdge& edge) {
  require_supported(shape);
  check_edge(shape, edge);
  const Basis basis = basis_classes(shape);
  const auto coeffs = solve_in_basis(shape, edge);
  auto take = [&](std::size_t offset, std::size_t n) {
    std::vector<int> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      const mpq_class& x = coeffs[offset + i];
      if (x.get_den() != 1) throw GeometryError("reduce_edge_class: non-integral reduction");
      v[i] = static_cast<int>(x.get_num().get_si());
    }
    return v;
  };
  return {take(0, basis.a.size()), take(basis.a.size(), basis.b.size()),
          take(basis.a.size() + basis.b.size(), basis.c.size())};
}

std::vector<BLocation> b_locations(const BananaShape& shape) {
  require_supported(shape);
  if (shape.is_22()) return {{0, {CurveFamily::B, 0}}, {1, {CurveFamily::B, 2}}};
  std::vector<BLocation> out;
  for (int i = 0; i < shape.w; ++i) out.push_back({i, {CurveFamily::B, i}});
  return out;
}

std::array<BranchSpec, 4> branch_specs(const BananaShape& shape, int location) {
  require_supported(shape);
  const int count = static_cast<int>(b_locations(shape).size());
  if (location < 0 || location >= count) {
    throw GeometryError("location " + std::to_string(location) + " is not valid for " + shape.name());
  }
  if (shape.is_22()) {
    // Both locations carry the same table.
    return {BranchSpec{"NE", {"s1", "r1", "s0", "r0"}}, BranchSpec{"NW", {"r0", "s0", "r1", "s1"}},
            BranchSpec{"SW", {"s0", "r0", "s1", "r1"}}, BranchSpec{"SE", {"r1", "s1", "r0", "s0"}}};
  }
  const int w = shape.w;
  auto r = [&](int k) { return "r" + std::to_string(mod(location + k, w)); };
  std::array<BranchSpec, 4> specs{BranchSpec{"NE", {}}, BranchSpec{"NW", {}}, BranchSpec{"SW", {}},
                                  BranchSpec{"SE", {}}};
  for (int k = 0; k < w; ++k) {
    specs[0].labels.insert(specs[0].labels.end(), {"s", r(k)});
    specs[1].labels.insert(specs[1].labels.end(), {r(k), "s"});
    specs[2].labels.insert(specs[2].labels.end(), {"s", r(w - 1 - k)});
    specs[3].labels.insert(specs[3].labels.end(), {r(w - 1 - k), "s"});
  }
  return specs;
}

RegistryPtr tracking_registry(const BananaShape& shape) {
  require_supported(shape);
  if (shape.is_22()) return make_registry({"r0", "r1", "s0", "s1"});
  std::vector<std::string> names;
  for (int i = 0; i < shape.w; ++i) names.push_back("r" + std::to_string(i));
  names.push_back("s");
  return make_registry(std::move(names));
}

CurveClass curve_class_of(const BananaShape& shape, const Exponents& exps) {
  require_supported(shape);
  const Basis basis = basis_classes(shape);
  if (exps.size() != basis.a.size() + basis.c.size()) {
    throw GeometryError("curve_class_of: exponent length does not match the tracking registry");
  }
  CurveClass cls;
  cls.a.assign(exps.begin(), exps.begin() + static_cast<std::ptrdiff_t>(basis.a.size()));
  cls.b.assign(basis.b.size(), 0);
  cls.b[0] = 1;
  cls.c.assign(exps.begin() + static_cast<std::ptrdiff_t>(basis.a.size()), exps.end());
  return cls;
}

}  // namespace mb::geometry
