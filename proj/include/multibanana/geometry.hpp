#pragma once

// Shapes L_{v,w}, their curve classes and the branch label tables.
//
// The fundamental domain is the torus Z_v x Z_w of hexagons.  Hexagon (a,b)
// owns three edges: its right vertical edge V(a,b) (family A), its top edge
// H(a,b) (family B) and its lower-right diagonal D(a,b) (family C).  Each
// hexagon imposes
//   V(a-1,b) + D(a-1,b+1) = V(a,b) + D(a,b)
//   H(a,b)   + D(a-1,b+1) = H(a,b-1) + D(a,b)
// and curve classes are edge sums modulo these relations.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "multibanana/series.hpp"

namespace mb::geometry {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BananaShape {
  int v = 1;
  int w = 1;

  /// Closed forms exist for (1,w) and (2,2).
  bool supported() const { return (v == 1 && w >= 1) || (v == 2 && w == 2); }
  bool is_22() const { return v == 2 && w == 2; }
  /// "2x2", or "1xW" together with w.
  static BananaShape parse(std::string_view shape, int w);
  std::string name() const;
  bool operator==(const BananaShape&) const = default;
};

enum class CurveFamily { A, B, C };

char family_letter(CurveFamily f);

/// Edge A_i, B_i or C_i of the fundamental domain, 0 <= index < v*w.
struct LatticeEdge {
  CurveFamily family;
  int index;
  bool operator==(const LatticeEdge&) const = default;
};

std::string to_string(const LatticeEdge& e);
/// Parses "A2", "C3", ...
LatticeEdge parse_edge(std::string_view text);

/// Coefficients over the reduced basis of A-, B- and C-classes.  Every
/// class covered by the theorems has degree 1 on the first B class.
struct CurveClass {
  std::vector<int> a;
  std::vector<int> b;
  std::vector<int> c;
  bool operator==(const CurveClass&) const = default;
};

std::string to_string(const CurveClass& cls);

struct Basis {
  std::vector<LatticeEdge> a;
  std::vector<LatticeEdge> b;
  std::vector<LatticeEdge> c;
  std::size_t size() const { return a.size() + b.size() + c.size(); }
};

/// (2,2): A0,A1 | B0,B1 | C0,C1.  (1,w): A0..A_{w-1} | B | C.
Basis basis_classes(const BananaShape& shape);

/// Basis expansion of an edge of the fundamental domain.
CurveClass reduce_edge_class(const BananaShape& shape, const LatticeEdge& edge);

/// Hexagon coordinates of a fundamental-domain edge.
std::array<int, 2> hexagon_of(const BananaShape& shape, const LatticeEdge& edge);

struct HexagonRelation {
  // lhs[0] + lhs[1] = rhs[0] + rhs[1]
  std::array<LatticeEdge, 2> lhs;
  std::array<LatticeEdge, 2> rhs;
};

std::vector<HexagonRelation> hexagon_relations(const BananaShape& shape);

/// Periodic labels of one branch; labels[j] tracks the (j+1)-th edge away
/// from the B edge.
struct BranchSpec {
  std::string name;
  std::vector<std::string> labels;
  std::size_t period() const { return labels.size(); }
};

struct BLocation {
  int index;
  LatticeEdge edge;
};

std::vector<BLocation> b_locations(const BananaShape& shape);
std::array<BranchSpec, 4> branch_specs(const BananaShape& shape, int location);

/// (2,2): r0,r1,s0,s1 (r_i tracks A_i, s_j tracks C_j).
/// (1,w): r0..r_{w-1},s (s tracks C).
RegistryPtr tracking_registry(const BananaShape& shape);

/// Curve class of a monomial in the tracking variables plus the first B class.
CurveClass curve_class_of(const BananaShape& shape, const Exponents& exps);

}  // namespace mb::geometry
