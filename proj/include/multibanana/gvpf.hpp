#pragma once

// Closed-form generating functions for L_{2,2} and L_{1,w}, and the
// comparison against the brute-force oracle.

#include <optional>
#include <vector>

#include "multibanana/geometry.hpp"
#include "multibanana/series.hpp"

namespace mb::gvpf {

/// 2 sqrt(phi(r0) phi(s0) phi(r1) phi(s1) / (phi(r0 s0) phi(r1 s1))), Q = r0 r1 s0 s1.
TruncatedSeries pf_22(int order);

/// The same function from theta and eta:
///   twist( -2 eta(Q)^-6 theta(-r0) theta(-s0) theta(-r1) theta(-s1) / (theta(r0 s0) theta(r1 s1)) ).
/// Throws if the prefactor ledger does not reduce to a sign.
TruncatedSeries pf_22_theta(int order);

/// s phi(Q, s) sum_i prod_{k=i}^{i+w-2} Ell_{Q,s}(R_{i;k}), Q = prod_i r_i s,
/// R_{a;b} = prod_{j=a}^{b} r_j s with indices mod w.
TruncatedSeries pf_1w(int w, int order);

/// Dispatches on the shape.
TruncatedSeries partition_function(const geometry::BananaShape& shape, int order);

struct CrossCheckReport {
  geometry::BananaShape shape;
  int order = 0;
  bool passed = false;
  std::size_t terms_compared = 0;
  std::optional<Exponents> first_difference;
  BigInt closed_form_value;  // at first_difference
  BigInt oracle_value;       // at first_difference, after the twist
};

/// partition_function(shape) against behrend_twist(naive_pf(shape)).
CrossCheckReport cross_check(const geometry::BananaShape& shape, int order);

struct GVEntry {
  geometry::CurveClass curve_class;
  Exponents exponents;
  BigInt value;
};

struct GVTable {
  geometry::BananaShape shape;
  int order = 0;
  RegistryPtr registry;
  std::vector<GVEntry> entries;  // graded-lex
};

GVTable gv_table(const geometry::BananaShape& shape, int order);

}  // namespace mb::gvpf
