#pragma once

// Theta, eta, the weak Jacobi form phi_{-2,1} and the equivariant elliptic
// genus of C^2 as truncated series.
//
// Bivariate functions live over the registry ("q","p") with weights (1, 0),
// so their order is the q-order and every q^m slice is a Laurent polynomial
// in p with |p-exponent| <= m + 1.  That growth bound (slope 1, offset 1) is
// what lets them be substituted into other registries: mapping q -> Q of
// degree D and p -> M of degree d with D > |d|, a q-order n expansion is
// exact through degree (n + 1)(D - |d|) - |d| - 1.

#include <optional>
#include <string>
#include <vector>

#include "multibanana/ledger.hpp"
#include "multibanana/series.hpp"

namespace mb::qseries {

inline constexpr SupportBound kJacobiSupport{1, 1};

RegistryPtr q_registry();          // ("q")
RegistryPtr qp_registry();         // ("q","p"), weights (1,0)
RegistryPtr elliptic_registry();   // ("q","y","t"), weights (2,0,1)

/// theta_1 = series * ledger, ledger = -i q^{1/8} p^{-1/2}.
struct ReducedTheta {
  TruncatedSeries series;
  PrefactorLedger ledger;
};

/// eta = series * ledger, ledger = q^{1/24}.
struct ReducedEta {
  TruncatedSeries series;
  PrefactorLedger ledger;
};

ReducedEta eta_reduced(int n);
ReducedTheta theta1_reduced(int n);
/// p^{-1}(1-p)^2 prod_m (1-q^m/p)^2 (1-q^m p)^2 / (1-q^m)^4 through q-order n.
TruncatedSeries jacobi_phi(int n);

// Product expansions evaluated directly at monomial arguments.  These need
// only deg(q) > 0 and are used where a termwise substitution would not
// converge (p -> q/p).
TruncatedSeries eta_product_at(RegistryPtr registry, const Exponents& q, int order);
TruncatedSeries theta_product_at(RegistryPtr registry, const Exponents& q, const MonomialImage& p,
                                 int order);
TruncatedSeries jacobi_phi_product_at(RegistryPtr registry, const Exponents& q,
                                      const MonomialImage& p, int order);

// The bivariate expansions pushed through substitute_monomials, with the
// q-order chosen so that the result is exact through `order`.
TruncatedSeries jacobi_phi_of(RegistryPtr target, const Exponents& q, const MonomialImage& p,
                              int order);
ReducedTheta theta1_of(RegistryPtr target, const Exponents& q, const MonomialImage& p, int order);
ReducedEta eta_of(RegistryPtr target, const Exponents& q, int order);

/// sqrt(phi(yt) phi(t/y)) / phi(t), every phi obtained by substitution.
TruncatedSeries elliptic_genus_at(RegistryPtr target, const Exponents& q, const MonomialImage& y,
                                  const MonomialImage& t, int order);
/// theta(yt) theta(y/t) / (theta(t) theta(1/t)); the ledger collapses to y^{-1}.
TruncatedSeries elliptic_genus_theta_at(RegistryPtr target, const Exponents& q,
                                        const MonomialImage& y, const MonomialImage& t, int order);
/// Ell_{q,y}(C^2, t) over elliptic_registry(); complete through weighted
/// degree 2 * q_order, i.e. every q^m t^k with 2m + k <= 2 * q_order.
TruncatedSeries elliptic_genus_c2(int q_order);

struct IdentityResult {
  std::string name;
  bool passed = false;
  int order = 0;
  std::optional<Exponents> first_difference;
};

/// Prefactor-free forms of the phi/theta/eta identities, checked through q-order n:
///   eta6_phi        eta~^6 phi(p)      = p^{-1} theta~(p)^2
///   quasi_period    p phi(p)           = (q/p) phi(q/p)
///   inversion       phi(p)             = phi(1/p)
std::vector<IdentityResult> check_identities(int n);

}  // namespace mb::qseries
