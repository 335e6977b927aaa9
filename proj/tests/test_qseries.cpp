#include <doctest.h>

#include <array>
#include <map>

#include "multibanana/qseries.hpp"
#include "support.hpp"

using namespace mb;
using namespace mb::qseries;
using testing::coeff;
using testing::poly;

namespace {

// Dense bivariate polynomials in (q, p) truncated at q-order n, used as an
// independent reference for the product expansions.
struct Dense {
  int n;
  std::map<std::pair<int, int>, BigInt> c;

  Dense operator*(const Dense& o) const {
    Dense out{n, {}};
    for (const auto& [a, x] : c) {
      for (const auto& [b, y] : o.c) {
        if (a.first + b.first <= n) out.c[{a.first + b.first, a.second + b.second}] += x * y;
      }
    }
    return out;
  }
};

Dense dense_one(int n) { return {n, {{{0, 0}, 1}}}; }
Dense dense_binomial(int n, int qe, int pe) {  // 1 - q^qe p^pe
  Dense d = dense_one(n);
  if (qe <= n) d.c[{qe, pe}] -= 1;
  return d;
}
Dense dense_geometric(int n, int m) {  // 1 / (1 - q^m)
  Dense d{n, {}};
  for (int k = 0; k * m <= n; ++k) d.c[{k * m, 0}] = 1;
  return d;
}

TruncatedSeries to_series(const Dense& d) {
  std::vector<TruncatedSeries::Term> t;
  for (const auto& [e, x] : d.c) t.emplace_back(Exponents{e.first, e.second}, x);
  return TruncatedSeries::from_terms(qp_registry(), t, d.n);
}

TruncatedSeries dense_phi(int n) {
  Dense d = dense_one(n);
  d.c = {{{0, -1}, 1}, {{0, 0}, -2}, {{0, 1}, 1}};
  for (int m = 1; m <= n; ++m) {
    for (int r = 0; r < 2; ++r) d = d * dense_binomial(n, m, -1) * dense_binomial(n, m, 1);
    for (int r = 0; r < 4; ++r) d = d * dense_geometric(n, m);
  }
  return to_series(d);
}

bool pentagonal(int k, int& sign) {
  for (int j = 0; j * (3 * j - 1) / 2 <= k; ++j) {
    for (int s : {j, -j}) {
      if (s * (3 * s - 1) / 2 == k) {
        sign = (j % 2 == 0) ? 1 : -1;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("eta_reduced") {
  const auto eta6 = eta_reduced(6);
  const auto reg = q_registry();
  CHECK(eta6.series == poly(reg, {{"1", 1}, {"q", -1}, {"q^2", -1}, {"q^5", 1}}, 6));
  CHECK(eta6.ledger.q_exp() == Rational(1, 24));
  CHECK(coeff(eta_reduced(12).series, "q^7") == 1);

  // Euler's pentagonal number theorem
  const auto eta = eta_reduced(40);
  for (int k = 0; k <= 40; ++k) {
    int sign = 0;
    const BigInt expected = pentagonal(k, sign) ? BigInt(sign) : BigInt(0);
    CHECK(eta.series.coefficient({k}) == expected);
  }
}

TEST_CASE("theta1_reduced") {
  const auto th = theta1_reduced(10);
  const auto reg = qp_registry();
  CHECK(th.series.slice(0, 0) == poly(reg, {{"1", 1}, {"p", -1}}, 10).slice(0, 0));
  CHECK(coeff(th.series, "q*p^-1") == -1);
  CHECK(th.ledger.i_power() == 3);
  CHECK(th.ledger.q_exp() == Rational(1, 8));
  CHECK(th.ledger.exponent("p") == Rational(-1, 2));

  for (const auto& [e, c] : th.series.terms()) CHECK(std::abs(e[1]) <= e[0] + 1);

  // Jacobi triple product: sum_k (-1)^k q^{k(k-1)/2} p^k
  std::vector<TruncatedSeries::Term> t;
  for (int k = -6; k <= 6; ++k) {
    const int qe = k * (k - 1) / 2;
    if (qe <= 10) t.emplace_back(Exponents{qe, k}, BigInt(k % 2 == 0 ? 1 : -1));
  }
  const auto sum_form = TruncatedSeries::from_terms(reg, t, 10);
  CHECK(th.series == sum_form);
}

TEST_CASE("theta oddness: theta~(1/p) = -p^-1 theta~(p)") {
  const auto reg = qp_registry();
  const auto th = theta1_reduced(10).series;
  const std::array<MonomialImage, 2> invert{MonomialImage{1, {1, 0}}, MonomialImage{1, {0, -1}}};
  CHECK(substitute_monomials(th, reg, invert) == -th.times_monomial({0, -1}));
}

TEST_CASE("jacobi_phi") {
  const auto reg = qp_registry();
  const auto phi = jacobi_phi(8);
  CHECK(phi.slice(0, 0) == poly(reg, {{"p^-1", 1}, {"1", -2}, {"p", 1}}, 8).slice(0, 0));
  CHECK(phi.slice(0, 1) ==
        poly(reg, {{"q*p^-2", -2}, {"q*p^-1", 8}, {"q", -12}, {"q*p", 8}, {"q*p^2", -2}}, 8).slice(0, 1));
  CHECK(coeff(phi, "q") == -12);
  CHECK(coeff(phi, "p^-1") == 1);
  CHECK(phi == dense_phi(8));

  // p -> 1 kills every q-order
  const auto q_only = q_registry();
  const std::array<MonomialImage, 2> at_one{MonomialImage{1, {1}}, MonomialImage{1, {0}}};
  const auto at1 = substitute_monomials(phi, q_only, at_one);
  CHECK(at1.is_zero());
  CHECK(at1.order() == 8);

  CHECK(jacobi_phi(12).truncated(8) == phi);
}

TEST_CASE("jacobi_phi_of: substitution and argument reduction") {
  const auto reg = make_registry({"r0", "r1", "s0", "s1"});
  const Exponents Q{1, 1, 1, 1};
  const auto s = jacobi_phi_of(reg, Q, {1, reg->unit("r0")}, 6);
  CHECK(s.coefficient(reg->zero()) == -2);
  CHECK(s.order() == 6);
  CHECK(s == jacobi_phi_product_at(reg, Q, {1, reg->unit("r0")}, 6));

  // arguments of degree >= deg Q go through quasi-periodicity
  const auto r3 = make_registry({"r0", "r1", "r2", "s"});
  const Exponents Q3{1, 1, 1, 3};
  for (const char* arg : {"r0*r1*s^3", "r0*r1*s", "r0*r1*r2*s^4", "s^-1*r0*r1*r2", "r0*s^2"}) {
    CAPTURE(arg);
    const MonomialImage p{1, r3->parse_monomial(arg)};
    CHECK(jacobi_phi_of(r3, Q3, p, 9) == jacobi_phi_product_at(r3, Q3, p, 9));
    const MonomialImage neg{-1, r3->parse_monomial(arg)};
    CHECK(jacobi_phi_of(r3, Q3, neg, 7) == jacobi_phi_product_at(r3, Q3, neg, 7));
  }
}

TEST_CASE("theta1_of and eta_of agree with direct products") {
  const auto reg = make_registry({"r0", "r1", "s0", "s1"});
  const Exponents Q{1, 1, 1, 1};
  const MonomialImage arg{-1, reg->unit("s1")};
  const auto th = theta1_of(reg, Q, arg, 8);
  CHECK(th.series == theta_product_at(reg, Q, arg, 8));
  CHECK(th.ledger.i_power() == 2);  // i^3 * (-1)^{-1/2}
  CHECK(th.ledger.exponent("s1") == Rational(-3, 8));  // p^{-1/2} q^{1/8}
  CHECK(th.ledger.exponent("r0") == Rational(1, 8));

  const auto eta = eta_of(reg, Q, 12);
  CHECK(eta.series == eta_product_at(reg, Q, 12));
  CHECK(eta.ledger.exponent("s0") == Rational(1, 24));
}

TEST_CASE("identity suite") {
  for (int n : {1, 2, 5, 12}) {
    CAPTURE(n);
    const auto results = check_identities(n);
    REQUIRE(results.size() == 3);
    for (const auto& r : results) {
      CAPTURE(r.name);
      CHECK(r.passed);
      CHECK(r.order >= n);
    }
  }
}

TEST_CASE("elliptic genus of C^2") {
  const auto reg = elliptic_registry();
  const int order = 2 * 6;
  const auto ell = elliptic_genus_c2(6);
  CHECK(ell.order() == order);
  CHECK(ell.coefficient(reg->zero()) == 1);

  SUBCASE("sqrt of the numerator leads with t^-1") {
    const Exponents q = reg->unit("q");
    const auto num = jacobi_phi_of(reg, q, {1, reg->parse_monomial("y*t")}, 4) *
                     jacobi_phi_of(reg, q, {1, reg->parse_monomial("y^-1*t")}, 4);
    const auto root = sqrt_unit(num);
    const auto lead = root.graded_terms().front();
    CHECK(lead.first == reg->unit("t", -1));
    CHECK(lead.second == 1);
  }

  SUBCASE("y -> 1 collapses to 1") {
    const std::array<MonomialImage, 3> y1{MonomialImage{1, reg->unit("q")}, MonomialImage{1, reg->zero()},
                                          MonomialImage{1, reg->unit("t")}};
    const auto collapsed = substitute_monomials(ell, reg, y1);
    CHECK(collapsed == TruncatedSeries::one(reg, order));
  }

  SUBCASE("t -> 1/t symmetry") {
    const auto flipped = elliptic_genus_at(reg, reg->unit("q"), {1, reg->unit("y")}, {1, reg->unit("t", -1)}, order);
    CHECK(flipped == ell);
  }

  SUBCASE("q^0 part") {
    const auto q0 = ell.slice(0, 0);
    const auto factor = poly(reg, {{"1", 2}, {"t", -1}, {"t^-1", -1}}, order);
    const auto rhs = poly(reg, {{"y", 1}, {"y^-1", 1}, {"t", -1}, {"t^-1", -1}}, order);
    const auto lhs = q0 * factor;
    CHECK(lhs.order() >= order - 1);
    CHECK(agree(lhs.slice(0, 0), rhs));
  }

  SUBCASE("theta-ratio route") {
    const auto theta_route =
        elliptic_genus_theta_at(reg, reg->unit("q"), {1, reg->unit("y")}, {1, reg->unit("t")}, order);
    CHECK(theta_route == ell);
  }

  SUBCASE("truncation consistency") {
    CHECK(elliptic_genus_c2(8).truncated(order) == ell);
  }
}
