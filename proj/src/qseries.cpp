#include "multibanana/qseries.hpp"

#include <array>
#include <cstdlib>
#include <map>
#include <mutex>

namespace mb::qseries {

namespace {

int degree_of(const Registry& reg, const Exponents& e) { return reg.degree(e); }

int floor_div(int num, int den) {
  int q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

Exponents scaled_exps(const Exponents& e, int k) {
  Exponents out(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) out[i] = e[i] * k;
  return out;
}

Exponents sum_exps(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

// 1 - sign * x^e, exact through `work`.
TruncatedSeries one_minus(const RegistryPtr& reg, int sign, const Exponents& e, int work) {
  std::vector<TruncatedSeries::Term> terms;
  if (work >= 0) terms.emplace_back(reg->zero(), 1);
  if (reg->degree(e) <= work) terms.emplace_back(e, sign < 0 ? 1 : -1);
  return TruncatedSeries::from_terms(reg, terms, work);
}

void require_positive(const Registry& reg, const Exponents& q, const char* op) {
  if (q.size() != reg.size()) throw SeriesError(std::string(op) + ": q image length mismatch");
  if (reg.degree(q) <= 0) throw SeriesError(std::string(op) + ": q image must have positive degree");
}

// Multiplies the product factors prod_{m>=1} f_m(work) and closes with the
// tail bound: every omitted factor is 1 + O(deg >= tail).
template <typename Factor>
TruncatedSeries product_with_tail(const RegistryPtr& reg, TruncatedSeries acc, int work,
                                  int per_m, int shift, Factor&& factor) {
  int m = 1;
  for (; static_cast<long long>(m) * per_m - shift <= work; ++m) acc *= factor(m);
  const int tail = m * per_m - shift;
  return acc * TruncatedSeries::one(reg, tail - 1);
}

// Smallest source order whose substitution is exact through `order`.
int source_order_for(const RegistryPtr& source, SupportBound bound, const Registry& target,
                     std::span<const MonomialImage> images, int order) {
  for (int n = 0; n <= 100000; ++n) {
    TruncatedSeries probe = TruncatedSeries(source, n).with_support_bound(bound);
    if (substituted_order(probe, target, images) >= order) return n;
  }
  throw SeriesError("substitution cannot reach the requested order");
}

std::mutex cache_mutex;
std::map<int, TruncatedSeries> phi_cache;
std::map<int, TruncatedSeries> theta_cache;

MonomialImage times(const MonomialImage& a, const MonomialImage& b) {
  return {a.sign * b.sign, sum_exps(a.exps, b.exps)};
}

MonomialImage inverse(const MonomialImage& a) { return {a.sign, scaled_exps(a.exps, -1)}; }

}  // namespace

RegistryPtr q_registry() {
  static const RegistryPtr reg = make_registry({"q"});
  return reg;
}

RegistryPtr qp_registry() {
  static const RegistryPtr reg = make_registry({"q", "p"}, {1, 0});
  return reg;
}

RegistryPtr elliptic_registry() {
  static const RegistryPtr reg = make_registry({"q", "y", "t"}, {2, 0, 1});
  return reg;
}

// ---------------------------------------------------------------- products

TruncatedSeries eta_product_at(RegistryPtr registry, const Exponents& q, int order) {
  require_positive(*registry, q, "eta_product_at");
  const int dq = degree_of(*registry, q);
  return build_to_order(order, [&](int work) {
    return product_with_tail(registry, TruncatedSeries::one(registry, work), work, dq, 0,
                             [&](int m) { return one_minus(registry, 1, scaled_exps(q, m), work); });
  });
}

TruncatedSeries theta_product_at(RegistryPtr registry, const Exponents& q, const MonomialImage& p,
                                 int order) {
  require_positive(*registry, q, "theta_product_at");
  const int dq = degree_of(*registry, q);
  const int dp = std::abs(degree_of(*registry, p.exps));
  const Exponents p_inv = scaled_exps(p.exps, -1);
  return build_to_order(order, [&](int work) {
    // (1 - p) prod_m (1 - q^m)(1 - q^m p)(1 - q^m / p)
    TruncatedSeries acc = one_minus(registry, p.sign, p.exps, work);
    return product_with_tail(registry, std::move(acc), work, dq, dp, [&](int m) {
      const Exponents qm = scaled_exps(q, m);
      return one_minus(registry, 1, qm, work) * one_minus(registry, p.sign, sum_exps(qm, p.exps), work) *
             one_minus(registry, p.sign, sum_exps(qm, p_inv), work);
    });
  });
}

TruncatedSeries jacobi_phi_product_at(RegistryPtr registry, const Exponents& q,
                                      const MonomialImage& p, int order) {
  require_positive(*registry, q, "jacobi_phi_product_at");
  const int dq = degree_of(*registry, q);
  const int dp = std::abs(degree_of(*registry, p.exps));
  const Exponents p_inv = scaled_exps(p.exps, -1);
  return build_to_order(order, [&](int work) {
    // p^{-1} (1 - p)^2 prod_m (1 - q^m p)^2 (1 - q^m / p)^2 / (1 - q^m)^4
    TruncatedSeries acc = pow(one_minus(registry, p.sign, p.exps, work), 2).times_monomial(p_inv, p.sign);
    return product_with_tail(registry, std::move(acc), work, dq, dp, [&](int m) {
      const Exponents qm = scaled_exps(q, m);
      TruncatedSeries num = one_minus(registry, p.sign, sum_exps(qm, p.exps), work) *
                            one_minus(registry, p.sign, sum_exps(qm, p_inv), work);
      return pow(num, 2) * pow(invert_unit(one_minus(registry, 1, qm, work)), 4);
    });
  });
}

// ---------------------------------------------------------------- bivariate

ReducedEta eta_reduced(int n) {
  const RegistryPtr reg = q_registry();
  return {eta_product_at(reg, reg->unit("q"), n).with_support_bound({0, 0}),
          PrefactorLedger::variable("q", Rational(1, 24))};
}

ReducedTheta theta1_reduced(int n) {
  TruncatedSeries series = [&] {
    std::lock_guard lock(cache_mutex);
    if (auto it = theta_cache.find(n); it != theta_cache.end()) return it->second;
    const RegistryPtr reg = qp_registry();
    TruncatedSeries s =
        theta_product_at(reg, reg->unit("q"), {1, reg->unit("p")}, n).with_support_bound(kJacobiSupport);
    theta_cache.emplace(n, s);
    return s;
  }();
  PrefactorLedger ledger = PrefactorLedger::power_of_i(-1) *
                           PrefactorLedger::variable("q", Rational(1, 8)) *
                           PrefactorLedger::variable("p", Rational(-1, 2));
  return {std::move(series), std::move(ledger)};
}

TruncatedSeries jacobi_phi(int n) {
  std::lock_guard lock(cache_mutex);
  if (auto it = phi_cache.find(n); it != phi_cache.end()) return it->second;
  const RegistryPtr reg = qp_registry();
  TruncatedSeries s =
      jacobi_phi_product_at(reg, reg->unit("q"), {1, reg->unit("p")}, n).with_support_bound(kJacobiSupport);
  phi_cache.emplace(n, s);
  return s;
}

// ---------------------------------------------------------------- substitutions

TruncatedSeries jacobi_phi_of(RegistryPtr target, const Exponents& q, const MonomialImage& p,
                              int order) {
  require_positive(*target, q, "jacobi_phi_of");
  const int dq = degree_of(*target, q);
  const int dp = degree_of(*target, p.exps);
  // Reduce the argument with phi(q, q^k p') = q^{k^2} (q^k p')^{-2k} phi(q, p')
  // so that |deg p'| <= deg q / 2; the expansion in p' then converges.
  const int k = floor_div(2 * dp + dq, 2 * dq);
  const MonomialImage reduced{p.sign, sum_exps(p.exps, scaled_exps(q, -k))};
  const Exponents prefactor = sum_exps(scaled_exps(q, k * k), scaled_exps(p.exps, -2 * k));
  const int shift = degree_of(*target, prefactor);

  const std::array<MonomialImage, 2> images{MonomialImage{1, q}, reduced};
  const int n = source_order_for(qp_registry(), kJacobiSupport, *target, images, order - shift);
  TruncatedSeries s = substitute_monomials(jacobi_phi(n), target, images);
  return s.times_monomial(prefactor).truncated(order);
}

ReducedTheta theta1_of(RegistryPtr target, const Exponents& q, const MonomialImage& p, int order) {
  require_positive(*target, q, "theta1_of");
  const std::array<MonomialImage, 2> images{MonomialImage{1, q}, p};
  const int n = source_order_for(qp_registry(), kJacobiSupport, *target, images, order);
  ReducedTheta theta = theta1_reduced(n);
  return {substitute_monomials(theta.series, target, images).truncated(order),
          theta.ledger.substituted(*qp_registry(), *target, images)};
}

ReducedEta eta_of(RegistryPtr target, const Exponents& q, int order) {
  require_positive(*target, q, "eta_of");
  const std::array<MonomialImage, 1> images{MonomialImage{1, q}};
  const int n = source_order_for(q_registry(), {0, 0}, *target, images, order);
  ReducedEta eta = eta_reduced(n);
  return {substitute_monomials(eta.series, target, images).truncated(order),
          eta.ledger.substituted(*q_registry(), *target, images)};
}

// ---------------------------------------------------------------- elliptic genus

TruncatedSeries elliptic_genus_at(RegistryPtr target, const Exponents& q, const MonomialImage& y,
                                  const MonomialImage& t, int order) {
  const MonomialImage yt = times(y, t);
  const MonomialImage t_over_y = times(inverse(y), t);
  return build_to_order(order, [&](int work) {
    TruncatedSeries num = jacobi_phi_of(target, q, yt, work) * jacobi_phi_of(target, q, t_over_y, work);
    return sqrt_unit(num) * invert_unit(jacobi_phi_of(target, q, t, work));
  });
}

TruncatedSeries elliptic_genus_theta_at(RegistryPtr target, const Exponents& q,
                                        const MonomialImage& y, const MonomialImage& t, int order) {
  const std::array<MonomialImage, 4> args{times(y, t), times(y, inverse(t)), t, inverse(t)};
  const PrefactorLedger base = theta1_reduced(0).ledger;
  std::array<PrefactorLedger, 4> ledgers;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::array<MonomialImage, 2> images{MonomialImage{1, q}, args[i]};
    ledgers[i] = base.substituted(*qp_registry(), *target, images);
  }
  const PrefactorLedger ledger = ledgers[0] * ledgers[1] * (ledgers[2] * ledgers[3]).inverse();
  const auto mono = ledger.as_monomial(*target);
  if (!mono) {
    throw SeriesError("elliptic_genus_theta_at: prefactors do not cancel (" + to_string(ledger) + ")");
  }
  const int shift = degree_of(*target, mono->exps);
  const TruncatedSeries value = build_to_order(order - shift, [&](int work) {
    auto th = [&](std::size_t i) { return theta1_of(target, q, args[i], work).series; };
    return th(0) * th(1) * invert_unit(th(2) * th(3));
  });
  return value.times_monomial(mono->exps, mono->sign);
}

TruncatedSeries elliptic_genus_c2(int q_order) {
  const RegistryPtr reg = elliptic_registry();
  return elliptic_genus_at(reg, reg->unit("q"), {1, reg->unit("y")}, {1, reg->unit("t")}, 2 * q_order);
}

// ---------------------------------------------------------------- identities

std::vector<IdentityResult> check_identities(int n) {
  const RegistryPtr reg = qp_registry();
  const Exponents q = reg->unit("q");
  const Exponents p = reg->unit("p");
  const Exponents p_inv = reg->unit("p", -1);

  const TruncatedSeries phi = jacobi_phi(n);
  const TruncatedSeries theta = theta1_reduced(n).series;
  const std::array<MonomialImage, 1> embed{MonomialImage{1, q}};
  const TruncatedSeries eta = substitute_monomials(eta_reduced(n).series, reg, embed);

  std::vector<IdentityResult> out;
  auto record = [&](std::string name, const TruncatedSeries& lhs, const TruncatedSeries& rhs) {
    IdentityResult r;
    r.name = std::move(name);
    r.order = std::min(lhs.order(), rhs.order());
    r.first_difference = first_difference(lhs, rhs);
    r.passed = r.order >= n && !r.first_difference;
    out.push_back(std::move(r));
  };

  record("eta6_phi", pow(eta, 6) * phi, pow(theta, 2).times_monomial(p_inv));

  const Exponents q_over_p = sum_exps(q, p_inv);
  record("quasi_period", phi.times_monomial(p),
         jacobi_phi_product_at(reg, q, {1, q_over_p}, n - 1).times_monomial(q_over_p));

  const std::array<MonomialImage, 2> invert{MonomialImage{1, q}, MonomialImage{1, p_inv}};
  record("inversion", phi, substitute_monomials(phi, reg, invert));
  return out;
}

}  // namespace mb::qseries
