#pragma once

// Sparse truncated multivariate Laurent series with arbitrary-precision
// integer coefficients.
//
// A series is attached to a Registry: an ordered list of variable names, each
// carrying a non-negative integer grading weight.  The weighted total degree
// of a monomial is sum(weight[v] * exp[v]).  Every series records an `order`
// N: the coefficients of all monomials of weighted degree <= N are exact.
// Terms above N are never stored and never reported.
//
// Weight-0 variables are allowed so that bivariate functions such as
// phi(q, p) can be graded by the q-degree alone; each weighted-degree slice
// must still be a finite Laurent polynomial.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mb {

using BigInt = mpz_class;
using Exponents = std::vector<int>;

class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Registry {
 public:
  /// `weights` defaults to 1 for every variable.
  explicit Registry(std::vector<std::string> names, std::vector<int> weights = {});

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  int weight(std::size_t i) const { return weights_.at(i); }
  const std::vector<int>& weights() const { return weights_; }

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index(std::string_view name) const;

  int degree(const Exponents& exps) const;
  Exponents zero() const { return Exponents(names_.size(), 0); }
  Exponents unit(std::string_view name, int power = 1) const;
  /// Parses a product of variables such as "r0*s0^2*r1^-1"; "1" is the empty product.
  Exponents parse_monomial(std::string_view text) const;

  bool operator==(const Registry&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> weights_;
};

using RegistryPtr = std::shared_ptr<const Registry>;

RegistryPtr make_registry(std::vector<std::string> names, std::vector<int> weights = {});

/// Structural growth bound used to decide how far a substitution can be
/// trusted.  Asserts, for every term of the exact (untruncated) series:
///   - exponents of positive-weight variables are non-negative, and
///   - sum over weight-0 variables of |exp| <= slope * degree + offset.
/// phi(q, p) and the reduced theta satisfy it with slope 1, offset 1.
struct SupportBound {
  int slope = 0;
  int offset = 0;
  bool operator==(const SupportBound&) const = default;
};

/// Image of one source variable under substitute_monomials: sign * x^exps.
struct MonomialImage {
  int sign = 1;
  Exponents exps;
};

class TruncatedSeries {
 public:
  using TermMap = std::map<Exponents, BigInt>;
  using Term = std::pair<Exponents, BigInt>;

  /// The zero series, exact through `order`.
  TruncatedSeries(RegistryPtr registry, int order);

  static TruncatedSeries monomial(RegistryPtr registry, const Exponents& exps, const BigInt& coeff,
                                  int order);
  static TruncatedSeries one(RegistryPtr registry, int order);
  /// Builds from explicit terms; every term must lie within `order`.
  static TruncatedSeries from_terms(RegistryPtr registry, std::span<const Term> terms, int order);

  const Registry& registry() const { return *registry_; }
  const RegistryPtr& registry_ptr() const { return registry_; }
  int order() const { return order_; }
  /// Lower bound on the degree of every term of the exact series; order()+1
  /// when nothing is known to be non-zero.
  int floor() const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  /// Terms in canonical graded-lex order: ascending degree, then descending
  /// lexicographic exponent vector within a degree.
  std::vector<Term> graded_terms() const;

  BigInt coefficient(const Exponents& exps) const;

  TruncatedSeries truncated(int order) const;
  TruncatedSeries scaled(const BigInt& factor) const;
  TruncatedSeries times_monomial(const Exponents& exps, int sign = 1) const;
  /// Keeps only the terms whose exponent of variable `var` equals `power`.
  TruncatedSeries slice(std::size_t var, int power) const;

  const std::optional<SupportBound>& support_bound() const { return bound_; }
  TruncatedSeries with_support_bound(SupportBound bound) const;

  TruncatedSeries operator-() const;
  TruncatedSeries& operator+=(const TruncatedSeries& other);
  TruncatedSeries& operator-=(const TruncatedSeries& other);
  TruncatedSeries& operator*=(const TruncatedSeries& other);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

  /// Identical registry, order and terms.
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  TruncatedSeries(RegistryPtr registry, int order, TermMap terms);
  void check_compatible(const TruncatedSeries& other) const;

  RegistryPtr registry_;
  int order_;
  TermMap terms_;
  std::optional<SupportBound> bound_;
};

/// Non-negative integer power by repeated squaring; order propagates as in mul.
TruncatedSeries pow(const TruncatedSeries& a, int exponent);

/// Multiplicative inverse.  The lowest-degree part of `a` must be a single
/// monomial with coefficient +1 or -1.  Result order: a.order() - 2 * a.floor().
TruncatedSeries invert_unit(const TruncatedSeries& a);

/// Square root with positive leading coefficient, solved grade by grade.  The
/// lowest-degree part must be a single monomial with even exponents and a
/// perfect-square coefficient; every later coefficient must divide exactly.
/// Result order: a.order() - a.floor() / 2.
TruncatedSeries sqrt_unit(const TruncatedSeries& a);

/// Ring homomorphism x_v -> sign_v * target^{exps_v}.  When every image has
/// the same weighted degree as its source variable the order is preserved.
/// Otherwise the source must carry a SupportBound and the result order is
/// the largest N such that no untruncated source term can land at degree <= N.
TruncatedSeries substitute_monomials(const TruncatedSeries& a, RegistryPtr target,
                                     std::span<const MonomialImage> images);

/// Order the substitution above would produce, without performing it.
int substituted_order(const TruncatedSeries& a, const Registry& target,
                      std::span<const MonomialImage> images);

/// First monomial (graded-lex) where a and b differ, comparing through
/// min(a.order(), b.order()).
std::optional<Exponents> first_difference(const TruncatedSeries& a, const TruncatedSeries& b);

inline bool agree(const TruncatedSeries& a, const TruncatedSeries& b) {
  return !first_difference(a, b).has_value();
}

/// Evaluates `build(work)` for increasing working orders until the result is
/// exact through `order`, then truncates to it.
template <typename Build>
TruncatedSeries build_to_order(int order, Build&& build, int max_extra = 64) {
  for (int work = order; work <= order + max_extra;) {
    TruncatedSeries s = build(work);
    if (s.order() >= order) return s.truncated(order);
    work += std::max(1, order - s.order());
  }
  throw SeriesError("build_to_order: could not reach the requested order");
}

std::string monomial_to_string(const Registry& registry, const Exponents& exps);
std::string to_string(const TruncatedSeries& a);

}  // namespace mb
