#include "multibanana/series.hpp"

#include <gmp.h>

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>
#include <tuple>

namespace mb {

namespace {

// Graded-lex: ascending degree, then descending lexicographic exponents.
struct GradedLess {
  const Registry* registry;
  bool operator()(const Exponents& a, const Exponents& b) const {
    const int da = registry->degree(a);
    const int db = registry->degree(b);
    if (da != db) return da < db;
    return a > b;
  }
};

Exponents add_exps(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Exponents sub_exps(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

int ceil_div(long long num, long long den) {
  // den > 0
  long long q = num / den;
  if (num % den != 0 && num > 0) ++q;
  return static_cast<int>(q);
}

struct Leading {
  Exponents exps;
  BigInt coeff;
  int degree;
};

Leading unique_leading(const TruncatedSeries& a, const char* op) {
  if (a.is_zero()) throw SeriesError(std::string(op) + ": series has no known non-zero term");
  const Registry& reg = a.registry();
  int min_deg = std::numeric_limits<int>::max();
  for (const auto& [e, c] : a.terms()) min_deg = std::min(min_deg, reg.degree(e));
  Leading lead;
  int count = 0;
  for (const auto& [e, c] : a.terms()) {
    if (reg.degree(e) == min_deg) {
      ++count;
      lead = Leading{e, c, min_deg};
    }
  }
  if (count != 1) {
    throw SeriesError(std::string(op) + ": lowest-degree part is not a single monomial");
  }
  return lead;
}

// Groups the terms of `a` by degree relative to the leading monomial.
std::vector<std::vector<TruncatedSeries::Term>> relative_slices(const TruncatedSeries& a,
                                                                const Leading& lead) {
  const int rel_order = a.order() - lead.degree;
  std::vector<std::vector<TruncatedSeries::Term>> slices(static_cast<std::size_t>(rel_order) + 1);
  for (const auto& [e, c] : a.terms()) {
    const int d = a.registry().degree(e) - lead.degree;
    slices[static_cast<std::size_t>(d)].emplace_back(sub_exps(e, lead.exps), c);
  }
  return slices;
}

}  // namespace

// ---------------------------------------------------------------- Registry

Registry::Registry(std::vector<std::string> names, std::vector<int> weights)
    : names_(std::move(names)), weights_(std::move(weights)) {
  if (weights_.empty()) weights_.assign(names_.size(), 1);
  if (weights_.size() != names_.size()) {
    throw SeriesError("Registry: weight count does not match variable count");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw SeriesError("Registry: empty variable name");
    if (weights_[i] < 0) throw SeriesError("Registry: negative weight for " + names_[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) throw SeriesError("Registry: duplicate variable " + names_[i]);
    }
  }
}

std::optional<std::size_t> Registry::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Registry::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw SeriesError("Registry: unknown variable '" + std::string(name) + "'");
}

int Registry::degree(const Exponents& exps) const {
  int d = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) d += weights_[i] * exps[i];
  return d;
}

Exponents Registry::unit(std::string_view name, int power) const {
  Exponents e = zero();
  e[index(name)] = power;
  return e;
}

Exponents Registry::parse_monomial(std::string_view text) const {
  Exponents e = zero();
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty() || text == "1") return e;
  while (!text.empty()) {
    const auto star = text.find('*');
    std::string_view factor = trim(text.substr(0, star));
    text = star == std::string_view::npos ? std::string_view{} : text.substr(star + 1);
    int power = 1;
    if (const auto caret = factor.find('^'); caret != std::string_view::npos) {
      std::string_view digits = trim(factor.substr(caret + 1));
      factor = trim(factor.substr(0, caret));
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), power);
      if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw SeriesError("parse_monomial: bad exponent in '" + std::string(factor) + "'");
      }
    }
    e[index(factor)] += power;
  }
  return e;
}

RegistryPtr make_registry(std::vector<std::string> names, std::vector<int> weights) {
  return std::make_shared<const Registry>(std::move(names), std::move(weights));
}

// ---------------------------------------------------------------- TruncatedSeries

TruncatedSeries::TruncatedSeries(RegistryPtr registry, int order)
    : registry_(std::move(registry)), order_(order) {
  if (!registry_) throw SeriesError("TruncatedSeries: null registry");
}

TruncatedSeries::TruncatedSeries(RegistryPtr registry, int order, TermMap terms)
    : registry_(std::move(registry)), order_(order), terms_(std::move(terms)) {}

TruncatedSeries TruncatedSeries::monomial(RegistryPtr registry, const Exponents& exps,
                                          const BigInt& coeff, int order) {
  if (exps.size() != registry->size()) throw SeriesError("monomial: exponent length mismatch");
  if (registry->degree(exps) > order) {
    throw SeriesError("monomial: order " + std::to_string(order) + " is below the monomial degree " +
                      std::to_string(registry->degree(exps)));
  }
  TruncatedSeries s(std::move(registry), order);
  if (coeff != 0) s.terms_.emplace(exps, coeff);
  return s;
}

TruncatedSeries TruncatedSeries::one(RegistryPtr registry, int order) {
  Exponents zero = registry->zero();
  if (order < 0) return TruncatedSeries(std::move(registry), order);
  return monomial(std::move(registry), zero, 1, order);
}

TruncatedSeries TruncatedSeries::from_terms(RegistryPtr registry, std::span<const Term> terms,
                                            int order) {
  TruncatedSeries s(std::move(registry), order);
  for (const auto& [e, c] : terms) {
    if (e.size() != s.registry_->size()) throw SeriesError("from_terms: exponent length mismatch");
    if (s.registry_->degree(e) > order) throw SeriesError("from_terms: term beyond order");
    s.terms_[e] += c;
  }
  std::erase_if(s.terms_, [](const auto& kv) { return kv.second == 0; });
  return s;
}

int TruncatedSeries::floor() const {
  if (terms_.empty()) return order_ + 1;
  int f = std::numeric_limits<int>::max();
  for (const auto& [e, c] : terms_) f = std::min(f, registry_->degree(e));
  return f;
}

std::vector<TruncatedSeries::Term> TruncatedSeries::graded_terms() const {
  std::vector<Term> out(terms_.begin(), terms_.end());
  GradedLess less{registry_.get()};
  std::sort(out.begin(), out.end(),
            [&](const Term& a, const Term& b) { return less(a.first, b.first); });
  return out;
}

BigInt TruncatedSeries::coefficient(const Exponents& exps) const {
  if (exps.size() != registry_->size()) throw SeriesError("coefficient: exponent length mismatch");
  if (registry_->degree(exps) > order_) {
    throw SeriesError("coefficient: monomial " + monomial_to_string(*registry_, exps) +
                      " lies beyond the guaranteed order " + std::to_string(order_));
  }
  auto it = terms_.find(exps);
  return it == terms_.end() ? BigInt(0) : it->second;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
  if (order > order_) {
    throw SeriesError("truncated: requested order " + std::to_string(order) +
                      " exceeds the known order " + std::to_string(order_));
  }
  TruncatedSeries s(registry_, order);
  for (const auto& [e, c] : terms_) {
    if (registry_->degree(e) <= order) s.terms_.emplace_hint(s.terms_.end(), e, c);
  }
  s.bound_ = bound_;
  return s;
}

TruncatedSeries TruncatedSeries::scaled(const BigInt& factor) const {
  TruncatedSeries s(registry_, order_);
  if (factor == 0) return s;
  for (const auto& [e, c] : terms_) s.terms_.emplace_hint(s.terms_.end(), e, c * factor);
  s.bound_ = bound_;
  return s;
}

TruncatedSeries TruncatedSeries::times_monomial(const Exponents& exps, int sign) const {
  if (exps.size() != registry_->size()) throw SeriesError("times_monomial: length mismatch");
  TruncatedSeries s(registry_, order_ + registry_->degree(exps));
  for (const auto& [e, c] : terms_) {
    s.terms_.emplace(add_exps(e, exps), sign < 0 ? BigInt(-c) : c);
  }
  return s;
}

TruncatedSeries TruncatedSeries::slice(std::size_t var, int power) const {
  TruncatedSeries s(registry_, order_);
  for (const auto& [e, c] : terms_) {
    if (e.at(var) == power) s.terms_.emplace_hint(s.terms_.end(), e, c);
  }
  return s;
}

TruncatedSeries TruncatedSeries::with_support_bound(SupportBound bound) const {
  TruncatedSeries s = *this;
  s.bound_ = bound;
  return s;
}

TruncatedSeries TruncatedSeries::operator-() const { return scaled(-1); }

void TruncatedSeries::check_compatible(const TruncatedSeries& other) const {
  if (registry_ != other.registry_ && !(*registry_ == *other.registry_)) {
    throw SeriesError("registry mismatch between operands");
  }
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
  check_compatible(other);
  const int order = std::min(order_, other.order_);
  if (order < order_) *this = truncated(order);
  order_ = order;
  for (const auto& [e, c] : other.terms_) {
    if (registry_->degree(e) > order) continue;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  if (bound_ && other.bound_) {
    bound_ = SupportBound{std::max(bound_->slope, other.bound_->slope),
                          std::max(bound_->offset, other.bound_->offset)};
  } else {
    bound_.reset();
  }
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) {
  return *this += -other;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.check_compatible(b);
  const Registry& reg = *a.registry_;
  const int order = std::min(a.order_ + b.floor(), b.order_ + a.floor());

  struct Entry {
    const Exponents* exps;
    const BigInt* coeff;
    int degree;
  };
  auto entries = [&](const TruncatedSeries& s) {
    std::vector<Entry> v;
    v.reserve(s.terms_.size());
    for (const auto& [e, c] : s.terms_) v.push_back({&e, &c, reg.degree(e)});
    std::sort(v.begin(), v.end(), [](const Entry& x, const Entry& y) { return x.degree < y.degree; });
    return v;
  };
  const auto ea = entries(a);
  const auto eb = entries(b);

  TruncatedSeries::TermMap out;
  Exponents sum(reg.size());
  for (const Entry& x : ea) {
    const int limit = order - x.degree;
    for (const Entry& y : eb) {
      if (y.degree > limit) break;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = (*x.exps)[i] + (*y.exps)[i];
      auto [it, inserted] = out.try_emplace(sum);
      mpz_addmul(it->second.get_mpz_t(), x.coeff->get_mpz_t(), y.coeff->get_mpz_t());
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });

  TruncatedSeries result(a.registry_, order, std::move(out));
  if (a.bound_ && b.bound_) {
    result.bound_ = SupportBound{std::max(a.bound_->slope, b.bound_->slope),
                                 a.bound_->offset + b.bound_->offset};
  }
  return result;
}

TruncatedSeries& TruncatedSeries::operator*=(const TruncatedSeries& other) {
  *this = *this * other;
  return *this;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return *a.registry_ == *b.registry_ && a.order_ == b.order_ && a.terms_ == b.terms_;
}

// ---------------------------------------------------------------- algorithms

TruncatedSeries pow(const TruncatedSeries& a, int exponent) {
  if (exponent < 0) throw SeriesError("pow: negative exponent; use invert_unit");
  if (exponent == 0) return TruncatedSeries::one(a.registry_ptr(), a.order());
  std::optional<TruncatedSeries> result;
  TruncatedSeries base = a;
  while (true) {
    if (exponent & 1) result = result ? *result * base : base;
    exponent >>= 1;
    if (exponent == 0) break;
    base = base * base;
  }
  return *result;
}

TruncatedSeries invert_unit(const TruncatedSeries& a) {
  const Leading lead = unique_leading(a, "invert_unit");
  if (lead.coeff != 1 && lead.coeff != -1) {
    throw SeriesError("invert_unit: leading coefficient " + lead.coeff.get_str() + " is not a unit");
  }
  const int rel_order = a.order() - lead.degree;
  const auto u = relative_slices(a, lead);  // u[0] holds the leading term only

  // a = c0 * L * (1 + U), U = sum_{d>=1} u[d] / c0 ; v = 1 / (1 + U).
  const BigInt& c0 = lead.coeff;
  std::vector<TruncatedSeries::TermMap> v(static_cast<std::size_t>(rel_order) + 1);
  v[0].emplace(a.registry().zero(), 1);
  Exponents sum(a.registry().size());
  for (int d = 1; d <= rel_order; ++d) {
    auto& acc = v[static_cast<std::size_t>(d)];
    for (int j = 1; j <= d; ++j) {
      for (const auto& [ue, uc] : u[static_cast<std::size_t>(j)]) {
        for (const auto& [ve, vc] : v[static_cast<std::size_t>(d - j)]) {
          for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ue[i] + ve[i];
          auto [it, inserted] = acc.try_emplace(sum);
          mpz_submul(it->second.get_mpz_t(), uc.get_mpz_t(), vc.get_mpz_t());
        }
      }
    }
    // divide by c0 (= multiply, since c0 = +-1)
    if (c0 < 0) {
      for (auto& [e, c] : acc) c = -c;
    }
    std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
  }

  std::vector<TruncatedSeries::Term> terms;
  for (const auto& slice : v) {
    for (const auto& [e, c] : slice) terms.emplace_back(sub_exps(e, lead.exps), c0 < 0 ? BigInt(-c) : c);
  }
  return TruncatedSeries::from_terms(a.registry_ptr(), terms, rel_order - lead.degree);
}

TruncatedSeries sqrt_unit(const TruncatedSeries& a) {
  const Leading lead = unique_leading(a, "sqrt_unit");
  for (int e : lead.exps) {
    if (e % 2 != 0) throw SeriesError("sqrt_unit: leading monomial has an odd exponent");
  }
  if (lead.coeff <= 0 || mpz_perfect_square_p(lead.coeff.get_mpz_t()) == 0) {
    throw SeriesError("sqrt_unit: leading coefficient " + lead.coeff.get_str() +
                      " is not a positive perfect square");
  }
  BigInt beta;
  mpz_sqrt(beta.get_mpz_t(), lead.coeff.get_mpz_t());
  const BigInt two_beta = 2 * beta;

  const int rel_order = a.order() - lead.degree;
  const auto slices = relative_slices(a, lead);
  std::vector<TruncatedSeries::TermMap> b(static_cast<std::size_t>(rel_order) + 1);
  b[0].emplace(a.registry().zero(), beta);
  Exponents sum(a.registry().size());
  for (int d = 1; d <= rel_order; ++d) {
    TruncatedSeries::TermMap acc;
    for (const auto& [e, c] : slices[static_cast<std::size_t>(d)]) acc[e] += c;
    for (int i = 1; i < d; ++i) {
      for (const auto& [xe, xc] : b[static_cast<std::size_t>(i)]) {
        for (const auto& [ye, yc] : b[static_cast<std::size_t>(d - i)]) {
          for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = xe[k] + ye[k];
          auto [it, inserted] = acc.try_emplace(sum);
          mpz_submul(it->second.get_mpz_t(), xc.get_mpz_t(), yc.get_mpz_t());
        }
      }
    }
    auto& out = b[static_cast<std::size_t>(d)];
    for (auto& [e, c] : acc) {
      if (c == 0) continue;
      if (mpz_divisible_p(c.get_mpz_t(), two_beta.get_mpz_t()) == 0) {
        throw SeriesError("sqrt_unit: non-integer coefficient at relative degree " +
                          std::to_string(d));
      }
      BigInt qt;
      mpz_divexact(qt.get_mpz_t(), c.get_mpz_t(), two_beta.get_mpz_t());
      out.emplace(e, std::move(qt));
    }
  }

  Exponents half(lead.exps.size());
  for (std::size_t i = 0; i < half.size(); ++i) half[i] = lead.exps[i] / 2;
  std::vector<TruncatedSeries::Term> terms;
  for (const auto& slice : b) {
    for (const auto& [e, c] : slice) terms.emplace_back(add_exps(e, half), c);
  }
  return TruncatedSeries::from_terms(a.registry_ptr(), terms, a.order() - lead.degree / 2);
}

int substituted_order(const TruncatedSeries& a, const Registry& target,
                      std::span<const MonomialImage> images) {
  const Registry& source = a.registry();
  if (images.size() != source.size()) {
    throw SeriesError("substitute_monomials: need one image per source variable");
  }
  bool preserving = true;
  std::vector<int> degrees(images.size());
  for (std::size_t v = 0; v < images.size(); ++v) {
    if (images[v].exps.size() != target.size()) {
      throw SeriesError("substitute_monomials: image length does not match target registry");
    }
    if (images[v].sign != 1 && images[v].sign != -1) {
      throw SeriesError("substitute_monomials: image sign must be +1 or -1");
    }
    degrees[v] = target.degree(images[v].exps);
    if (degrees[v] != source.weight(v)) preserving = false;
  }
  if (preserving) return a.order();

  if (!a.support_bound()) {
    throw SeriesError(
        "substitute_monomials: degree-changing substitution needs a SupportBound on the source");
  }
  // rho = min deg(image)/weight over positive-weight variables,
  // kappa = max |deg(image)| over weight-0 variables.
  long long rho_num = 0;
  long long rho_den = 0;
  long long kappa = 0;
  for (std::size_t v = 0; v < images.size(); ++v) {
    const int w = source.weight(v);
    if (w > 0) {
      if (rho_den == 0 || static_cast<long long>(degrees[v]) * rho_den < rho_num * w) {
        rho_num = degrees[v];
        rho_den = w;
      }
    } else {
      kappa = std::max<long long>(kappa, std::abs(degrees[v]));
    }
  }
  if (rho_den == 0) {
    throw SeriesError("substitute_monomials: source has no positive-weight variable");
  }
  const SupportBound bound = *a.support_bound();
  const long long growth = rho_num - kappa * bound.slope * rho_den;
  if (growth <= 0) {
    throw SeriesError("substitute_monomials: substitution cannot guarantee any result order");
  }
  // An unseen source term has degree W >= order + 1, and its image has
  // degree >= (rho - kappa * slope) * W - kappa * offset.
  const long long lowest_unseen =
      growth * (static_cast<long long>(a.order()) + 1) - kappa * bound.offset * rho_den;
  return ceil_div(lowest_unseen, rho_den) - 1;
}

TruncatedSeries substitute_monomials(const TruncatedSeries& a, RegistryPtr target,
                                     std::span<const MonomialImage> images) {
  const int order = substituted_order(a, *target, images);
  std::vector<TruncatedSeries::Term> terms;
  terms.reserve(a.size());
  for (const auto& [e, c] : a.terms()) {
    Exponents img = target->zero();
    int sign = 1;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      for (std::size_t k = 0; k < img.size(); ++k) img[k] += e[v] * images[v].exps[k];
      if (images[v].sign < 0 && (e[v] % 2 != 0)) sign = -sign;
    }
    if (target->degree(img) > order) continue;
    terms.emplace_back(std::move(img), sign < 0 ? BigInt(-c) : c);
  }
  return TruncatedSeries::from_terms(std::move(target), terms, order);
}

std::optional<Exponents> first_difference(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (!(a.registry() == b.registry())) throw SeriesError("first_difference: registry mismatch");
  const Registry& reg = a.registry();
  const int order = std::min(a.order(), b.order());
  std::vector<Exponents> diffs;
  for (const auto& [e, c] : a.terms()) {
    if (reg.degree(e) > order) continue;
    auto it = b.terms().find(e);
    if (it == b.terms().end() || it->second != c) diffs.push_back(e);
  }
  for (const auto& [e, c] : b.terms()) {
    if (reg.degree(e) > order) continue;
    if (!a.terms().contains(e)) diffs.push_back(e);
  }
  if (diffs.empty()) return std::nullopt;
  return *std::min_element(diffs.begin(), diffs.end(), GradedLess{&reg});
}

std::string monomial_to_string(const Registry& registry, const Exponents& exps) {
  std::string out;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += registry.name(i);
    if (exps[i] != 1) out += '^' + std::to_string(exps[i]);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const TruncatedSeries& a) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : a.graded_terms()) {
    const bool unit = monomial_to_string(a.registry(), e) == "1";
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (unit) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << monomial_to_string(a.registry(), e);
    }
    first = false;
  }
  if (first) os << '0';
  os << " + O(deg>" << a.order() << ')';
  return os.str();
}

}  // namespace mb
