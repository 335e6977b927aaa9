#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "multibanana/series.hpp"

namespace testing {

using mb::BigInt;
using mb::Exponents;
using mb::RegistryPtr;
using mb::TruncatedSeries;

// poly(reg, {{"p^-1", 1}, {"1", -2}, {"p", 1}}, 3)
inline TruncatedSeries poly(const RegistryPtr& reg,
                            std::initializer_list<std::pair<const char*, long>> terms, int order) {
  std::vector<TruncatedSeries::Term> t;
  for (const auto& [mono, c] : terms) t.emplace_back(reg->parse_monomial(mono), BigInt(c));
  return TruncatedSeries::from_terms(reg, t, order);
}

inline BigInt coeff(const TruncatedSeries& s, const char* mono) {
  return s.coefficient(s.registry().parse_monomial(mono));
}

// Random series over a weight-1 registry with exponents in [lo, hi] and
// degree <= order.
inline TruncatedSeries random_series(std::mt19937& rng, const RegistryPtr& reg, int order, int lo,
                                     int hi, int count) {
  std::uniform_int_distribution<int> exp(lo, hi);
  std::uniform_int_distribution<int> val(-5, 5);
  std::vector<TruncatedSeries::Term> t;
  for (int i = 0; i < count; ++i) {
    Exponents e(reg->size());
    for (auto& x : e) x = exp(rng);
    if (reg->degree(e) > order) continue;
    t.emplace_back(e, BigInt(val(rng)));
  }
  return TruncatedSeries::from_terms(reg, t, order);
}

// 1 + (terms of positive degree), all exponents >= 0.
inline TruncatedSeries random_unit(std::mt19937& rng, const RegistryPtr& reg, int order, int count) {
  TruncatedSeries s = random_series(rng, reg, order, 0, 2, count);
  std::vector<TruncatedSeries::Term> t;
  for (const auto& [e, c] : s.terms()) {
    if (reg->degree(e) > 0) t.emplace_back(e, c);
  }
  t.emplace_back(reg->zero(), BigInt(1));
  return TruncatedSeries::from_terms(reg, t, order);
}

}  // namespace testing
