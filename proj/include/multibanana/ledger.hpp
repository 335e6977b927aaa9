#pragma once

// Exact bookkeeping for the fractional prefactors of theta and eta
// (powers of i, q^{1/8}, p^{-1/2}, q^{1/24}).  Series never hold fractional
// exponents; the ledger rides alongside and must collapse to an integral
// monomial (or be trivial) before a result is exposed.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <span>
#include <string>

#include "multibanana/series.hpp"

namespace mb {

using Rational = mpq_class;

class PrefactorLedger {
 public:
  PrefactorLedger() = default;

  static PrefactorLedger power_of_i(int k);
  static PrefactorLedger variable(const std::string& name, const Rational& exponent);

  int i_power() const { return i_power_; }
  Rational exponent(const std::string& name) const;
  Rational q_exp() const { return exponent("q"); }
  const std::map<std::string, Rational>& exponents() const { return exps_; }

  bool is_trivial() const { return i_power_ == 0 && exps_.empty(); }

  PrefactorLedger& operator*=(const PrefactorLedger& other);
  friend PrefactorLedger operator*(PrefactorLedger a, const PrefactorLedger& b) { return a *= b; }
  PrefactorLedger inverse() const;
  PrefactorLedger pow(int k) const;

  /// Pushes the ledger through a monomial substitution.  Negative images use
  /// the global branch (-1)^{1/2} = i, so (-x)^e = i^{2e} x^e; exponents
  /// with denominators other than 1 or 2 on a negated variable are rejected.
  PrefactorLedger substituted(const Registry& source, const Registry& target,
                              std::span<const MonomialImage> images) const;

  /// Sign and integral exponents when the ledger is an honest monomial
  /// (i-power even, all exponents integers, all variables in `registry`).
  struct Monomial {
    int sign;
    Exponents exps;
  };
  std::optional<Monomial> as_monomial(const Registry& registry) const;

  bool operator==(const PrefactorLedger&) const = default;

 private:
  void normalize();

  int i_power_ = 0;  // mod 4
  std::map<std::string, Rational> exps_;
};

std::string to_string(const PrefactorLedger& ledger);

}  // namespace mb
