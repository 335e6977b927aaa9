#include "multibanana/ledger.hpp"

#include <sstream>

namespace mb {

PrefactorLedger PrefactorLedger::power_of_i(int k) {
  PrefactorLedger l;
  l.i_power_ = k;
  l.normalize();
  return l;
}

PrefactorLedger PrefactorLedger::variable(const std::string& name, const Rational& exponent) {
  PrefactorLedger l;
  l.exps_[name] = exponent;
  l.normalize();
  return l;
}

Rational PrefactorLedger::exponent(const std::string& name) const {
  auto it = exps_.find(name);
  return it == exps_.end() ? Rational(0) : it->second;
}

void PrefactorLedger::normalize() {
  i_power_ = ((i_power_ % 4) + 4) % 4;
  std::erase_if(exps_, [](auto& kv) {
    kv.second.canonicalize();
    return kv.second == 0;
  });
}

PrefactorLedger& PrefactorLedger::operator*=(const PrefactorLedger& other) {
  i_power_ += other.i_power_;
  for (const auto& [name, e] : other.exps_) exps_[name] += e;
  normalize();
  return *this;
}

PrefactorLedger PrefactorLedger::inverse() const { return pow(-1); }

PrefactorLedger PrefactorLedger::pow(int k) const {
  PrefactorLedger l;
  l.i_power_ = i_power_ * k;
  for (const auto& [name, e] : exps_) l.exps_[name] = e * k;
  l.normalize();
  return l;
}

PrefactorLedger PrefactorLedger::substituted(const Registry& source, const Registry& target,
                                             std::span<const MonomialImage> images) const {
  if (images.size() != source.size()) {
    throw SeriesError("PrefactorLedger::substituted: need one image per source variable");
  }
  PrefactorLedger out;
  out.i_power_ = i_power_;
  for (const auto& [name, e] : exps_) {
    const auto v = source.find(name);
    if (!v) throw SeriesError("PrefactorLedger::substituted: unknown variable " + name);
    const MonomialImage& img = images[*v];
    for (std::size_t k = 0; k < img.exps.size(); ++k) {
      if (img.exps[k] != 0) out.exps_[target.name(k)] += e * img.exps[k];
    }
    if (img.sign < 0) {
      const Rational twice = e * 2;
      if (twice.get_den() != 1) {
        throw SeriesError("PrefactorLedger::substituted: (-1)^" + e.get_str() +
                          " has no fixed branch");
      }
      out.i_power_ += static_cast<int>(mpz_fdiv_ui(twice.get_num().get_mpz_t(), 4));
    }
  }
  out.normalize();
  return out;
}

std::optional<PrefactorLedger::Monomial> PrefactorLedger::as_monomial(
    const Registry& registry) const {
  if (i_power_ % 2 != 0) return std::nullopt;
  Monomial m{i_power_ == 2 ? -1 : 1, registry.zero()};
  for (const auto& [name, e] : exps_) {
    const auto v = registry.find(name);
    if (!v || e.get_den() != 1 || !e.get_num().fits_sint_p()) return std::nullopt;
    m.exps[*v] = static_cast<int>(e.get_num().get_si());
  }
  return m;
}

std::string to_string(const PrefactorLedger& ledger) {
  std::ostringstream os;
  os << "i^" << ledger.i_power();
  for (const auto& [name, e] : ledger.exponents()) os << ' ' << name << "^(" << e.get_str() << ')';
  return os.str();
}

}  // namespace mb
