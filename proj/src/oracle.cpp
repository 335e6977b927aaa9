#include "multibanana/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace mb::oracle {

namespace {

// m(n) for n = 1..order, as exponent vectors.
std::vector<Exponents> label_monomials(const geometry::BranchSpec& spec, const Registry& registry,
                                       int order) {
  if (spec.labels.empty()) throw SeriesError("branch spec '" + spec.name + "' has no labels");
  std::vector<Exponents> m(static_cast<std::size_t>(std::max(order, 0)) + 1, registry.zero());
  for (int n = 1; n <= order; ++n) {
    m[static_cast<std::size_t>(n)] = m[static_cast<std::size_t>(n - 1)];
    const auto& label = spec.labels[static_cast<std::size_t>(n - 1) % spec.labels.size()];
    m[static_cast<std::size_t>(n)][registry.index(label)] += 1;
  }
  return m;
}

void check_degrees(const std::vector<Exponents>& m, const Registry& registry) {
  for (std::size_t n = 1; n < m.size(); ++n) {
    if (registry.degree(m[n]) != static_cast<int>(n)) {
      throw SeriesError("branch labels must be degree-1 variables");
    }
  }
}

}  // namespace

Partition conjugate(const Partition& parts) {
  Partition out;
  if (parts.empty()) return out;
  out.assign(static_cast<std::size_t>(parts.front()), 0);
  for (int p : parts) {
    for (int i = 0; i < p; ++i) ++out[static_cast<std::size_t>(i)];
  }
  return out;
}

bool has_distinct_odd_parts(const Partition& parts) {
  std::vector<int> seen;
  for (int p : parts) {
    if (p % 2 == 0) continue;
    if (std::find(seen.begin(), seen.end(), p) != seen.end()) return false;
    seen.push_back(p);
  }
  return true;
}

bool is_branch_partition(const Partition& parts) { return has_distinct_odd_parts(conjugate(parts)); }

bool satisfies_local_rule(const Partition& parts) {
  for (std::size_t j = 0; j < parts.size(); j += 2) {
    const int next = j + 1 < parts.size() ? parts[j + 1] : 0;
    if (parts[j] - next > 1) return false;
  }
  return true;
}

std::vector<Partition> branch_partitions(int max_size) {
  std::vector<Partition> out;
  Partition current;
  std::function<void(int, int)> grow = [&](int remaining, int largest) {
    if (is_branch_partition(current)) out.push_back(current);
    for (int p = std::min(largest, remaining); p >= 1; --p) {
      current.push_back(p);
      grow(remaining - p, p);
      current.pop_back();
    }
  };
  if (max_size >= 0) grow(max_size, max_size);
  return out;
}

std::uint64_t count_distinct_odd_conjugate(int n) {
  std::uint64_t count = 0;
  for (const auto& p : branch_partitions(n)) {
    int size = 0;
    for (int x : p) size += x;
    if (size == n) ++count;
  }
  return count;
}

TruncatedSeries branch_series(const geometry::BranchSpec& spec, RegistryPtr registry, int order) {
  const auto m = label_monomials(spec, *registry, order);
  check_degrees(m, *registry);
  std::map<Exponents, BigInt> acc;
  for (const auto& parts : branch_partitions(order)) {
    // parts[j] is the multiplicity of the (j+1)-th edge
    Exponents e = registry->zero();
    for (std::size_t j = 0; j < parts.size(); ++j) {
      const auto& label = spec.labels[j % spec.labels.size()];
      e[registry->index(label)] += parts[j];
    }
    acc[e] += 1;
  }
  std::vector<TruncatedSeries::Term> terms(acc.begin(), acc.end());
  return TruncatedSeries::from_terms(std::move(registry), terms, order);
}

TruncatedSeries branch_series_product(const geometry::BranchSpec& spec, RegistryPtr registry,
                                      int order) {
  const auto m = label_monomials(spec, *registry, order);
  check_degrees(m, *registry);
  const Exponents zero = registry->zero();
  TruncatedSeries acc = TruncatedSeries::one(registry, order);
  for (int n = 1; n <= order; ++n) {
    const Exponents& mn = m[static_cast<std::size_t>(n)];
    if (n % 2 == 1) {
      const std::vector<TruncatedSeries::Term> f{{zero, 1}, {mn, 1}};
      acc *= TruncatedSeries::from_terms(registry, f, order);
    } else {
      const std::vector<TruncatedSeries::Term> f{{zero, 1}, {mn, -1}};
      acc *= invert_unit(TruncatedSeries::from_terms(registry, f, order));
    }
  }
  return acc.truncated(order);
}

TruncatedSeries location_series(const geometry::BananaShape& shape, int location, int order) {
  const RegistryPtr reg = geometry::tracking_registry(shape);
  TruncatedSeries acc = TruncatedSeries::one(reg, order);
  for (const auto& spec : geometry::branch_specs(shape, location)) acc *= branch_series(spec, reg, order);
  return acc;
}

TruncatedSeries naive_pf(const geometry::BananaShape& shape, int order) {
  TruncatedSeries total(geometry::tracking_registry(shape), order);
  for (const auto& loc : geometry::b_locations(shape)) total += location_series(shape, loc.index, order);
  return total;
}

TruncatedSeries behrend_twist(const TruncatedSeries& series) {
  const Registry& reg = series.registry();
  std::vector<MonomialImage> images;
  for (std::size_t v = 0; v < reg.size(); ++v) {
    Exponents e = reg.zero();
    e[v] = 1;
    images.push_back({-1, std::move(e)});
  }
  return substitute_monomials(series, series.registry_ptr(), images);
}

}  // namespace mb::oracle
