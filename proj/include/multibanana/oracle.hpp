#pragma once

// Brute-force naive partition function: enumerate the inside thickenings of
// every branch and weight each configuration by its edge labels.

#include <cstdint>
#include <vector>

#include "multibanana/geometry.hpp"
#include "multibanana/series.hpp"

namespace mb::oracle {

using Partition = std::vector<int>;  // weakly decreasing, positive

Partition conjugate(const Partition& parts);
/// All odd parts of `parts` are pairwise distinct.
bool has_distinct_odd_parts(const Partition& parts);
/// The branch constraint, checked on the conjugate.
bool is_branch_partition(const Partition& parts);
/// Equivalent local rule: lambda_j - lambda_{j+1} <= 1 at every odd
/// position j (1-indexed), with lambda past the end taken as 0.
bool satisfies_local_rule(const Partition& parts);

/// Every weakly decreasing partition of total size <= max_size satisfying
/// is_branch_partition.
std::vector<Partition> branch_partitions(int max_size);

std::uint64_t count_distinct_odd_conjugate(int n);

/// Sum over branch partitions lambda of prod_j labels[j]^{lambda_j}: the
/// (j+1)-th edge from the B edge carries multiplicity lambda_j.
TruncatedSeries branch_series(const geometry::BranchSpec& spec, RegistryPtr registry, int order);
/// prod_{n odd} (1 + m(n)) prod_{n even} 1 / (1 - m(n)), m(n) the product
/// of the first n labels.
TruncatedSeries branch_series_product(const geometry::BranchSpec& spec, RegistryPtr registry, int order);

/// Product of the four branch series at one B location.
TruncatedSeries location_series(const geometry::BananaShape& shape, int location, int order);

/// Sum over B locations; series over tracking_registry(shape).
TruncatedSeries naive_pf(const geometry::BananaShape& shape, int order);

/// Every variable x -> -x.
TruncatedSeries behrend_twist(const TruncatedSeries& series);

}  // namespace mb::oracle
