#include "multibanana/gvpf.hpp"

#include <array>
#include <set>

#include "multibanana/oracle.hpp"
#include "multibanana/qseries.hpp"

namespace mb::gvpf {

namespace {

using geometry::BananaShape;

MonomialImage var(const Registry& reg, const char* name, int sign = 1) {
  return {sign, reg.unit(name)};
}

MonomialImage product(const Registry& reg, const char* a, const char* b) {
  Exponents e = reg.unit(a);
  e[reg.index(b)] += 1;
  return {1, std::move(e)};
}

}  // namespace

TruncatedSeries pf_22(int order) {
  const RegistryPtr reg = geometry::tracking_registry({2, 2});
  const Exponents Q = reg->parse_monomial("r0*r1*s0*s1");
  return build_to_order(order, [&](int work) {
    auto phi = [&](const MonomialImage& p) { return qseries::jacobi_phi_of(reg, Q, p, work); };
    const TruncatedSeries num =
        phi(var(*reg, "r0")) * phi(var(*reg, "s0")) * phi(var(*reg, "r1")) * phi(var(*reg, "s1"));
    const TruncatedSeries den = phi(product(*reg, "r0", "s0")) * phi(product(*reg, "r1", "s1"));
    return sqrt_unit(num * invert_unit(den)).scaled(2);
  });
}

TruncatedSeries pf_22_theta(int order) {
  const RegistryPtr reg = geometry::tracking_registry({2, 2});
  const Exponents Q = reg->parse_monomial("r0*r1*s0*s1");
  const std::array<MonomialImage, 4> num_args{var(*reg, "r0", -1), var(*reg, "s0", -1),
                                              var(*reg, "r1", -1), var(*reg, "s1", -1)};
  const std::array<MonomialImage, 2> den_args{product(*reg, "r0", "s0"), product(*reg, "r1", "s1")};

  PrefactorLedger ledger;
  const TruncatedSeries value = build_to_order(order, [&](int work) {
    ledger = PrefactorLedger{};
    TruncatedSeries num = TruncatedSeries::one(reg, work);
    for (const auto& p : num_args) {
      qseries::ReducedTheta th = qseries::theta1_of(reg, Q, p, work);
      num *= th.series;
      ledger *= th.ledger;
    }
    TruncatedSeries den = TruncatedSeries::one(reg, work);
    for (const auto& p : den_args) {
      qseries::ReducedTheta th = qseries::theta1_of(reg, Q, p, work);
      den *= th.series;
      ledger *= th.ledger.inverse();
    }
    qseries::ReducedEta eta = qseries::eta_of(reg, Q, work);
    ledger *= eta.ledger.pow(-6);
    return num * invert_unit(den) * pow(invert_unit(eta.series), 6);
  });

  const auto mono = ledger.as_monomial(*reg);
  if (!mono || mono->exps != reg->zero()) {
    throw SeriesError("pf_22_theta: prefactors leave " + to_string(ledger));
  }
  return oracle::behrend_twist(value.scaled(-2 * mono->sign));
}

TruncatedSeries pf_1w(int w, int order) {
  if (w < 1) throw SeriesError("pf_1w: w must be positive");
  const RegistryPtr reg = geometry::tracking_registry({1, w});
  const std::size_t s = reg->index("s");
  Exponents Q(reg->size(), 1);
  Q[s] = w;
  const MonomialImage s_image{1, reg->unit("s")};

  auto R = [&](int a, int b) {
    Exponents e = reg->zero();
    for (int j = a; j <= b; ++j) {
      e[static_cast<std::size_t>(j % w)] += 1;
      e[s] += 1;
    }
    return MonomialImage{1, std::move(e)};
  };

  return build_to_order(order, [&](int work) {
    const TruncatedSeries head = qseries::jacobi_phi_of(reg, Q, s_image, work).times_monomial(reg->unit("s"));
    TruncatedSeries sum(reg, work);
    for (int i = 0; i < w; ++i) {
      TruncatedSeries term = TruncatedSeries::one(reg, work);
      for (int k = i; k <= i + w - 2; ++k) term *= qseries::elliptic_genus_at(reg, Q, s_image, R(i, k), work);
      sum += term;
    }
    return head * sum;
  });
}

TruncatedSeries partition_function(const BananaShape& shape, int order) {
  if (shape.is_22()) return pf_22(order);
  if (shape.v == 1 && shape.w >= 1) return pf_1w(shape.w, order);
  throw geometry::GeometryError("no closed form for shape " + shape.name());
}

CrossCheckReport cross_check(const BananaShape& shape, int order) {
  const TruncatedSeries closed = partition_function(shape, order);
  const TruncatedSeries oracle = oracle::behrend_twist(oracle::naive_pf(shape, order));

  CrossCheckReport report;
  report.shape = shape;
  report.order = order;
  std::set<Exponents> support;
  for (const auto& [e, c] : closed.terms()) support.insert(e);
  for (const auto& [e, c] : oracle.terms()) support.insert(e);
  report.terms_compared = support.size();
  report.first_difference = first_difference(closed, oracle);
  report.passed = !report.first_difference && closed.order() >= order && oracle.order() >= order;
  if (report.first_difference) {
    report.closed_form_value = closed.coefficient(*report.first_difference);
    report.oracle_value = oracle.coefficient(*report.first_difference);
  }
  return report;
}

GVTable gv_table(const BananaShape& shape, int order) {
  const TruncatedSeries pf = partition_function(shape, order);
  GVTable table;
  table.shape = shape;
  table.order = order;
  table.registry = pf.registry_ptr();
  for (const auto& [e, c] : pf.graded_terms()) {
    table.entries.push_back({geometry::curve_class_of(shape, e), e, c});
  }
  return table;
}

}  // namespace mb::gvpf
