// Acceptance suite: one PASS/FAIL line per criterion, with timing.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <string>

#include "multibanana/gvpf.hpp"
#include "multibanana/oracle.hpp"
#include "multibanana/qseries.hpp"

using namespace mb;
using geometry::BananaShape;

namespace {

int failures = 0;

struct Outcome {
  bool passed;
  std::string detail;
};

void criterion(const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome r{false, ""};
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_s <= 0 || secs < limit_s;
  const bool ok = r.passed && in_time;
  if (!ok) ++failures;
  std::cout << (ok ? "PASS " : "FAIL ") << name << "  [" << secs << " s";
  if (limit_s > 0) std::cout << " / limit " << limit_s << " s";
  std::cout << "]";
  if (!r.detail.empty()) std::cout << "  " << r.detail;
  if (!in_time) std::cout << "  (over time limit)";
  std::cout << '\n';
}

Outcome coefficient_is(const TruncatedSeries& s, const char* mono, long expected) {
  const BigInt got = s.coefficient(s.registry().parse_monomial(mono));
  return {got == expected, std::string(mono) + ": expected " + std::to_string(expected) + ", got " + got.get_str()};
}

std::string capture(const std::string& command) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) return {};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  return out;
}

bool nonnegative_support(const TruncatedSeries& s) {
  for (const auto& [e, c] : s.terms()) {
    for (int x : e) {
      if (x < 0) return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  std::cout.setf(std::ios::fixed);
  std::cout.precision(3);

  criterion("1 identity suite to q-order 12", 10, [] {
    std::string detail;
    bool all = true;
    for (const auto& r : qseries::check_identities(12)) {
      all = all && r.passed && r.order >= 12;
      detail += r.name + (r.passed ? "=ok " : "=diff ");
    }
    return Outcome{all, detail};
  });

  criterion("2 elliptic genus: y=1 gives 1, t<->1/t symmetry, q-order 8", 10, [] {
    const auto reg = qseries::elliptic_registry();
    const int order = 2 * 8;
    const auto ell = qseries::elliptic_genus_c2(8);
    const std::array<MonomialImage, 3> y1{MonomialImage{1, reg->unit("q")}, MonomialImage{1, reg->zero()},
                                          MonomialImage{1, reg->unit("t")}};
    const bool collapse = substitute_monomials(ell, reg, y1) == TruncatedSeries::one(reg, order);
    const auto flipped =
        qseries::elliptic_genus_at(reg, reg->unit("q"), {1, reg->unit("y")}, {1, reg->unit("t", -1)}, order);
    const bool sym = flipped == ell;
    return Outcome{collapse && sym, std::string("y=1 ") + (collapse ? "ok" : "diff") + ", t<->1/t " +
                                        (sym ? "ok" : "diff")};
  });

  criterion("3 oracle = closed form for 1x1, 1x2, 1x3, 2x2 at degree 8", 120, [] {
    bool all = true;
    std::string detail;
    for (const BananaShape shape : {BananaShape{1, 1}, BananaShape{1, 2}, BananaShape{1, 3}, BananaShape{2, 2}}) {
      const auto r = gvpf::cross_check(shape, 8);
      all = all && r.passed;
      detail += shape.name() + (r.passed ? "=ok(" + std::to_string(r.terms_compared) + " terms) " : "=diff ");
    }
    return Outcome{all, detail};
  });

  criterion("4 pf_22 = pf_22_theta at degree 8", 30, [] {
    return Outcome{gvpf::pf_22(8) == gvpf::pf_22_theta(8), ""};
  });

  criterion("5 pf_1w(1, 10) = s phi(r s, s)", 0, [] {
    const auto pf = gvpf::pf_1w(1, 10);
    const auto reg = pf.registry_ptr();
    const auto ref = qseries::jacobi_phi_product_at(reg, reg->parse_monomial("r0*s"), {1, reg->unit("s")}, 11)
                         .times_monomial(reg->unit("s"));
    return Outcome{ref.order() >= 10 && agree(pf, ref), ""};
  });

  const auto pf22 = gvpf::pf_22(8);
  const auto oracle22 = oracle::behrend_twist(oracle::naive_pf({2, 2}, 8));
  const auto pf11 = gvpf::pf_1w(1, 8);
  criterion("6a pf_22 constant = 2", 0, [&] { return coefficient_is(pf22, "1", 2); });
  criterion("6b pf_22 coeff(r0) = -2", 0, [&] { return coefficient_is(pf22, "r0", -2); });
  criterion("6c pf_22 coeff(r0 s0) = 4", 0, [&] {
    Outcome r = coefficient_is(pf22, "r0*s0", 4);
    r.detail += ", oracle gives " + oracle22.coefficient(pf22.registry().parse_monomial("r0*s0")).get_str();
    return r;
  });
  criterion("6d pf_1w(1) coeff(1) = 1", 0, [&] { return coefficient_is(pf11, "1", 1); });
  criterion("6e pf_1w(1) coeff(s) = -2", 0, [&] { return coefficient_is(pf11, "s", -2); });
  criterion("6f pf_1w(1) coeff(r) = -2", 0, [&] { return coefficient_is(pf11, "r0", -2); });
  criterion("6g pf_1w(1) coeff(r s) = 8", 0, [&] { return coefficient_is(pf11, "r0*s", 8); });
  criterion("6h count_distinct_odd_conjugate(0..6) = 1,1,1,2,3,4,5", 0, [] {
    const std::array<std::uint64_t, 7> expected{1, 1, 1, 2, 3, 4, 5};
    std::string got;
    bool ok = true;
    for (int n = 0; n <= 6; ++n) {
      const auto c = oracle::count_distinct_odd_conjugate(n);
      ok = ok && c == expected[static_cast<std::size_t>(n)];
      got += std::to_string(c) + (n < 6 ? "," : "");
    }
    return Outcome{ok, "got " + got};
  });

  criterion("7 nonnegative support, nonnegative naive counts, pf_1w constant = w", 0, [&] {
    bool ok = nonnegative_support(pf22);
    for (int w = 1; w <= 3; ++w) {
      const auto pf = gvpf::pf_1w(w, 8);
      ok = ok && nonnegative_support(pf) && pf.coefficient(pf.registry().zero()) == w;
      for (const auto& [e, c] : oracle::naive_pf({1, w}, 8).terms()) ok = ok && c >= 0;
    }
    for (const auto& [e, c] : oracle::naive_pf({2, 2}, 8).terms()) ok = ok && c >= 0;
    return Outcome{ok, ""};
  });

  criterion("8 CLI determinism and JSON round trip", 0, [] {
    const std::string cmd = std::string(GVBANANA_PATH) + " compute --shape 2x2 --order 6";
    const std::string a = capture(cmd);
    const std::string b = capture(cmd);
    const bool same = !a.empty() && a == b;
    const bool round_trip = same && nlohmann::ordered_json::parse(a).dump(2) + "\n" == a;
    return Outcome{same && round_trip, std::string("identical ") + (same ? "yes" : "no") + ", round trip " +
                                           (round_trip ? "yes" : "no")};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion line(s) failed")
            << '\n';
  return failures == 0 ? 0 : 1;
}
