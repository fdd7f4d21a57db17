#include "kcdecomp/dualapprox.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>
#include <numeric>

#include "kcdecomp/model.hpp"

namespace kcdecomp {

namespace {

using Wide = __int128;

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParameterError("malformed integer '" + std::string(text) + "'");
  return value;
}

Weight narrow(Wide value) {
  if (value > std::numeric_limits<Weight>::max())
    throw ParameterError("scaled value overflows");
  return static_cast<Weight>(value);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::int64_t num = parse_int(text.substr(0, slash));
  const std::int64_t den = slash == std::string_view::npos ? 1 : parse_int(text.substr(slash + 1));
  if (den == 0) throw ParameterError("zero denominator");
  return Rational(num, den);
}

void check_epsilon(const Rational& eps) {
  if (eps <= 0 || eps > 1) throw ParameterError("epsilon must lie in (0, 1]");
}

bool within_enlarged(Weight load, Weight c, const Rational& eps) {
  // load <= c (q + p) / q
  return Wide(load) * eps.denominator() <= Wide(c) * (eps.denominator() + eps.numerator());
}

ScaledInstance scale_items(const BinPackingInstance& inst, const Rational& eps) {
  check_epsilon(eps);
  inst.validate();
  const Wide p = eps.numerator();
  const Wide q = eps.denominator();

  ScaledInstance out;
  out.epsilon = eps;
  out.c_prime = narrow(2 * q * q / (p * p));
  for (std::size_t i = 0; i < inst.weights.size(); ++i) {
    const Wide w = inst.weights[i];
    if (w * q <= p * inst.c) {
      out.small_items.push_back(static_cast<int>(i));
    } else {
      // w' * (p^2 c) / (2 q^2) <= w
      out.scaled_items.push_back({static_cast<int>(i), narrow(2 * w * q * q / (p * p * inst.c))});
    }
  }
  return out;
}

DualResult dual_decide(const BinPackingInstance& inst, const Rational& eps) {
  check_epsilon(eps);
  inst.validate();
  DualResult result;
  Wide total = 0;
  for (Weight w : inst.weights) total += w;
  if (total > Wide(inst.k) * inst.c) return result;

  const ScaledInstance scaled = scale_items(inst, eps);
  BinPackingInstance reduced;
  reduced.k = inst.k;
  reduced.c = scaled.c_prime;
  for (const ScaledItem& item : scaled.scaled_items) reduced.weights.push_back(item.scaled);
  const FptResult exact = solve_fpt(reduced);
  if (!exact.feasible()) return result;

  PackingCertificate cert;
  cert.bins.resize(static_cast<std::size_t>(inst.k));
  std::vector<Weight> loads(cert.bins.size(), 0);
  for (std::size_t b = 0; b < exact.certificate->bins.size(); ++b) {
    for (int scaled_index : exact.certificate->bins[b]) {
      const int item = scaled.scaled_items[scaled_index].index;
      cert.bins[b].push_back(item);
      loads[b] += inst.weights[item];
    }
  }

  std::vector<int> small = scaled.small_items;
  std::stable_sort(small.begin(), small.end(),
                   [&](int a, int b) { return inst.weights[a] > inst.weights[b]; });
  for (int item : small) {
    std::size_t target = loads.size();
    for (std::size_t b = 0; b < loads.size(); ++b) {
      if (loads[b] > inst.c) continue;
      if (target == loads.size() || loads[b] < loads[target]) target = b;
    }
    // total weight <= kc keeps some bin at or below c
    if (target == loads.size()) throw std::logic_error("no bin with load at most c");
    cert.bins[target].push_back(item);
    loads[target] += inst.weights[item];
  }
  for (auto& bin : cert.bins) std::sort(bin.begin(), bin.end());
  result.certificate = std::move(cert);
  return result;
}

}  // namespace kcdecomp
