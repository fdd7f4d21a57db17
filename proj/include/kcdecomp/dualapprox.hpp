#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "kcdecomp/binpack.hpp"

namespace kcdecomp {

using Rational = boost::rational<std::int64_t>;

/// Parses "P/Q" or "P". Throws ParameterError on malformed input.
Rational parse_rational(std::string_view text);

/// Throws ParameterError unless 0 < eps <= 1.
void check_epsilon(const Rational& eps);

/// Whether load <= (1 + eps) * c, evaluated exactly.
bool within_enlarged(Weight load, Weight c, const Rational& eps);

struct ScaledItem {
  int index = 0;      // into the original weights
  Weight scaled = 0;  // largest w' with w' * eps^2 c / 2 <= w
};

struct ScaledInstance {
  Rational epsilon;
  Weight c_prime = 0;  // floor(2 / eps^2)
  std::vector<ScaledItem> scaled_items;  // items heavier than eps*c
  std::vector<int> small_items;          // items of weight at most eps*c
};

ScaledInstance scale_items(const BinPackingInstance& inst, const Rational& eps);

struct DualResult {
  // Packing into k bins of capacity (1 + eps) c; nullopt means the items
  // provably do not fit into k bins of capacity c.
  std::optional<PackingCertificate> certificate;

  bool yes() const { return certificate.has_value(); }
};

DualResult dual_decide(const BinPackingInstance& inst, const Rational& eps);

}  // namespace kcdecomp
