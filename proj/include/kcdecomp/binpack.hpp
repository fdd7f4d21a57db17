#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kcdecomp {

using Weight = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr Weight kMaxCapacity = Weight{1} << 20;
inline constexpr Weight kMaxBins = Weight{1} << 20;

struct BinPackingInstance {
  std::vector<Weight> weights;
  Weight k = 1;  // bins
  Weight c = 1;  // capacity

  /// Throws ParameterError unless k, c and every weight are positive.
  void validate() const;
};

/// Item counts per weight, padded with virtual weight-1 items so the total
/// weight is exactly k*c.
struct MultiplicityVector {
  std::vector<Weight> a;  // a[w-1] = number of items of weight w
  Weight c = 0;
  Weight k = 0;
  Weight padding = 0;
};

/// Multiplicities of one full bin: x[w-1] items of weight w, sum of w*x[w-1] == c.
using Pattern = std::vector<Weight>;
using PatternSet = std::vector<Pattern>;

struct PackingCertificate {
  std::vector<std::vector<int>> bins;  // item indices into the original weights
};

struct ConicalSolution {
  std::vector<int> support;     // pattern indices
  std::vector<Weight> lambdas;  // positive, aligned with support
};

/// nullopt when some weight exceeds c or the total exceeds k*c.
std::optional<MultiplicityVector> normalize(const BinPackingInstance& inst);

/// Number of multisets of positive integers summing to n; p(0) = 1.
BigInt partition_number(int n);

/// All patterns of capacity c, in decreasing lexicographic order of x.
PatternSet enumerate_patterns(int c);

/// Patterns of capacity a.c that fit inside the multiplicities a.a; same order.
PatternSet enumerate_patterns_within(const MultiplicityVector& a);

/// Smallest d(c) such that 2^d exceeds p(0) + p(c) + ... + p(d*c) for every
/// d > d(c). Exact: candidates are checked with big integers up to a horizon
/// past which p(n) < exp(pi*sqrt(2n/3)) makes the inequality permanent.
int compute_support_bound(int c);

/// Exact search for nonnegative lambdas over patterns[support[i]] summing to
/// a.a. Zero coefficients are dropped from the returned solution.
std::optional<ConicalSolution> conical_feasibility(const PatternSet& patterns,
                                                   const std::vector<int>& support,
                                                   const MultiplicityVector& a);

class SupportSearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rewrites the combination over at most target distinct patterns by the
/// equal-subset exchange argument. target defaults to d(c). Throws
/// SupportSearchExhausted when no exchange is found within the budget.
ConicalSolution reduce_support(const ConicalSolution& combination, const PatternSet& patterns,
                               int c, std::optional<int> target = std::nullopt,
                               std::size_t subset_budget = 20'000'000);

/// Upper bound on the support size the exact solver ever needs for this
/// capacity and bin count: min(d(c), p(c), k).
int effective_support_cap(int c, Weight k);

enum class SupportStrategy {
  // One exact search over every admissible pattern decides feasibility, then
  // supports are scanned by increasing size for the smallest certificate.
  full_support_first,
  // Only the subset scan, capped at effective_support_cap.
  subsets_only,
};

struct FptOptions {
  SupportStrategy strategy = SupportStrategy::full_support_first;
  std::size_t subset_check_budget = 20'000;  // full_support_first only
};

struct FptResult {
  std::optional<PackingCertificate> certificate;  // nullopt == infeasible
  std::optional<ConicalSolution> solution;

  bool feasible() const { return certificate.has_value(); }
};

/// Exact bin packing decision, fixed-parameter in the capacity.
FptResult solve_fpt(const BinPackingInstance& inst, const FptOptions& options = {});

/// Per-bin weight sums; throws ParameterError if the certificate is not a
/// partition of the items into k bins.
std::vector<Weight> bin_loads(const BinPackingInstance& inst, const PackingCertificate& cert);

/// Partition of all items into at most k bins with every load <= capacity.
bool certificate_valid(const BinPackingInstance& inst, const PackingCertificate& cert,
                       Weight capacity);

}  // namespace kcdecomp
