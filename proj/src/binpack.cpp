#include "kcdecomp/binpack.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "kcdecomp/model.hpp"

namespace kcdecomp {

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<Weight>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (Weight x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Euler's pentagonal recurrence, grown on demand and shared across calls.
class PartitionTable {
 public:
  BigInt at(int n) {
    std::lock_guard lock(mutex_);
    extend(n);
    return table_[static_cast<std::size_t>(n)];
  }

  // Sum of p(h*c) for h = 0..d, for every d in [0, horizon].
  std::vector<BigInt> prefix_sums(int c, int horizon) {
    std::lock_guard lock(mutex_);
    extend(c * horizon);
    std::vector<BigInt> sums;
    BigInt running = 0;
    for (int h = 0; h <= horizon; ++h) {
      running += table_[static_cast<std::size_t>(h) * c];
      sums.push_back(running);
    }
    return sums;
  }

 private:
  void extend(int n) {
    if (table_.empty()) table_.push_back(1);
    for (int m = static_cast<int>(table_.size()); m <= n; ++m) {
      BigInt total = 0;
      for (int j = 1;; ++j) {
        const int g1 = j * (3 * j - 1) / 2;
        if (g1 > m) break;
        const int g2 = j * (3 * j + 1) / 2;
        BigInt term = table_[m - g1];
        if (g2 <= m) term += table_[m - g2];
        if (j % 2 == 1) {
          total += term;
        } else {
          total -= term;
        }
      }
      table_.push_back(std::move(total));
    }
  }

  std::mutex mutex_;
  std::vector<BigInt> table_;
};

PartitionTable& partition_table() {
  static PartitionTable table;
  return table;
}

void check_capacity(Weight c) {
  if (c > kMaxCapacity)
    throw ParameterError("capacity " + std::to_string(c) + " exceeds the supported maximum " +
                         std::to_string(kMaxCapacity));
}

void collect_patterns(const MultiplicityVector& a, const std::vector<Weight>& weights_desc,
                      std::size_t pos, Weight remaining, Pattern& current, PatternSet& out) {
  if (pos == weights_desc.size()) {
    if (remaining == 0) out.push_back(current);
    return;
  }
  const Weight w = weights_desc[pos];
  const Weight available = a.a[static_cast<std::size_t>(w - 1)];
  if (w == 1) {
    if (remaining <= available) {
      current[0] = remaining;
      out.push_back(current);
      current[0] = 0;
    }
    return;
  }
  const Weight most = std::min(available, remaining / w);
  for (Weight x = most; x >= 0; --x) {
    current[static_cast<std::size_t>(w - 1)] = x;
    collect_patterns(a, weights_desc, pos + 1, remaining - x * w, current, out);
  }
  current[static_cast<std::size_t>(w - 1)] = 0;
}

// Decides sum(lambda_i v_i) == residual by filling one bin at a time: the
// heaviest remaining item has to sit in some bin, so branch over the support
// patterns that contain it. Feasibility depends on the residual alone (the
// number of bins left is its weight over c), which makes failed residuals safe
// to memoize.
class ConicalSearch {
 public:
  ConicalSearch(const PatternSet& patterns, const std::vector<int>& support, std::size_t c)
      : patterns_(patterns), support_(support), by_weight_(c) {
    for (std::size_t pos = 0; pos < support.size(); ++pos) {
      const Pattern& x = patterns[support[pos]];
      for (std::size_t w = 0; w < c; ++w)
        if (x[w] > 0) by_weight_[w].push_back(pos);
      if (x[0] == static_cast<Weight>(c)) ones_ = static_cast<int>(pos);
    }
  }

  std::optional<std::vector<Weight>> run(std::vector<Weight> residual) {
    counts_.assign(support_.size(), 0);
    if (search(residual)) return counts_;
    return std::nullopt;
  }

 private:
  static constexpr std::size_t kMemoLimit = 1 << 20;

  bool search(std::vector<Weight>& residual) {
    std::size_t top = residual.size();
    while (top > 0 && residual[top - 1] == 0) --top;
    if (top == 0) return true;
    if (top == 1) {
      // only unit items left; the total is a multiple of c by construction
      if (ones_ < 0) return false;
      counts_[ones_] += residual[0] / static_cast<Weight>(residual.size());
      return true;
    }
    if (failed_.contains(residual)) return false;
    for (std::size_t pos : by_weight_[top - 1]) {
      const Pattern& x = patterns_[support_[pos]];
      bool fits = true;
      for (std::size_t w = 0; w < x.size() && fits; ++w) fits = x[w] <= residual[w];
      if (!fits) continue;
      for (std::size_t w = 0; w < top; ++w) residual[w] -= x[w];
      ++counts_[pos];
      const bool ok = search(residual);
      for (std::size_t w = 0; w < top; ++w) residual[w] += x[w];
      if (ok) return true;
      --counts_[pos];
    }
    if (failed_.size() < kMemoLimit) failed_.insert(residual);
    return false;
  }

  const PatternSet& patterns_;
  const std::vector<int>& support_;
  std::vector<std::vector<std::size_t>> by_weight_;
  int ones_ = -1;
  std::vector<Weight> counts_;
  std::unordered_set<std::vector<Weight>, VectorHash> failed_;
};

// Calls visit(subset) for every size-r subset of [0, n) in lexicographic order
// until visit returns true or the budget runs out. Returns whether visit hit.
bool for_each_subset(int n, int r, std::size_t& budget,
                     const std::function<bool(const std::vector<int>&)>& visit) {
  if (r > n) return false;
  std::vector<int> idx(static_cast<std::size_t>(r));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (budget == 0) return false;
    --budget;
    if (visit(idx)) return true;
    int pos = r - 1;
    while (pos >= 0 && idx[pos] == n - r + pos) --pos;
    if (pos < 0) return false;
    ++idx[pos];
    for (int j = pos + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

PackingCertificate expand_certificate(const BinPackingInstance& inst, const PatternSet& patterns,
                                      const ConicalSolution& solution) {
  const auto c = static_cast<std::size_t>(inst.c);
  std::vector<std::vector<int>> by_weight(c);
  for (std::size_t i = 0; i < inst.weights.size(); ++i)
    by_weight[static_cast<std::size_t>(inst.weights[i] - 1)].push_back(static_cast<int>(i));
  std::vector<std::size_t> next(c, 0);

  PackingCertificate cert;
  for (std::size_t s = 0; s < solution.support.size(); ++s) {
    const Pattern& v = patterns[solution.support[s]];
    for (Weight copy = 0; copy < solution.lambdas[s]; ++copy) {
      std::vector<int> bin;
      for (std::size_t w = 0; w < c; ++w) {
        for (Weight slot = 0; slot < v[w]; ++slot) {
          // leftover weight-1 slots are padding
          if (next[w] < by_weight[w].size()) bin.push_back(by_weight[w][next[w]++]);
        }
      }
      std::sort(bin.begin(), bin.end());
      cert.bins.push_back(std::move(bin));
    }
  }
  return cert;
}

}  // namespace

void BinPackingInstance::validate() const {
  if (k < 1) throw ParameterError("bin count must be at least 1");
  if (c < 1) throw ParameterError("capacity must be at least 1");
  if (k > kMaxBins) throw ParameterError("bin count exceeds the supported maximum");
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] < 1)
      throw ParameterError("item " + std::to_string(i) + " has non-positive weight");
}

std::optional<MultiplicityVector> normalize(const BinPackingInstance& inst) {
  inst.validate();
  Weight total = 0;
  for (Weight w : inst.weights) {
    if (w > inst.c) return std::nullopt;
    total += w;
  }
  if (inst.k > std::numeric_limits<Weight>::max() / inst.c)
    throw ParameterError("k*c overflows");
  const Weight kc = inst.k * inst.c;
  if (total > kc) return std::nullopt;
  check_capacity(inst.c);

  MultiplicityVector mv;
  mv.c = inst.c;
  mv.k = inst.k;
  mv.a.assign(static_cast<std::size_t>(inst.c), 0);
  for (Weight w : inst.weights) ++mv.a[static_cast<std::size_t>(w - 1)];
  mv.padding = kc - total;
  mv.a[0] += mv.padding;
  return mv;
}

BigInt partition_number(int n) {
  if (n < 0) throw ParameterError("partition number of a negative integer");
  return partition_table().at(n);
}

PatternSet enumerate_patterns_within(const MultiplicityVector& a) {
  std::vector<Weight> weights_desc;
  for (Weight w = a.c; w >= 1; --w)
    if (a.a[static_cast<std::size_t>(w - 1)] > 0 || w == 1) weights_desc.push_back(w);
  PatternSet out;
  if (a.c < 1) return out;
  Pattern current(static_cast<std::size_t>(a.c), 0);
  collect_patterns(a, weights_desc, 0, a.c, current, out);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

PatternSet enumerate_patterns(int c) {
  if (c < 1) throw ParameterError("capacity must be at least 1");
  check_capacity(c);
  MultiplicityVector all;
  all.c = c;
  all.k = 1;
  all.a.resize(static_cast<std::size_t>(c));
  for (int w = 1; w <= c; ++w) all.a[w - 1] = c / w;
  return enumerate_patterns_within(all);
}

int compute_support_bound(int c) {
  if (c < 1) throw ParameterError("capacity must be at least 1");
  static std::mutex mutex;
  static std::map<int, int> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(c); it != cache.end()) return it->second;
  }

  // Beyond the horizon, sum_{h<=d} p(hc) <= (d+1) p(dc) < (d+1) exp(pi sqrt(2dc/3)) < 2^d.
  // slack(d) is convex, so slack(D) >= 1 with an increasing slope settles every d >= D.
  const long double pi = std::numbers::pi_v<long double>;
  const long double root = pi * std::sqrt(2.0L * c / 3.0L);
  auto slack = [&](long double d) {
    return d * std::log(2.0L) - std::log(d + 1.0L) - root * std::sqrt(d);
  };
  auto slope = [&](long double d) {
    return std::log(2.0L) - 1.0L / (d + 1.0L) - root / (2.0L * std::sqrt(d));
  };
  int horizon = 1;
  while (!(slack(horizon) >= 1.0L && slope(horizon) > 0.0L)) ++horizon;

  const std::vector<BigInt> sums = partition_table().prefix_sums(c, horizon);
  int last_failure = 0;
  BigInt power = 1;
  for (int d = 0; d <= horizon; ++d) {
    if (power <= sums[static_cast<std::size_t>(d)]) last_failure = d;
    power <<= 1;
  }
  std::lock_guard lock(mutex);
  cache[c] = last_failure;
  return last_failure;
}

int effective_support_cap(int c, Weight k) {
  if (c < 1 || k < 1) throw ParameterError("capacity and bin count must be positive");
  const BigInt pc = partition_number(c);
  const Weight m = pc < BigInt(k) ? pc.convert_to<Weight>() : k;
  // d(c) >= m whenever d = m itself violates the defining inequality
  if (m <= 64 && static_cast<long long>(m) * c <= 200'000) {
    const auto sums = partition_table().prefix_sums(c, static_cast<int>(m));
    if ((BigInt(1) << static_cast<unsigned>(m)) <= sums.back()) return static_cast<int>(m);
  }
  return static_cast<int>(std::min<Weight>(m, compute_support_bound(c)));
}

std::optional<ConicalSolution> conical_feasibility(const PatternSet& patterns,
                                                   const std::vector<int>& support,
                                                   const MultiplicityVector& a) {
  for (int idx : support)
    if (idx < 0 || static_cast<std::size_t>(idx) >= patterns.size())
      throw ParameterError("support index out of range");
  ConicalSearch search(patterns, support, static_cast<std::size_t>(a.c));
  auto lambdas = search.run(a.a);
  if (!lambdas) return std::nullopt;
  ConicalSolution solution;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if ((*lambdas)[i] == 0) continue;
    solution.support.push_back(support[i]);
    solution.lambdas.push_back((*lambdas)[i]);
  }
  return solution;
}

ConicalSolution reduce_support(const ConicalSolution& combination, const PatternSet& patterns,
                               int c, std::optional<int> target, std::size_t subset_budget) {
  const int bound = target.value_or(compute_support_bound(c));
  const auto dim = static_cast<std::size_t>(c);
  ConicalSolution current = combination;
  for (Weight lambda : current.lambdas)
    if (lambda <= 0) throw ParameterError("reduce_support needs positive coefficients");

  while (static_cast<int>(current.support.size()) > bound) {
    const int n = static_cast<int>(current.support.size());
    std::vector<int> first, second;
    // equal pattern sums force equal subset sizes, so search size by size
    for (int r = 2; r <= n / 2 && first.empty(); ++r) {
      std::unordered_map<std::vector<Weight>, std::vector<int>, VectorHash> seen;
      for_each_subset(n, r, subset_budget, [&](const std::vector<int>& idx) {
        std::vector<Weight> sum(dim, 0);
        for (int i : idx)
          for (std::size_t w = 0; w < dim; ++w) sum[w] += patterns[current.support[i]][w];
        auto [it, inserted] = seen.emplace(std::move(sum), idx);
        if (inserted) return false;
        first = it->second;
        second = idx;
        return true;
      });
      if (subset_budget == 0 && first.empty())
        throw SupportSearchExhausted("no equal-sum subsets found within the search budget");
    }
    if (first.empty()) throw SupportSearchExhausted("no equal-sum subsets exist");

    std::vector<int> only_first, only_second;
    std::set_difference(first.begin(), first.end(), second.begin(), second.end(),
                        std::back_inserter(only_first));
    std::set_difference(second.begin(), second.end(), first.begin(), first.end(),
                        std::back_inserter(only_second));
    Weight shift = std::numeric_limits<Weight>::max();
    for (int i : only_first) shift = std::min(shift, current.lambdas[i]);
    for (int i : only_first) current.lambdas[i] -= shift;
    for (int i : only_second) current.lambdas[i] += shift;

    ConicalSolution next;
    for (std::size_t i = 0; i < current.support.size(); ++i) {
      if (current.lambdas[i] == 0) continue;
      next.support.push_back(current.support[i]);
      next.lambdas.push_back(current.lambdas[i]);
    }
    current = std::move(next);
  }
  return current;
}

FptResult solve_fpt(const BinPackingInstance& inst, const FptOptions& options) {
  FptResult result;
  auto normalized = normalize(inst);
  if (!normalized) return result;
  const MultiplicityVector& a = *normalized;
  const PatternSet patterns = enumerate_patterns_within(a);
  const int count = static_cast<int>(patterns.size());

  std::optional<ConicalSolution> found;
  if (options.strategy == SupportStrategy::subsets_only) {
    const int cap = std::min(count, effective_support_cap(static_cast<int>(a.c), a.k));
    std::size_t budget = std::numeric_limits<std::size_t>::max();
    for (int r = 1; r <= cap && !found; ++r) {
      for_each_subset(count, r, budget, [&](const std::vector<int>& idx) {
        found = conical_feasibility(patterns, idx, a);
        return found.has_value();
      });
    }
  } else {
    std::vector<int> all(static_cast<std::size_t>(count));
    std::iota(all.begin(), all.end(), 0);
    found = conical_feasibility(patterns, all, a);
    if (!found) return result;
    std::size_t budget = options.subset_check_budget;
    const int have = static_cast<int>(found->support.size());
    for (int r = 1; r < have && budget > 0; ++r) {
      std::optional<ConicalSolution> smaller;
      const bool hit = for_each_subset(count, r, budget, [&](const std::vector<int>& idx) {
        smaller = conical_feasibility(patterns, idx, a);
        return smaller.has_value();
      });
      if (hit) {
        found = std::move(smaller);
        break;
      }
    }
    // only possible when d(c) is the binding term of the cap
    if (static_cast<int>(found->support.size()) >
        effective_support_cap(static_cast<int>(a.c), a.k))
      found = reduce_support(*found, patterns, static_cast<int>(a.c));
  }
  if (!found) return result;
  result.certificate = expand_certificate(inst, patterns, *found);
  result.solution = std::move(found);
  return result;
}

std::vector<Weight> bin_loads(const BinPackingInstance& inst, const PackingCertificate& cert) {
  if (static_cast<Weight>(cert.bins.size()) > inst.k)
    throw ParameterError("certificate uses more than k bins");
  std::vector<int> seen(inst.weights.size(), 0);
  std::vector<Weight> loads;
  for (const auto& bin : cert.bins) {
    Weight load = 0;
    for (int item : bin) {
      if (item < 0 || static_cast<std::size_t>(item) >= inst.weights.size())
        throw ParameterError("certificate names unknown item " + std::to_string(item));
      if (seen[item]++ > 0)
        throw ParameterError("item " + std::to_string(item) + " packed twice");
      load += inst.weights[item];
    }
    loads.push_back(load);
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i] == 0) throw ParameterError("item " + std::to_string(i) + " not packed");
  return loads;
}

bool certificate_valid(const BinPackingInstance& inst, const PackingCertificate& cert,
                       Weight capacity) {
  try {
    const auto loads = bin_loads(inst, cert);
    return std::all_of(loads.begin(), loads.end(), [&](Weight l) { return l <= capacity; });
  } catch (const ParameterError&) {
    return false;
  }
}

}  // namespace kcdecomp
