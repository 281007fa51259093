#ifndef ANONCOMM_DIST_HPP
#define ANONCOMM_DIST_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <thread>
#include <vector>

#include "anoncomm/common.hpp"

namespace anoncomm {

using Outcome = std::vector<std::uint32_t>;

inline constexpr std::uint64_t kDefaultStateCap = 100'000'000;

/// Exact joint distribution over a finite outcome space, kept as integer
/// occurrence counts. Zero-count outcomes are never stored.
class DistTable {
 public:
  explicit DistTable(std::size_t arity) : arity_(arity) {}

  void add(const Outcome& outcome, std::uint64_t count = 1) {
    if (outcome.size() != arity_) throw Error("outcome arity mismatch");
    if (count == 0) return;
    counts_[outcome] += count;
    total_ += count;
  }

  std::size_t arity() const { return arity_; }
  std::uint64_t total() const { return total_; }
  std::size_t support_size() const { return counts_.size(); }
  const std::map<Outcome, std::uint64_t>& counts() const { return counts_; }

  /// Merge another table into this one (counts sum; associative and
  /// order-independent, so parallel partial tables combine safely).
  void merge(const DistTable& other) {
    if (other.arity_ != arity_) throw Error("merge arity mismatch");
    for (const auto& [o, c] : other.counts_) add(o, c);
  }

  /// Project onto a subset of variable positions.
  DistTable marginal(const std::vector<std::size_t>& indices) const {
    for (auto i : indices)
      if (i >= arity_) throw Error("marginal index out of range");
    DistTable out(indices.size());
    for (const auto& [o, c] : counts_) {
      Outcome proj(indices.size());
      for (std::size_t k = 0; k < indices.size(); ++k) proj[k] = o[indices[k]];
      out.add(proj, c);
    }
    return out;
  }

 private:
  std::size_t arity_;
  std::map<Outcome, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Sample space description: each input variable i ranges uniformly over
/// [0, radices[i]); eval maps one input tuple to one outcome tuple.
struct SpaceSpec {
  std::vector<std::uint64_t> radices;
  std::size_t outcome_arity = 0;
  std::function<Outcome(const std::vector<std::uint32_t>&)> eval;

  std::uint64_t state_count() const {
    std::uint64_t n = 1;
    for (auto r : radices) {
      if (r == 0) throw Error("zero radix in space spec");
      if (n > UINT64_MAX / r) throw Error("state count overflow");
      n *= r;
    }
    return n;
  }
};

namespace detail {
inline void index_to_tuple(std::uint64_t idx, const std::vector<std::uint64_t>& radices,
                           std::vector<std::uint32_t>& out) {
  for (std::size_t i = radices.size(); i-- > 0;) {
    out[i] = static_cast<std::uint32_t>(idx % radices[i]);
    idx /= radices[i];
  }
}
}  // namespace detail

/// Exhaustively evaluate the map over all uniform input tuples and count
/// outcomes. Refuses spaces above the cap.
inline DistTable enumerate(const SpaceSpec& spec,
                           std::uint64_t cap = kDefaultStateCap,
                           unsigned workers = 1) {
  const std::uint64_t n = spec.state_count();
  if (n > cap) throw CapExceeded(n, cap);
  if (workers <= 1 || n < 4096) {
    DistTable table(spec.outcome_arity);
    std::vector<std::uint32_t> in(spec.radices.size());
    for (std::uint64_t idx = 0; idx < n; ++idx) {
      detail::index_to_tuple(idx, spec.radices, in);
      table.add(spec.eval(in));
    }
    return table;
  }
  std::vector<DistTable> parts(workers, DistTable(spec.outcome_arity));
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = n / workers * w + std::min<std::uint64_t>(w, n % workers);
    const std::uint64_t hi = lo + n / workers + (w < n % workers ? 1 : 0);
    threads.emplace_back([&, w, lo, hi] {
      std::vector<std::uint32_t> in(spec.radices.size());
      for (std::uint64_t idx = lo; idx < hi; ++idx) {
        detail::index_to_tuple(idx, spec.radices, in);
        parts[w].add(spec.eval(in));
      }
    });
  }
  for (auto& t : threads) t.join();
  DistTable table(spec.outcome_arity);
  for (const auto& part : parts) table.merge(part);
  return table;
}

/// Entropy in base-p units. `exact` is set when the value is provably a
/// rational by the uniform-support shortcut (all counts equal, support size a
/// power of the base); anonymity/security verdicts never rely on the float.
struct EntropyValue {
  long double value = 0.0L;
  std::uint32_t base = 2;
  bool exact = false;
  Rational exact_value{0, 1};
};

inline EntropyValue entropy(const DistTable& d, std::uint32_t base) {
  if (d.total() == 0) throw Error("entropy of empty table");
  if (base < 2) throw Error("entropy base must be >= 2");
  EntropyValue out;
  out.base = base;

  bool uniform = true;
  std::uint64_t first = d.counts().begin()->second;
  for (const auto& [o, c] : d.counts())
    if (c != first) {
      uniform = false;
      break;
    }
  if (uniform) {
    // support size p^m  ==>  entropy is exactly m
    std::uint64_t s = d.support_size();
    std::uint32_t m = 0;
    while (s % base == 0) {
      s /= base;
      ++m;
    }
    if (s == 1) {
      out.exact = true;
      out.exact_value = Rational(m, 1);
      out.value = static_cast<long double>(m);
      return out;
    }
  }
  const long double logp = std::log(static_cast<long double>(base));
  const long double total = static_cast<long double>(d.total());
  long double h = 0.0L;
  for (const auto& [o, c] : d.counts()) {
    const long double pr = static_cast<long double>(c) / total;
    h -= pr * std::log(pr) / logp;
  }
  out.value = h < 0.0L ? 0.0L : h;
  return out;
}

/// Exact independence test: the joint table factorizes iff
/// count(a,b) * total == count(a) * count(b) for every (a,b) pair.
inline bool factorizes(const DistTable& d, const std::vector<std::size_t>& groupA,
                       const std::vector<std::size_t>& groupB) {
  const DistTable ma = d.marginal(groupA);
  const DistTable mb = d.marginal(groupB);
  std::vector<std::size_t> ab(groupA);
  ab.insert(ab.end(), groupB.begin(), groupB.end());
  const DistTable mab = d.marginal(ab);
  for (const auto& [oa, ca] : ma.counts())
    for (const auto& [ob, cb] : mb.counts()) {
      Outcome joint(oa);
      joint.insert(joint.end(), ob.begin(), ob.end());
      const auto it = mab.counts().find(joint);
      const std::uint64_t cab = it == mab.counts().end() ? 0 : it->second;
      // counts share one total, so cross-multiplication is exact
      if (cab * d.total() != ca * cb) return false;
    }
  return true;
}

inline EntropyValue mutual_information(const DistTable& d,
                                       const std::vector<std::size_t>& groupA,
                                       const std::vector<std::size_t>& groupB,
                                       std::uint32_t base) {
  for (auto a : groupA)
    for (auto b : groupB)
      if (a == b) throw Error("mutual_information: groups must be disjoint");
  std::vector<std::size_t> ab(groupA);
  ab.insert(ab.end(), groupB.begin(), groupB.end());
  const EntropyValue ha = entropy(d.marginal(groupA), base);
  const EntropyValue hb = entropy(d.marginal(groupB), base);
  const EntropyValue hab = entropy(d.marginal(ab), base);
  EntropyValue out;
  out.base = base;
  out.value = ha.value + hb.value - hab.value;
  if (out.value < 0.0L && out.value > -1e-12L) out.value = 0.0L;
  if (factorizes(d, groupA, groupB)) {
    out.exact = true;
    out.exact_value = Rational(0, 1);
    out.value = 0.0L;
  }
  return out;
}

/// Exact distributional equality under normalization: cross-multiplied
/// integer counts, no tolerance.
inline bool same_distribution(const DistTable& d1, const DistTable& d2) {
  if (d1.arity() != d2.arity()) throw Error("same_distribution: arity mismatch");
  if (d1.support_size() != d2.support_size()) return false;
  auto it1 = d1.counts().begin();
  auto it2 = d2.counts().begin();
  for (; it1 != d1.counts().end(); ++it1, ++it2) {
    if (it1->first != it2->first) return false;
    if (it1->second * d2.total() != it2->second * d1.total()) return false;
  }
  return true;
}

}  // namespace anoncomm

#endif  // ANONCOMM_DIST_HPP
