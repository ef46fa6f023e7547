#pragma once

// Ground truth by exhaustion plus a seeded uniform sampler.
//
// Compositions of n correspond to subsets of the n-1 gaps between n unit
// balls: a bar in gap i (0-based) ends a part after ball i+1. Enumeration
// walks every subset; sampling flips one fair bit per gap.

#include <comprun/error.hpp>
#include <comprun/random.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

namespace comprun {

inline constexpr std::size_t kDefaultEnumerationCap = 24;

class Composition {
 public:
  explicit Composition(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
    require(!parts_.empty(), ErrorCode::invalid_argument, "a composition needs at least one part");
    for (std::size_t p : parts_) {
      require(p >= 1, ErrorCode::invalid_argument, "composition parts must be positive");
      size_ += p;
    }
  }

  std::size_t size() const noexcept { return size_; }
  const std::vector<std::size_t>& parts() const noexcept { return parts_; }

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition&, const Composition&) = default;

 private:
  std::vector<std::size_t> parts_;
  std::size_t size_ = 0;
};

/// Length of the longest block of consecutive equal parts.
inline std::size_t longest_run(const Composition& c) {
  const auto& p = c.parts();
  std::size_t best = 1;
  std::size_t run = 1;
  for (std::size_t i = 1; i < p.size(); ++i) {
    run = p[i] == p[i - 1] ? run + 1 : 1;
    best = std::max(best, run);
  }
  return best;
}

/// Longest block of consecutive parts equal to r; 0 if r never occurs.
inline std::size_t longest_run_of(const Composition& c, std::size_t r) {
  require(r >= 1, ErrorCode::invalid_argument, "part value r must be >= 1");
  std::size_t best = 0;
  std::size_t run = 0;
  for (std::size_t p : c.parts()) {
    run = p == r ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

/// Builds the composition of n whose bars sit where `has_bar(gap)` is true,
/// gap = 0..n-2.
template <class BarFn>
Composition composition_from_bars(std::size_t n, BarFn&& has_bar) {
  require(n >= 1, ErrorCode::invalid_argument, "composition size n must be >= 1");
  std::vector<std::size_t> parts;
  std::size_t current = 1;
  for (std::size_t gap = 0; gap + 1 < n; ++gap) {
    if (has_bar(gap)) {
      parts.push_back(current);
      current = 1;
    } else {
      ++current;
    }
  }
  parts.push_back(current);
  return Composition(std::move(parts));
}

inline Composition composition_from_mask(std::size_t n, std::uint64_t mask) {
  return composition_from_bars(n, [mask](std::size_t gap) { return ((mask >> gap) & 1U) != 0; });
}

/// Inverse of composition_from_mask (n <= 64).
inline std::uint64_t bar_mask(const Composition& c) {
  require(c.size() <= 64, ErrorCode::invalid_argument, "bar_mask supports n <= 64");
  std::uint64_t mask = 0;
  std::size_t position = 0;
  const auto& parts = c.parts();
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    position += parts[i];
    mask |= std::uint64_t{1} << (position - 1);
  }
  return mask;
}

/// Lazy stream over all 2^(n-1) compositions of n, in bar-mask order.
class CompositionRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Composition;
    using difference_type = std::ptrdiff_t;
    using pointer = const Composition*;
    using reference = Composition;

    iterator() = default;
    iterator(std::size_t n, std::uint64_t mask) : n_(n), mask_(mask) {}

    Composition operator*() const { return composition_from_mask(n_, mask_); }
    iterator& operator++() {
      ++mask_;
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++mask_;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.mask_ == b.mask_; }

   private:
    std::size_t n_ = 0;
    std::uint64_t mask_ = 0;
  };

  CompositionRange(std::size_t n, std::size_t cap) : n_(n) {
    require(n >= 1, ErrorCode::invalid_argument, "composition size n must be >= 1");
    require(n <= cap && n <= 63, ErrorCode::cap_exceeded,
            "enumeration of n = " + std::to_string(n) + " exceeds the enumeration cap " +
                std::to_string(std::min<std::size_t>(cap, 63)));
  }

  iterator begin() const { return {n_, 0}; }
  iterator end() const { return {n_, std::uint64_t{1} << (n_ - 1)}; }
  std::uint64_t size() const { return std::uint64_t{1} << (n_ - 1); }

 private:
  std::size_t n_;
};

inline CompositionRange enumerate_all(std::size_t n, std::size_t cap = kDefaultEnumerationCap) {
  return CompositionRange(n, cap);
}

/// Histogram L -> number of compositions of n with longest run exactly L.
/// Only values that occur are present.
inline std::map<std::size_t, std::uint64_t> brute_distribution(
    std::size_t n, std::size_t cap = kDefaultEnumerationCap) {
  std::map<std::size_t, std::uint64_t> histogram;
  for (const Composition& c : enumerate_all(n, cap)) ++histogram[longest_run(c)];
  return histogram;
}

/// Uniform composition of n from n-1 fair bits drawn 64 at a time.
template <class Rng>
Composition sample_composition(std::size_t n, Rng& rng) {
  require(n >= 1, ErrorCode::invalid_argument, "composition size n must be >= 1");
  std::vector<std::uint64_t> words((n + 62) / 64);
  for (auto& w : words) w = static_cast<std::uint64_t>(rng());
  return composition_from_bars(n, [&words](std::size_t gap) {
    return ((words[gap / 64] >> (gap % 64)) & 1U) != 0;
  });
}

/// Run statistics of a single composition: L, L_r for r = 1..r_max, largest part.
struct RunProfile {
  std::size_t longest = 0;
  std::vector<std::size_t> per_value;  // per_value[r - 1] = L_r
  std::size_t largest_part = 0;
};

inline RunProfile run_profile(const Composition& c, std::size_t r_max) {
  RunProfile profile;
  profile.per_value.assign(r_max, 0);
  const auto& parts = c.parts();
  std::size_t i = 0;
  while (i < parts.size()) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    const std::size_t length = j - i;
    const std::size_t value = parts[i];
    profile.longest = std::max(profile.longest, length);
    profile.largest_part = std::max(profile.largest_part, value);
    if (value <= r_max) profile.per_value[value - 1] = std::max(profile.per_value[value - 1], length);
    i = j;
  }
  return profile;
}

/// ceil(2 lg n) + 2
inline std::size_t default_r_max(std::size_t n) {
  return static_cast<std::size_t>(std::ceil(2.0 * std::log2(static_cast<double>(n)))) + 2;
}

struct SimulationReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t r_max = 0;
  double longest_run_mean = 0;
  double longest_run_variance = 0;     // unbiased sample variance
  std::vector<double> per_value_runs;  // [r - 1] -> sample mean of L_r
  std::vector<double> per_value_variance;
  double largest_part_mean = 0;

  double run_mean(std::size_t r) const { return per_value_runs.at(r - 1); }

  friend bool operator==(const SimulationReport&, const SimulationReport&) = default;
};

namespace detail {

// Integer sums keep aggregation exact and independent of worker order.
struct SimulationSums {
  std::uint64_t longest = 0;
  std::uint64_t longest_sq = 0;
  std::uint64_t largest = 0;
  std::vector<std::uint64_t> runs;
  std::vector<std::uint64_t> runs_sq;

  explicit SimulationSums(std::size_t r_max) : runs(r_max, 0), runs_sq(r_max, 0) {}

  void add(const RunProfile& p) {
    longest += p.longest;
    longest_sq += p.longest * p.longest;
    largest += p.largest_part;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      runs[r] += p.per_value[r];
      runs_sq[r] += p.per_value[r] * p.per_value[r];
    }
  }

  void merge(const SimulationSums& o) {
    longest += o.longest;
    longest_sq += o.longest_sq;
    largest += o.largest;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      runs[r] += o.runs[r];
      runs_sq[r] += o.runs_sq[r];
    }
  }
};

inline double sample_variance(std::uint64_t sum, std::uint64_t sum_sq, std::size_t trials) {
  if (trials < 2) return 0.0;
  const double t = static_cast<double>(trials);
  const double mean = static_cast<double>(sum) / t;
  return (static_cast<double>(sum_sq) - t * mean * mean) / (t - 1.0);
}

}  // namespace detail

/// Monte Carlo over `trials` uniform compositions of n. Trial t draws from
/// substream(seed, t), so the report does not depend on `workers`.
inline SimulationReport simulate(std::size_t n, std::size_t trials, std::uint64_t seed,
                                 std::size_t r_max = 0, std::size_t workers = 1) {
  require(n >= 1, ErrorCode::invalid_argument, "composition size n must be >= 1");
  require(trials >= 1, ErrorCode::invalid_argument, "trials must be >= 1");
  if (r_max == 0) r_max = default_r_max(n);
  workers = std::clamp<std::size_t>(workers, 1, trials);

  std::vector<detail::SimulationSums> partial(workers, detail::SimulationSums(r_max));
  auto run_slice = [&](std::size_t w) {
    for (std::size_t t = w; t < trials; t += workers) {
      Engine rng = substream(seed, t);
      partial[w].add(run_profile(sample_composition(n, rng), r_max));
    }
  };
  if (workers == 1) {
    run_slice(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run_slice, w);
  }
  detail::SimulationSums sums(r_max);
  for (const auto& p : partial) sums.merge(p);

  const double t = static_cast<double>(trials);
  SimulationReport report;
  report.n = n;
  report.trials = trials;
  report.seed = seed;
  report.r_max = r_max;
  report.longest_run_mean = static_cast<double>(sums.longest) / t;
  report.longest_run_variance = detail::sample_variance(sums.longest, sums.longest_sq, trials);
  report.largest_part_mean = static_cast<double>(sums.largest) / t;
  for (std::size_t r = 0; r < r_max; ++r) {
    report.per_value_runs.push_back(static_cast<double>(sums.runs[r]) / t);
    report.per_value_variance.push_back(detail::sample_variance(sums.runs[r], sums.runs_sq[r], trials));
  }
  return report;
}

/// One composition from substream(seed, 0): the single-sample dump mode.
inline RunProfile single_profile(std::size_t n, std::uint64_t seed, std::size_t r_max = 0) {
  if (r_max == 0) r_max = default_r_max(n);
  Engine rng = substream(seed, 0);
  return run_profile(sample_composition(n, rng), r_max);
}

}  // namespace comprun
