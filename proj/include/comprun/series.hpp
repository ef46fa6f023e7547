#pragma once

// Exact truncated power series over arbitrary-precision integers and the
// run-count tables extracted from them.
//
// The generating function of compositions whose runs of equal parts are all
// shorter than k is C<k>(z) = 1 / D_k(z) with
//
//   D_k(z) = 1 - sum_{j>=1} z^j (1 - z^{j(k-1)}) / (1 - z^{jk}).
//
// Every coefficient below is an exact integer; nothing in this header rounds.

#include <comprun/error.hpp>
#include <comprun/numeric.hpp>

#include <gmp.h>

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace comprun {

/// Power series truncated modulo z^(order+1).
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1) {}

  explicit TruncatedSeries(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    require(!coeffs_.empty(), ErrorCode::invalid_argument,
            "a truncated series needs at least the constant coefficient");
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  std::span<const BigInt> coeffs() const noexcept { return coeffs_; }

  const BigInt& operator[](std::size_t i) const { return coeffs_.at(i); }
  BigInt& operator[](std::size_t i) { return coeffs_.at(i); }

  /// Same series truncated (or zero-extended) to a new order.
  TruncatedSeries truncated(std::size_t order) const {
    std::vector<BigInt> c(order + 1);
    std::copy_n(coeffs_.begin(), std::min(c.size(), coeffs_.size()), c.begin());
    return TruncatedSeries(std::move(c));
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries r(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i <= r.order(); ++i) r.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
    return r;
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries r(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i <= r.order(); ++i) r.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
    return r;
  }

  // Schoolbook product; the result keeps the smaller of the two orders.
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries r(std::min(a.order(), b.order()));
    const std::size_t n = r.order();
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; i + j <= n; ++j) {
        if (b.coeffs_[j] != 0) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return r;
  }

 private:
  std::vector<BigInt> coeffs_;
};

namespace detail {

// Coefficient deltas of g_k(z) = sum_j z^{jk} (1 - z^j) / (1 - z^{jk}) up to
// `order`, as small machine integers. Each j contributes +1 at jk(m+1) and -1
// at jk(m+1) + j for m >= 0.
inline std::vector<long> run_correction(unsigned k, std::size_t order) {
  std::vector<long> g(order + 1, 0);
  for (std::size_t j = 1; j * k <= order; ++j) {
    for (std::size_t e = j * k; e <= order; e += j * k) {
      g[e] += 1;
      if (e + j <= order) g[e + j] -= 1;
    }
  }
  return g;
}

// Coefficients of (1 - z) D_k(z) = 1 - 2z + (1 - z) g_k(z). Clearing the
// 1/(1-z) in D_k leaves a sparse series, which is what makes full count
// tables affordable.
inline std::vector<long> cleared_denominator(unsigned k, std::size_t order) {
  const auto g = run_correction(k, order);
  std::vector<long> e(order + 1, 0);
  e[0] = 1;
  if (order >= 1) e[1] = -2;
  for (std::size_t i = 0; i <= order; ++i) {
    e[i] += g[i];
    if (i > 0) e[i] -= g[i - 1];
  }
  return e;
}

// Coefficients of 1/d for a small-integer series with d[0] = 1, skipping the
// zero coefficients of d.
inline std::vector<BigInt> sparse_reciprocal(std::span<const long> d, std::size_t order) {
  std::vector<std::pair<std::size_t, long>> terms;
  for (std::size_t i = 1; i < d.size() && i <= order; ++i) {
    if (d[i] != 0) terms.emplace_back(i, d[i]);
  }
  std::vector<BigInt> s(order + 1);
  s[0] = 1;
  BigInt acc;
  for (std::size_t m = 1; m <= order; ++m) {
    acc = 0;
    mpz_ptr a = acc.backend().data();
    for (const auto& [i, c] : terms) {
      if (i > m) break;
      mpz_srcptr prev = s[m - i].backend().data();
      // s[m] = -sum_{i>=1} d[i] s[m-i]
      if (c > 0) {
        mpz_submul_ui(a, prev, static_cast<unsigned long>(c));
      } else {
        mpz_addmul_ui(a, prev, static_cast<unsigned long>(-c));
      }
    }
    s[m] = acc;
  }
  return s;
}

inline void require_run_bound(unsigned k) {
  require(k >= 2, ErrorCode::invalid_argument,
          "run bound k must be >= 2 (k = " + std::to_string(k) +
              " gives a degenerate generating function; Carlitz compositions are k = 2)");
}

}  // namespace detail

/// Exact coefficients of D_k(z) up to z^order. The j-sum stops at j = order
/// since the j-th term starts at z^j, so the truncation is exact.
inline TruncatedSeries denominator_series(unsigned k, std::size_t order) {
  detail::require_run_bound(k);
  std::vector<long> d(order + 1, 0);
  d[0] = 1;
  for (std::size_t j = 1; j <= order; ++j) {
    // z^j (1 - z^{j(k-1)}) sum_{m>=0} z^{mjk}
    for (std::size_t base = j; base <= order; base += j * k) {
      d[base] -= 1;
      const std::size_t upper = base + j * (k - 1);
      if (upper <= order) d[upper] += 1;
    }
  }
  std::vector<BigInt> coeffs(d.begin(), d.end());
  return TruncatedSeries(std::move(coeffs));
}

/// Formal reciprocal of a series with unit constant term.
inline TruncatedSeries series_reciprocal(const TruncatedSeries& d) {
  require(d[0] == 1, ErrorCode::invalid_argument,
          "series_reciprocal requires constant term 1, got " + d[0].str());
  const std::size_t n = d.order();
  std::vector<std::size_t> support;
  for (std::size_t i = 1; i <= n; ++i) {
    if (d[i] != 0) support.push_back(i);
  }
  std::vector<BigInt> s(n + 1);
  s[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    BigInt acc = 0;
    for (std::size_t i : support) {
      if (i > m) break;
      acc -= d[i] * s[m - i];
    }
    s[m] = std::move(acc);
  }
  return TruncatedSeries(std::move(s));
}

/// C_n^<k>: the number of compositions of n whose longest run is < k.
inline BigInt count_below(std::size_t n, unsigned k) {
  require(n >= 1, ErrorCode::invalid_argument, "composition size n must be >= 1");
  require(k >= 1, ErrorCode::invalid_argument, "run bound k must be >= 1");
  if (k == 1) return 0;
  if (k > n) return pow2(n - 1);
  const auto e = detail::cleared_denominator(k, n);
  const auto s = detail::sparse_reciprocal(e, n);
  // 1/D_k = (1 - z) / ((1 - z) D_k)
  return s[n] - s[n - 1];
}

/// Exact counts C_n^<k> for k = 0..k_max. counts[0] = counts[1] = 0 and
/// counts[k] = 2^(n-1) once k > n.
struct RunCountTable {
  std::size_t n = 0;
  std::size_t k_max = 0;
  BigInt total;
  std::vector<BigInt> counts;

  const BigInt& below(std::size_t k) const {
    return k < counts.size() ? counts[k] : total;
  }

  /// Number of compositions with longest run exactly k.
  BigInt with_longest_run(std::size_t k) const { return below(k + 1) - below(k); }
};

inline RunCountTable count_table(std::size_t n, std::size_t k_max = 0) {
  require(n >= 1, ErrorCode::invalid_argument, "composition size n must be >= 1");
  if (k_max == 0) k_max = n + 1;
  require(k_max >= n + 1, ErrorCode::invalid_argument,
          "k_max must be >= n + 1 so the table saturates");
  RunCountTable table;
  table.n = n;
  table.k_max = k_max;
  table.total = pow2(n - 1);
  table.counts.resize(k_max + 1);
  for (std::size_t k = 2; k <= k_max; ++k) {
    table.counts[k] = k > n ? table.total : count_below(n, static_cast<unsigned>(k));
  }
  return table;
}

/// Exact law of the longest run L for size n.
struct ExactDistribution {
  std::size_t n = 0;
  BigInt total;
  std::vector<Rational> cdf_below;  // P(L < k), k = 0..n+1
  std::vector<Rational> pmf;        // P(L = k), k = 0..n (pmf[0] = 0)

  Rational below(std::size_t k) const { return k < cdf_below.size() ? cdf_below[k] : Rational(1); }
  Rational at(std::size_t k) const { return k < pmf.size() ? pmf[k] : Rational(0); }
};

inline ExactDistribution exact_distribution(const RunCountTable& table) {
  ExactDistribution dist;
  dist.n = table.n;
  dist.total = table.total;
  dist.cdf_below.resize(table.n + 2);
  dist.pmf.resize(table.n + 1);
  for (std::size_t k = 0; k <= table.n + 1; ++k) {
    dist.cdf_below[k] = Rational(table.below(k), table.total);
  }
  for (std::size_t k = 1; k <= table.n; ++k) {
    dist.pmf[k] = Rational(table.with_longest_run(k), table.total);
  }
  return dist;
}

inline ExactDistribution exact_distribution(std::size_t n) {
  return exact_distribution(count_table(n));
}

/// Exact mean and variance of L with decimal renderings at a fixed number of
/// fractional digits.
struct ExactMoments {
  std::size_t n = 0;
  Rational mean;
  Rational second_moment;
  Rational variance;
  std::size_t precision = 0;
  std::string mean_decimal;
  std::string variance_decimal;
};

inline ExactMoments exact_moments(const RunCountTable& table, std::size_t precision = 30) {
  require(precision >= 10, ErrorCode::invalid_argument, "precision must be >= 10 digits");
  // E(L) = sum_{k>=1} P(L >= k), E(L^2) = sum_{k>=1} (2k - 1) P(L >= k)
  BigInt first = 0;
  BigInt second = 0;
  for (std::size_t k = 1; k <= table.n; ++k) {
    const BigInt at_least = table.total - table.below(k);
    first += at_least;
    second += (2 * k - 1) * at_least;
  }
  ExactMoments m;
  m.n = table.n;
  m.mean = Rational(first, table.total);
  m.second_moment = Rational(second, table.total);
  m.variance = m.second_moment - m.mean * m.mean;
  m.precision = precision;
  m.mean_decimal = to_decimal(m.mean, precision);
  m.variance_decimal = to_decimal(m.variance, precision);
  return m;
}

inline ExactMoments exact_moments(std::size_t n, std::size_t precision = 30) {
  return exact_moments(count_table(n), precision);
}

}  // namespace comprun
