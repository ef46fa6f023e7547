#pragma once

// Asymptotic side of the longest-run problem, templated on the working
// floating type (Float50 by default).
//
//   D_k(z) = 1 - h(z) + g(z),  h(z) = z / (1 - z),
//   g(z)   = sum_{j>=1} z^{jk} (1 - z^j) / (1 - z^{jk}).
//
// The dominant pole rho_k of 1/D_k lies in (1/2, 3/5); it drives the residue
// estimate of C_n^<k>, the double-exponential law P(L < k) ~ exp(-n/2^{k+2}),
// and through the harmonic sums Phi and Psi the mean and variance of L with
// their period-1 fluctuations P and Q.

#include <comprun/error.hpp>
#include <comprun/numeric.hpp>
#include <comprun/special_functions.hpp>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/expm1.hpp>

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace comprun {

/// Tolerance used when callers do not pass one: 10^-(digits - 10).
template <class Real>
Real default_tolerance() {
  return pow10_neg<Real>(digits10_of<Real>() - 10);
}

template <class Real>
struct TailBoundedValue {
  Real value{};
  Real tail_bound{};  // bound on the omitted part of the sum
  std::size_t terms = 0;
};

namespace detail {

template <class Real>
Real lg(const Real& x) {
  using std::log;
  return Real(log(x) / boost::math::constants::ln_two<Real>());
}

template <class Real>
Real pow_int(Real base, std::size_t e) {
  Real r = 1;
  while (e > 0) {
    if (e & 1U) r *= base;
    base *= base;
    e >>= 1U;
  }
  return r;
}

inline std::size_t floor_lg(std::uint64_t n) { return std::bit_width(n) - 1; }

// Upper bound on sum_{j>J} |z|^{jk} (1 + |z|) / (1 - |z|^k)
template <class Real>
Real g_tail(const Real& radius, const Real& radius_k, std::size_t J) {
  const Real one_minus = 1 - radius_k;
  return pow_int(radius_k, J + 1) / one_minus * (1 + radius) / one_minus;
}

template <class Real>
void require_unit_interval(const Real& z) {
  require(z > 0 && z < 1, ErrorCode::invalid_argument, "z must lie in the open interval (0, 1)");
}

}  // namespace detail

/// g_k(z) for real z in (0, 1) by direct summation until the geometric tail
/// drops below tol.
template <class Real>
TailBoundedValue<Real> g_eval(const Real& z, unsigned k, const Real& tol) {
  detail::require_unit_interval(z);
  require(k >= 2, ErrorCode::invalid_argument, "run bound k must be >= 2");
  const Real zk = detail::pow_int(z, k);
  TailBoundedValue<Real> out;
  Real zj = 1;
  Real zjk = 1;
  for (std::size_t j = 1;; ++j) {
    zj *= z;
    zjk *= zk;
    out.value += zjk * (1 - zj) / (1 - zjk);
    out.terms = j;
    out.tail_bound = detail::g_tail(z, zk, j);
    if (out.tail_bound < tol) return out;
    require(j < 1000000, ErrorCode::no_convergence, "g summation did not reach the tolerance");
  }
}

/// Complex g_k(z) for |z| < 1; the tail bound uses |z| in place of z.
template <class Real>
TailBoundedValue<Complex<Real>> g_eval_complex(const Complex<Real>& z, unsigned k, const Real& tol) {
  using std::abs;
  const Real radius = abs(z);
  require(radius > 0 && radius < 1, ErrorCode::invalid_argument, "|z| must lie in (0, 1)");
  const Complex<Real> one(Real(1));
  const Complex<Real> zk = detail::pow_int(z, k);
  const Real radius_k = detail::pow_int(radius, k);
  TailBoundedValue<Complex<Real>> out;
  Complex<Real> zj = one;
  Complex<Real> zjk = one;
  for (std::size_t j = 1;; ++j) {
    zj *= z;
    zjk *= zk;
    out.value += zjk * (one - zj) / (one - zjk);
    out.terms = j;
    const Real tail = detail::g_tail(radius, radius_k, j);
    out.tail_bound = Complex<Real>(tail);
    if (tail < tol) return out;
    require(j < 1000000, ErrorCode::no_convergence, "g summation did not reach the tolerance");
  }
}

/// g_k'(z) by term-wise differentiation with a tail bound.
template <class Real>
TailBoundedValue<Real> g_derivative(const Real& z, unsigned k, const Real& tol) {
  detail::require_unit_interval(z);
  require(k >= 2, ErrorCode::invalid_argument, "run bound k must be >= 2");
  const Real zk = detail::pow_int(z, k);
  const Real q_gap = 1 - zk;
  TailBoundedValue<Real> out;
  Real b = 1;  // z^j
  Real a = 1;  // z^{jk}
  for (std::size_t j = 1;; ++j) {
    b *= z;
    a *= zk;
    const Real jr = Real(j);
    // t = a (1 - b) / (1 - a);  a' = jk a / z,  b' = j b / z
    out.value += (1 - b) / ((1 - a) * (1 - a)) * jr * Real(k) * a / z - a / (1 - a) * jr * b / z;
    out.terms = j;
    // sum_{j>J} j (k+1) q^j / (z (1-q)^2), q = z^k
    const Real next = Real(j + 1);
    const Real tail_sum = a * zk * (next - jr * zk) / (q_gap * q_gap);
    out.tail_bound = Real(k + 1) * tail_sum / (z * q_gap * q_gap);
    if (out.tail_bound < tol) return out;
    require(j < 1000000, ErrorCode::no_convergence, "g' summation did not reach the tolerance");
  }
}

/// D_k(z) = 1 - z/(1-z) + g_k(z)
template <class Real>
Real denominator_value(const Real& z, unsigned k, const Real& tol) {
  return 1 - z / (1 - z) + g_eval(z, k, tol).value;
}

template <class Real>
Real denominator_derivative(const Real& z, unsigned k, const Real& tol) {
  return -1 / ((1 - z) * (1 - z)) + g_derivative(z, k, tol).value;
}

template <class Real>
struct PoleEstimate {
  unsigned k = 0;
  Real rho{};
  Real bracket_lo{};  // D_k(lo) > 0
  Real bracket_hi{};  // D_k(hi) < 0
  Real residual{};    // |h(rho) - g(rho) - 1| = |D_k(rho)|
  Real first_order{};     // (1 + 2^{-k-2}) / 2
  Real first_iterate{};   // (1 + g(1/2)) / (2 + g(1/2))
  Real tail_bound{};      // truncation bound of the g evaluations
  std::size_t fixed_point_iterations = 0;
  std::size_t bisection_steps = 0;
  bool isolation_proven = false;  // Rouche isolation argument covers k >= 4 only
};

/// Dominant pole of 1/D_k. Runs the monotone fixed-point iteration
/// z <- (1 + g(z)) / (2 + g(z)) from 1/2, then bisects on the sign of
/// h - g - 1 inside a certified bracket until |D_k(rho)| <= tol.
template <class Real = Float50>
PoleEstimate<Real> solve_rho(unsigned k, Real tol = default_tolerance<Real>()) {
  using std::abs;
  require(k >= 2, ErrorCode::invalid_argument,
          "run bound k must be >= 2 for the pole solver, got " + std::to_string(k));
  const Real floor_tol = pow10_neg<Real>(digits10_of<Real>() - 5);
  require(tol >= floor_tol && tol > 0, ErrorCode::infeasible_tolerance,
          "tolerance " + format_real(tol, 3) + " is below what " +
              std::to_string(digits10_of<Real>()) + "-digit arithmetic can certify");

  const Real g_tol = tol / 1000;
  auto F = [&](const Real& z) { return z / (1 - z) - g_eval(z, k, g_tol).value - 1; };
  auto step = [&](const Real& z) {
    const Real g = g_eval(z, k, g_tol).value;
    return Real((1 + g) / (2 + g));
  };

  PoleEstimate<Real> est;
  est.k = k;
  est.isolation_proven = k >= 4;
  est.first_order = (1 + detail::pow_int(Real(1) / 2, k + 2)) / 2;
  est.tail_bound = g_tol;

  Real z = Real(1) / 2;
  est.first_iterate = step(z);
  Real last_step = 0;
  constexpr std::size_t kMaxIterations = 100000;
  for (;;) {
    const Real next = step(z);
    if (next <= z) break;  // monotone increase stops at the precision floor
    last_step = next - z;
    z = next;
    ++est.fixed_point_iterations;
    if (last_step < tol / 8) break;
    require(est.fixed_point_iterations < kMaxIterations, ErrorCode::no_convergence,
            "fixed-point iteration for rho_k did not converge");
  }

  // Every iterate stays below rho, so F(z) <= 0 certifies the lower end.
  Real lo = z;
  Real f_lo = F(lo);
  Real hi = Real(3) / 5;
  require(F(hi) > 0, ErrorCode::numeric, "h - g - 1 is not positive at 3/5");
  // Walk a tight upper end out from the last iterate before bisecting.
  Real width = last_step > 0 ? Real(2 * last_step) : tol;
  while (lo + width < hi) {
    const Real candidate = lo + width;
    if (F(candidate) > 0) {
      hi = candidate;
      break;
    }
    lo = candidate;
    f_lo = F(lo);
    width *= 4;
  }

  Real best = lo;
  Real best_residual = abs(f_lo);
  constexpr std::size_t kMaxBisections = 100000;
  while (best_residual > tol) {
    const Real mid = (lo + hi) / 2;
    if (mid <= lo || mid >= hi) break;
    const Real f_mid = F(mid);
    ++est.bisection_steps;
    if (f_mid > 0) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (abs(f_mid) < best_residual) {
      best = mid;
      best_residual = abs(f_mid);
    }
    require(est.bisection_steps < kMaxBisections, ErrorCode::no_convergence, "bisection did not converge");
  }
  require(best_residual <= tol, ErrorCode::no_convergence,
          "rho_k residual " + format_real(best_residual, 3) + " stayed above tolerance");

  est.rho = best;
  est.bracket_lo = lo;
  est.bracket_hi = hi;
  est.residual = best_residual;
  return est;
}

template <class Real>
struct RoucheWitness {
  unsigned k = 0;
  std::size_t samples = 0;
  Real max_g{};           // sampled max |g| on |z| = 3/5
  Real tail_bound{};      // truncation bound added to max_g
  Real analytic_g_bound{};  // 1.6 * 0.6^k / (1 - 0.6^k)^2
  Real min_f{};           // sampled min |1 - z/(1-z)|
  Real min_f_angle{};     // argument of the sample attaining min_f
  Real analytic_f_bound{};  // 1/2
  bool verdict = false;   // max_g + tail_bound < min_f
};

/// Numeric check of |g| < |f| on |z| = 3/5 with f = 1 - z/(1-z).
template <class Real = Float50>
RoucheWitness<Real> rouche_witness(unsigned k, std::size_t samples = 4096) {
  using boost::math::constants::pi;
  using std::abs;
  using std::cos;
  using std::sin;
  require(k >= 4, ErrorCode::refused,
          "the circle |z| = 3/5 separation is only established for k >= 4, got k = " + std::to_string(k));
  require(samples >= 1024, ErrorCode::invalid_argument, "at least 1024 sample points are required");

  const Real radius = Real(3) / 5;
  const Real tol = default_tolerance<Real>();
  const Complex<Real> one(Real(1));
  RoucheWitness<Real> w;
  w.k = k;
  w.samples = samples;
  const Real rk = detail::pow_int(radius, k);
  w.analytic_g_bound = Real(8) / 5 * rk / ((1 - rk) * (1 - rk));
  w.analytic_f_bound = Real(1) / 2;
  bool first = true;
  for (std::size_t i = 0; i < samples; ++i) {
    const Real theta = 2 * pi<Real>() * Real(i) / Real(samples);
    const Complex<Real> z(radius * cos(theta), radius * sin(theta));
    const auto g = g_eval_complex<Real>(z, k, tol);
    const Real g_abs = abs(g.value);
    const Real f_abs = abs(one - z / (one - z));
    if (first || g_abs > w.max_g) w.max_g = g_abs;
    if (first || f_abs < w.min_f) {
      w.min_f = f_abs;
      w.min_f_angle = theta;
    }
    const Real tail = real(g.tail_bound);
    if (tail > w.tail_bound) w.tail_bound = tail;
    first = false;
  }
  w.verdict = w.max_g + w.tail_bound < w.min_f;
  return w;
}

template <class Real>
struct ResidueEstimate {
  std::size_t n = 0;
  unsigned k = 0;
  Real count{};         // -rho^{-n-1} / D_k'(rho)
  Real derivative{};    // D_k'(rho)
  Real leading_form{};  // rho^{-n-1} (1 - rho)^2
  Real ratio{};         // count / leading_form = 1 + eps(k)
};

/// Residue approximation of C_n^<k> at the dominant pole.
template <class Real>
ResidueEstimate<Real> residue_count(std::size_t n, const PoleEstimate<Real>& pole) {
  require(n >= 1, ErrorCode::invalid_argument, "composition size n must be >= 1");
  ResidueEstimate<Real> r;
  r.n = n;
  r.k = pole.k;
  const Real tol = default_tolerance<Real>() / 1000;
  r.derivative = denominator_derivative(pole.rho, pole.k, tol);
  const Real scale = detail::pow_int(Real(1) / pole.rho, n + 1);
  r.count = -scale / r.derivative;
  r.leading_form = scale * (1 - pole.rho) * (1 - pole.rho);
  r.ratio = r.count / r.leading_form;
  return r;
}

enum class LawRegion { central, left_tail, right_tail };

constexpr std::string_view to_string(LawRegion r) noexcept {
  switch (r) {
    case LawRegion::central: return "central";
    case LawRegion::left_tail: return "left-tail";
    case LawRegion::right_tail: return "right-tail";
  }
  return "unknown";
}

template <class Real>
struct AsymptoticLaw {
  std::size_t n = 0;
  long k = 0;
  long h = 0;          // k - floor(lg n)
  Real omega{};        // 2^{frac(lg n)} = n / 2^{floor(lg n)}
  Real probability{};  // exp(-n / 2^{k+2})
  LawRegion region = LawRegion::central;
  // central: log n / sqrt n (relative error scale);
  // left tail: exp(-n^{1/4} / 4); right tail: 2^{-y} / n with y = k - 2 lg n.
  Real error_bound{};
};

namespace detail {

template <class Real>
AsymptoticLaw<Real> classify_law(std::size_t n, long k) {
  using std::exp;
  using std::log;
  using std::pow;
  using std::sqrt;
  AsymptoticLaw<Real> law;
  law.n = n;
  law.k = k;
  const auto fl = static_cast<long>(floor_lg(n));
  law.h = k - fl;
  law.omega = Real(n) / detail::pow_int(Real(2), static_cast<std::size_t>(fl));
  const Real lgn = lg(Real(n));
  const Real kr = Real(k);
  if (4 * kr < 3 * lgn) {
    law.region = LawRegion::left_tail;
    law.error_bound = exp(-sqrt(sqrt(Real(n))) / 4);
  } else if (kr > 2 * lgn) {
    law.region = LawRegion::right_tail;
    const Real y = kr - 2 * lgn;
    law.error_bound = pow(Real(2), -y) / Real(n);
  } else {
    law.region = LawRegion::central;
    law.error_bound = log(Real(n)) / sqrt(Real(n));
  }
  return law;
}

template <class Real>
Real pow2_signed(long e) {
  return e >= 0 ? pow_int(Real(2), static_cast<std::size_t>(e))
                : Real(1) / pow_int(Real(2), static_cast<std::size_t>(-e));
}

}  // namespace detail

/// k-form of the double-exponential law: P(L < k) ~ exp(-n / 2^{k+2}).
template <class Real = Float50>
AsymptoticLaw<Real> law_probability(std::size_t n, long k) {
  using std::exp;
  require(n >= 2, ErrorCode::invalid_argument, "the law needs n >= 2");
  require(k >= 1, ErrorCode::invalid_argument, "run bound k must be >= 1");
  auto law = detail::classify_law<Real>(n, k);
  law.probability = exp(-Real(n) / detail::pow2_signed<Real>(k + 2));
  return law;
}

/// h-form: P(L < floor(lg n) + h) ~ exp(-omega(n) 2^{-h-2}).
template <class Real = Float50>
AsymptoticLaw<Real> law_probability_h(std::size_t n, long h) {
  using std::exp;
  require(n >= 2, ErrorCode::invalid_argument, "the law needs n >= 2");
  const long k = static_cast<long>(detail::floor_lg(n)) + h;
  require(k >= 1, ErrorCode::invalid_argument, "floor(lg n) + h must be >= 1");
  auto law = detail::classify_law<Real>(n, k);
  law.probability = exp(-law.omega / detail::pow2_signed<Real>(h + 2));
  return law;
}

/// Phi(x) = sum_{h>=0} (1 - exp(-x / 2^h)); tail after H terms <= x / 2^H.
template <class Real = Float50>
TailBoundedValue<Real> phi(const Real& x, Real tol = default_tolerance<Real>()) {
  require(x > 0, ErrorCode::invalid_argument, "Phi needs x > 0");
  TailBoundedValue<Real> out;
  Real t = x;
  for (std::size_t h = 0;; ++h) {
    out.value -= boost::math::expm1(-t);
    t /= 2;
    out.terms = h + 1;
    out.tail_bound = 2 * t;  // x / 2^h with h the last index used
    if (out.tail_bound < tol) return out;
  }
}

/// Psi(x) = sum_{h>=0} (2h - 1)(1 - exp(-x / 2^h)); tail after index H is
/// at most x (2H + 3) / 2^H.
template <class Real = Float50>
TailBoundedValue<Real> psi_big(const Real& x, Real tol = default_tolerance<Real>()) {
  require(x > 0, ErrorCode::invalid_argument, "Psi needs x > 0");
  TailBoundedValue<Real> out;
  Real t = x;
  for (std::size_t h = 0;; ++h) {
    out.value -= Real(2 * static_cast<long>(h) - 1) * boost::math::expm1(-t);
    out.terms = h + 1;
    out.tail_bound = t * Real(2 * h + 3);
    t /= 2;
    if (out.tail_bound < tol) return out;
  }
}

/// Mathematical constants of the mean and variance asymptotics.
template <class Real = Float50>
struct MomentConstants {
  static Real gamma_over_log2() {
    return boost::math::constants::euler<Real>() / boost::math::constants::ln_two<Real>();
  }
  /// gamma / log 2 - 5/2
  static Real mean_offset() { return gamma_over_log2() - Real(5) / 2; }
  /// 1/12 + pi^2 / (6 log^2 2)
  static Real variance_constant() {
    using boost::math::constants::ln_two;
    using boost::math::constants::pi;
    const Real l = ln_two<Real>();
    return Real(1) / 12 + pi<Real>() * pi<Real>() / (6 * l * l);
  }
};

/// Precomputed Fourier coefficients of the fluctuations
///
///   P(w) = -(1/log 2) sum_{k != 0} Gamma(chi_k) e^{-2 i k pi w},
///   Q(w) = (2/log^2 2) sum_{k != 0} psi(chi_k) Gamma(chi_k) e^{-2 i k pi w},
///
/// chi_k = 2 i k pi / log 2, truncated to 1 <= |k| <= K. Immutable after
/// construction, so one instance can serve concurrent evaluations.
template <class Real = Float50>
class FluctuationSeries {
 public:
  static constexpr std::size_t kDefaultTerms = 16;

  explicit FluctuationSeries(std::size_t terms = kDefaultTerms) : terms_(terms) {
    using boost::math::constants::ln_two;
    using boost::math::constants::pi;
    require(terms >= 1, ErrorCode::invalid_argument, "Fourier truncation K must be >= 1");
    for (std::size_t k = 1; k <= terms; ++k) {
      for (int sign : {1, -1}) {
        const Complex<Real> chi(Real(0), Real(sign) * 2 * Real(k) * pi<Real>() / ln_two<Real>());
        Coefficient c;
        c.index = sign * static_cast<long>(k);
        c.gamma = complex_gamma<Real>(chi);
        c.psi_gamma = complex_digamma<Real>(chi) * c.gamma;
        coefficients_.push_back(c);
      }
    }
  }

  std::size_t terms() const noexcept { return terms_; }

  struct Value {
    Real value{};
    Real imaginary_residual{};  // |Im| of the symmetric sum before taking Re
  };

  Value P(const Real& w) const {
    using boost::math::constants::ln_two;
    return evaluate(w, [](const Coefficient& c) { return c.gamma; }, -1 / ln_two<Real>());
  }

  Value Q(const Real& w) const {
    using boost::math::constants::ln_two;
    const Real l = ln_two<Real>();
    return evaluate(w, [](const Coefficient& c) { return c.psi_gamma; }, 2 / (l * l));
  }

 private:
  struct Coefficient {
    long index = 0;
    Complex<Real> gamma;
    Complex<Real> psi_gamma;
  };

  template <class Pick>
  Value evaluate(const Real& w, Pick pick, const Real& scale) const {
    using boost::math::constants::pi;
    using std::abs;
    using std::cos;
    using std::sin;
    Complex<Real> sum(Real(0));
    for (const auto& c : coefficients_) {
      const Real angle = -2 * Real(c.index) * pi<Real>() * w;
      sum += pick(c) * Complex<Real>(cos(angle), sin(angle));
    }
    Value v;
    v.value = scale * real(sum);
    v.imaginary_residual = abs(scale * imag(sum));
    require(v.imaginary_residual < Real(1) / Real(1000000000000LL), ErrorCode::numeric,
            "conjugate Fourier terms failed to cancel");
    return v;
  }

  std::size_t terms_;
  std::vector<Coefficient> coefficients_;
};

template <class Real = Float50>
Real fourier_P(const Real& w, std::size_t terms = FluctuationSeries<Real>::kDefaultTerms) {
  return FluctuationSeries<Real>(terms).P(w).value;
}

template <class Real = Float50>
Real fourier_Q(const Real& w, std::size_t terms = FluctuationSeries<Real>::kDefaultTerms) {
  return FluctuationSeries<Real>(terms).Q(w).value;
}

/// Smooth part removed from Phi: Phi(x) - (lg x + gamma/log 2 + 1/2) -> P(lg x).
template <class Real = Float50>
Real phi_fluctuation(const Real& x) {
  return phi(x).value - detail::lg(x) - MomentConstants<Real>::gamma_over_log2() - Real(1) / 2;
}

/// Q(lg x) recovered from the direct sums alone:
/// Psi(x) - [lg^2 x + lg x (2 gamma/log 2 - 1 + 2P) - 2/3 + (pi^2 + 6 gamma^2)/(6 log^2 2)
///           - gamma/log 2 - P], with P taken from phi_fluctuation.
template <class Real = Float50>
Real psi_fluctuation(const Real& x) {
  using boost::math::constants::ln_two;
  using boost::math::constants::pi;
  const Real l = ln_two<Real>();
  const Real c = MomentConstants<Real>::gamma_over_log2();
  const Real p = phi_fluctuation(x);
  const Real u = detail::lg(x);
  const Real smooth = u * u + u * (2 * c - 1 + 2 * p) - Real(2) / 3 +
                      (pi<Real>() * pi<Real>()) / (6 * l * l) + c * c - c - p;
  return psi_big(x).value - smooth;
}

/// The two curves of the mean/variance "constant parts", at size x:
/// mean: Phi(x/4) - lg x - 1, variance: Psi(x/4) + 1 - (Phi(x/4) - 1)^2.
template <class Real = Float50>
struct ConstantParts {
  Real mean{};
  Real variance{};
};

template <class Real = Float50>
ConstantParts<Real> constant_parts(const Real& x) {
  const Real quarter = x / 4;
  const Real ph = phi(quarter).value - 1;
  ConstantParts<Real> out;
  out.mean = ph - detail::lg(x);
  out.variance = psi_big(quarter).value + 1 - ph * ph;
  return out;
}

template <class Real>
struct MomentReport {
  std::size_t n = 0;
  Real mean_asym{};          // lg n + gamma/log 2 - 5/2 + P(lg n)
  Real var_asym{};           // 1/12 + pi^2/(6 log^2 2) + Q - (2 gamma/log 2) P - P^2
  Real phi_mean{};           // Phi(n/4) - 1
  Real psi_second_moment{};  // Psi(n/4) + 1
  Real phi_psi_variance{};   // psi_second_moment - phi_mean^2
  Real fluctuation_P{};
  Real fluctuation_Q{};
  std::size_t fourier_terms = 0;
};

template <class Real = Float50>
MomentReport<Real> moment_report(std::size_t n, const FluctuationSeries<Real>& series) {
  require(n >= 2, ErrorCode::invalid_argument, "moment asymptotics need n >= 2");
  const Real lgn = detail::lg(Real(n));
  const Real c = MomentConstants<Real>::gamma_over_log2();
  MomentReport<Real> m;
  m.n = n;
  m.fourier_terms = series.terms();
  m.fluctuation_P = series.P(lgn).value;
  m.fluctuation_Q = series.Q(lgn).value;
  const Real& p = m.fluctuation_P;
  m.mean_asym = lgn + MomentConstants<Real>::mean_offset() + p;
  m.var_asym = MomentConstants<Real>::variance_constant() + m.fluctuation_Q - 2 * c * p - p * p;
  const Real quarter = Real(n) / 4;
  m.phi_mean = phi(quarter).value - 1;
  m.psi_second_moment = psi_big(quarter).value + 1;
  m.phi_psi_variance = m.psi_second_moment - m.phi_mean * m.phi_mean;
  return m;
}

template <class Real = Float50>
MomentReport<Real> moment_report(std::size_t n, std::size_t terms = FluctuationSeries<Real>::kDefaultTerms) {
  return moment_report<Real>(n, FluctuationSeries<Real>(terms));
}

/// Leading-order prediction E_n(L_r) ~ lg n / r.
template <class Real = Float50>
Real expected_run_of_r(std::size_t n, std::size_t r) {
  require(n >= 2, ErrorCode::invalid_argument, "the prediction needs n >= 2");
  require(r >= 1, ErrorCode::invalid_argument, "part value r must be >= 1");
  return detail::lg(Real(n)) / Real(r);
}

}  // namespace comprun
