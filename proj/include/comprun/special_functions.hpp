#pragma once

// Complex Gamma and digamma at arbitrary working precision.
//
// Both shift the argument up by an integer N until |z + N| is large enough
// for the Stirling series to reach full precision, then undo the shift with
// the recurrences Gamma(z+1) = z Gamma(z) and psi(z+1) = psi(z) + 1/z.
// Arguments with negative real part go through the reflection formulas.

#include <comprun/error.hpp>
#include <comprun/numeric.hpp>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bernoulli.hpp>

#include <cmath>
#include <cstddef>
#include <limits>

namespace comprun {

namespace detail {

template <class Real>
Real stirling_radius() {
  // Smallest Stirling term is about exp(-2 pi |z|); 0.5 digits + 10 leaves margin.
  return Real(digits10_of<Real>() / 2 + 10);
}

template <class Real>
std::size_t stirling_shift(const Complex<Real>& z) {
  const Real radius = stirling_radius<Real>();
  if (abs(z) >= radius) return 0;
  const Real need = radius - real(z);
  if (need <= 0) return 0;
  return static_cast<std::size_t>(ceil(need));
}

template <class Real>
bool near_nonpositive_integer(const Complex<Real>& z) {
  using std::abs;
  using std::round;
  const Real re = real(z);
  if (re > Real(0.5)) return false;
  const Real nearest = round(re);
  const Complex<Real> gap = z - Complex<Real>(nearest);
  return abs(gap) < pow10_neg<Real>(digits10_of<Real>() - 2);
}

// Stirling series for log Gamma(w), valid for large |w| off the negative axis.
template <class Real>
Complex<Real> log_gamma_stirling(const Complex<Real>& w) {
  using boost::math::constants::pi;
  const Real eps = pow10_neg<Real>(digits10_of<Real>() + 2);
  const Complex<Real> half(Real(1) / 2);
  Complex<Real> sum = (w - half) * log(w) - w + Complex<Real>(log(2 * pi<Real>()) / 2);
  const Complex<Real> w2 = w * w;
  Complex<Real> power = w;  // w^(2m-1)
  for (int m = 1; m < 500; ++m) {
    const Real b = boost::math::bernoulli_b2n<Real>(m);
    const Complex<Real> term = Complex<Real>(b / (Real(2 * m) * Real(2 * m - 1))) / power;
    sum += term;
    if (abs(term) < eps * abs(sum)) return sum;
    power *= w2;
  }
  throw Error(ErrorCode::no_convergence, "Stirling series for log Gamma did not converge");
}

// Asymptotic series psi(w) ~ log w - 1/(2w) - sum B_2m / (2m w^2m).
template <class Real>
Complex<Real> digamma_asymptotic(const Complex<Real>& w) {
  const Real eps = pow10_neg<Real>(digits10_of<Real>() + 2);
  Complex<Real> sum = log(w) - Complex<Real>(Real(1) / 2) / w;
  const Complex<Real> w2 = w * w;
  Complex<Real> power = w2;
  for (int m = 1; m < 500; ++m) {
    const Real b = boost::math::bernoulli_b2n<Real>(m);
    const Complex<Real> term = Complex<Real>(b / Real(2 * m)) / power;
    sum -= term;
    if (abs(term) < eps * abs(sum)) return sum;
    power *= w2;
  }
  throw Error(ErrorCode::no_convergence, "asymptotic series for digamma did not converge");
}

}  // namespace detail

template <class Real>
Complex<Real> complex_gamma(const Complex<Real>& z) {
  using boost::math::constants::pi;
  require(!detail::near_nonpositive_integer<Real>(z), ErrorCode::invalid_argument,
          "Gamma has a pole at nonpositive integers");
  if (real(z) < 0) {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    const Complex<Real> one(Real(1));
    return Complex<Real>(pi<Real>()) / (sin(Complex<Real>(pi<Real>()) * z) * complex_gamma<Real>(one - z));
  }
  const std::size_t shift = detail::stirling_shift<Real>(z);
  Complex<Real> product(Real(1));
  for (std::size_t j = 0; j < shift; ++j) product *= z + Complex<Real>(Real(j));
  const Complex<Real> shifted = z + Complex<Real>(Real(shift));
  return exp(detail::log_gamma_stirling<Real>(shifted)) / product;
}

template <class Real>
Complex<Real> complex_digamma(const Complex<Real>& z) {
  using boost::math::constants::pi;
  require(!detail::near_nonpositive_integer<Real>(z), ErrorCode::invalid_argument,
          "digamma has a pole at nonpositive integers");
  if (real(z) < 0) {
    // psi(1 - z) - psi(z) = pi cot(pi z)
    const Complex<Real> one(Real(1));
    const Complex<Real> arg = Complex<Real>(pi<Real>()) * z;
    return complex_digamma<Real>(one - z) - Complex<Real>(pi<Real>()) * cos(arg) / sin(arg);
  }
  const std::size_t shift = detail::stirling_shift<Real>(z);
  Complex<Real> correction(Real(0));
  for (std::size_t j = 0; j < shift; ++j) correction += Complex<Real>(Real(1)) / (z + Complex<Real>(Real(j)));
  const Complex<Real> shifted = z + Complex<Real>(Real(shift));
  return detail::digamma_asymptotic<Real>(shifted) - correction;
}

}  // namespace comprun
