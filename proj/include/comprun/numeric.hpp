#pragma once

// Number types shared by every module and locale-independent decimal
// rendering for exact and floating values.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <array>
#include <charconv>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <ios>
#include <limits>
#include <string>
#include <system_error>
#include <type_traits>

namespace comprun {

namespace bmp = boost::multiprecision;

using BigInt = bmp::mpz_int;
using Rational = bmp::mpq_rational;

template <unsigned Digits10>
using Float = bmp::number<bmp::cpp_bin_float<Digits10>, bmp::et_off>;

/// Default working precision for the asymptotic numerics.
using Float50 = Float<50>;

namespace detail {
template <class Real>
struct complex_of {
  using type = typename bmp::complex_result_from_scalar<Real>::type;
};
template <>
struct complex_of<double> {
  using type = std::complex<double>;
};
}  // namespace detail

template <class Real>
using Complex = typename detail::complex_of<Real>::type;

template <class Real>
constexpr int digits10_of() {
  return std::numeric_limits<Real>::digits10;
}

/// 10^(-e) computed in the target type without a detour through double.
template <class Real>
Real pow10_neg(int e) {
  Real r = 1;
  const Real ten = 10;
  for (int i = 0; i < e; ++i) r /= ten;
  return r;
}

inline BigInt pow2(std::size_t e) {
  BigInt r = 1;
  r <<= e;
  return r;
}

inline BigInt pow10(std::size_t e) {
  BigInt r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= 10;
  return r;
}

/// Renders q with exactly `places` fractional digits, rounding half away
/// from zero.
inline std::string to_decimal(const Rational& q, std::size_t places) {
  BigInt num = bmp::numerator(q);
  const BigInt den = bmp::denominator(q);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt scaled = num * pow10(places);
  BigInt quotient = scaled / den;
  const BigInt remainder = scaled - quotient * den;
  if (2 * remainder >= den) quotient += 1;

  std::string digits = quotient.str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = negative && quotient != 0 ? "-" : "";
  out += digits.substr(0, digits.size() - places);
  if (places > 0) {
    out += '.';
    out += digits.substr(digits.size() - places);
  }
  return out;
}

/// Drops trailing fractional zeros but keeps one digit after the point
/// ("1.000" -> "1.0", "0.500" -> "0.5").
inline std::string trim_decimal(std::string s) {
  const auto dot = s.find('.');
  if (dot == std::string::npos) return s;
  auto last = s.find_last_not_of('0');
  if (last == dot) ++last;
  s.erase(last + 1);
  return s;
}

inline std::string to_short_decimal(const Rational& q, std::size_t places) {
  return trim_decimal(to_decimal(q, places));
}

inline std::string rational_string(const Rational& q) {
  return bmp::numerator(q).str() + "/" + bmp::denominator(q).str();
}

/// Scientific rendering with `digits` significant digits.
template <class Real>
std::string format_real(const Real& x, int digits) {
  if constexpr (std::is_floating_point_v<Real>) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                   std::chars_format::scientific, digits - 1);
    return std::string(buf.data(), res.ptr);
  } else {
    return x.str(digits, std::ios_base::scientific);
  }
}

/// Exact conversion of a rational into a floating type.
template <class Real>
Real to_real(const Rational& q) {
  if constexpr (std::is_floating_point_v<Real>) {
    return q.template convert_to<Real>();
  } else {
    return Real(Real(bmp::numerator(q)) / Real(bmp::denominator(q)));
  }
}

}  // namespace comprun
