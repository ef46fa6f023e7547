#include <comprun/special_functions.hpp>

#include <boost/math/constants/constants.hpp>
#include <gtest/gtest.h>

#include <string>

namespace comprun {
namespace {

using R = Float50;
using C = Complex<R>;

// Reference values computed once with mpmath at 60 digits.
R real_of(const char* s) { return R(s); }

void expect_close(const C& got, const char* re, const char* im, const R& rel_tol, const std::string& what) {
  const C want(real_of(re), real_of(im));
  const R err = abs(got - want) / abs(want);
  EXPECT_LT(err, rel_tol) << what << ": got " << format_real(real(got), 40) << " + "
                          << format_real(imag(got), 40) << " i, rel err " << format_real(err, 3);
}

const R kTight("1e-40");

R chi1() { return 2 * boost::math::constants::pi<R>() / boost::math::constants::ln_two<R>(); }

TEST(ComplexGamma, FrozenReferenceValues) {
  expect_close(complex_gamma<R>(C(R(0), chi1())), "-4.17675105253052055983061619432573818815e-7",
               "-3.50438021892798566583677701154644076301e-7", R("1e-38"), "Gamma(chi_1)");  // 39-digit reference
  expect_close(complex_gamma<R>(C(R(3), R(4))), "0.00522553847136921419473151035610324885032925169",
               "-0.17254707929430018771913090143020809949317663", kTight, "Gamma(3+4i)");
  expect_close(complex_gamma<R>(C(R(-2.5), R(0.5))), "-0.333875203522432337403277270339565588072706348",
               "-0.206457307963608414918287607563872988383466877", kTight, "Gamma(-2.5+0.5i)");
}

TEST(ComplexGamma, RealArguments) {
  using boost::math::constants::pi;
  EXPECT_LT(abs(complex_gamma<R>(C(R(1))) - C(R(1))), kTight);
  EXPECT_LT(abs(complex_gamma<R>(C(R(5))) - C(R(24))), kTight * 24);
  EXPECT_LT(abs(complex_gamma<R>(C(R(1) / 2)) - C(sqrt(pi<R>()))), kTight);
}

TEST(ComplexGamma, RecurrenceHolds) {
  for (const C& z : {C(R(0.3), R(7)), C(R(-4.2), R(1.1)), C(R(12), R(-3)), C(R(0), R(-20))}) {
    const C lhs = complex_gamma<R>(z + C(R(1)));
    const C rhs = z * complex_gamma<R>(z);
    EXPECT_LT(abs(lhs - rhs) / abs(rhs), kTight);
  }
}

TEST(ComplexGamma, ModulusOnImaginaryAxis) {
  using boost::math::constants::pi;
  for (const R& y : {R(0.5), R(3), chi1(), 2 * chi1()}) {
    const C g = complex_gamma<R>(C(R(0), y));
    const R want = pi<R>() / (y * sinh(pi<R>() * y));
    EXPECT_LT(abs(norm(g) - want) / want, kTight);
  }
}

TEST(ComplexGamma, RejectsPoles) {
  EXPECT_THROW(complex_gamma<R>(C(R(0))), Error);
  EXPECT_THROW(complex_gamma<R>(C(R(-3))), Error);
  EXPECT_NO_THROW(complex_gamma<R>(C(R(-3), R("1e-10"))));
}

TEST(ComplexGamma, DoublePrecisionInstance) {
  const auto g = complex_gamma<double>(std::complex<double>(3, 4));
  EXPECT_NEAR(g.real(), 0.00522553847136921419, 1e-14);
  EXPECT_NEAR(g.imag(), -0.17254707929430018772, 1e-14);
}

TEST(ComplexDigamma, FrozenReferenceValues) {
  expect_close(complex_digamma<R>(C(R(0), chi1())), "2.20540539656601299661642671349865194828048523",
               "1.62595522683305951758043637745902892586661557", kTight, "psi(chi_1)");
  expect_close(complex_digamma<R>(C(R(-2.5), R(0.5))), "1.11650802196990730143776677822704785083537613",
               "2.71758259690059151573585557983705863560222016", kTight, "psi(-2.5+0.5i)");
}

TEST(ComplexDigamma, EulerConstantAndImaginaryPart) {
  using boost::math::constants::euler;
  using boost::math::constants::pi;
  EXPECT_LT(abs(complex_digamma<R>(C(R(1))) + C(euler<R>())), kTight);
  for (const R& y : {R(0.25), R(2), chi1()}) {
    const R want = 1 / (2 * y) + pi<R>() / 2 / tanh(pi<R>() * y);
    EXPECT_LT(abs(imag(complex_digamma<R>(C(R(0), y))) - want), kTight);
  }
}

TEST(ComplexDigamma, RecurrenceAndReflection) {
  using boost::math::constants::pi;
  const C one(R(1));
  for (const C& z : {C(R(0.7), R(2)), C(R(-6.3), R(0.2)), C(R(30), R(9))}) {
    EXPECT_LT(abs(complex_digamma<R>(z + one) - complex_digamma<R>(z) - one / z), kTight);
    const C arg = C(pi<R>()) * z;
    const C reflected = complex_digamma<R>(one - z) - complex_digamma<R>(z) - C(pi<R>()) * cos(arg) / sin(arg);
    EXPECT_LT(abs(reflected), kTight * 10);
  }
}

}  // namespace
}  // namespace comprun
