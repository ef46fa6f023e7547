#include <comprun/asymptotics.hpp>
#include <comprun/series.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

namespace comprun {
namespace {

using R = Float50;

const R kTight("1e-38");

void expect_near(const R& got, const char* want, const R& tol, const std::string& what) {
  const R err = abs(got - R(want));
  EXPECT_LT(err, tol) << what << ": got " << format_real(got, 45) << ", err " << format_real(err, 3);
}

TEST(GSeries, FrozenValues) {
  const R tol("1e-45");
  const auto g4 = g_eval(R(1) / 2, 4, tol);
  expect_near(g4.value, "0.0365034768404260607155804055726577345354879096", kTight, "g_4(1/2)");
  EXPECT_LT(g4.tail_bound, tol);
  const auto g2 = g_eval(R(3) / 5, 2, tol);
  expect_near(g2.value, "0.382418912990438899950262653837158682227367099", kTight, "g_2(3/5)");
  // h(3/5) - g_2(3/5) = 1.1176 > 1 puts the pole below 3/5.
  EXPECT_GT(R(3) / 2 - g2.value, R(1));
}

TEST(GSeries, FirstTermDominatesForLargeK) {
  for (unsigned k : {8U, 16U, 30U}) {
    const R z = R(1) / 2;
    const R first = detail::pow_int(z, k) * (1 - z) / (1 - detail::pow_int(z, k));
    const R g = g_eval(z, k, R("1e-45")).value;
    EXPECT_GT(g, first);
    EXPECT_LT((g - first) / first, detail::pow_int(z, k - 1));
  }
}

TEST(GSeries, DerivativeMatchesCentralDifference) {
  const R tol("1e-45");
  const R e("1e-12");
  for (unsigned k : {2U, 3U, 7U}) {
    for (const R& z : {R(0.3), R(0.55), R(0.8)}) {
      const R fd = (g_eval(z + e, k, tol).value - g_eval(z - e, k, tol).value) / (2 * e);
      const auto d = g_derivative(z, k, tol);
      EXPECT_LT(abs(d.value - fd), R("1e-18")) << "k=" << k;
      EXPECT_LT(d.tail_bound, tol);
    }
  }
}

TEST(GSeries, RejectsBadArguments) {
  EXPECT_THROW(g_eval(R(0), 3, R("1e-20")), Error);
  EXPECT_THROW(g_eval(R(1), 3, R("1e-20")), Error);
  EXPECT_THROW(g_eval(R(0.5), 1, R("1e-20")), Error);
}

TEST(Pole, FrozenValues) {
  const R tol("1e-44");
  expect_near(solve_rho<R>(2, tol).rho, "0.571349793158087643112217904891974600326555327", kTight, "rho_2");
  expect_near(solve_rho<R>(3, tol).rho, "0.523350889267582675903810958398657378628334426", kTight, "rho_3");
  expect_near(solve_rho<R>(4, tol).rho, "0.509595346067288937826983118083521092971780315", kTight, "rho_4");
  expect_near(solve_rho<R>(10, tol).rho, "0.500122609654355213208108196096584421854476205", kTight, "rho_10");
}

TEST(Pole, BracketResidualAndMonotonicity) {
  const R tol("1e-40");
  R previous = 1;
  for (unsigned k = 2; k <= 64; ++k) {
    const auto est = solve_rho<R>(k, tol);
    EXPECT_LE(est.bracket_lo, est.rho);
    EXPECT_LE(est.rho, est.bracket_hi);
    EXPECT_LE(est.residual, tol);
    EXPECT_GT(est.rho, R(1) / 2);
    EXPECT_LT(est.rho, R(3) / 5);
    EXPECT_LT(est.rho, previous) << "k=" << k;
    EXPECT_EQ(est.isolation_proven, k >= 4);
    const R g_half = g_eval(R(1) / 2, k, R("1e-45")).value;
    EXPECT_LT(abs(est.first_iterate - (1 + g_half) / (2 + g_half)), kTight);
    EXPECT_LE(est.first_iterate, est.rho);
    previous = est.rho;
  }
}

TEST(Pole, FirstOrderExpansionForLargeK) {
  const auto est = solve_rho<R>(60, R("1e-40"));
  const R gap = est.rho - R(1) / 2;
  const R predicted = est.first_order - R(1) / 2;
  EXPECT_LT(abs(gap / predicted - 1), R("1e-3"));
}

TEST(Pole, MatchesRatioOfExactCarlitzCounts) {
  const auto counts = series_reciprocal(denominator_series(2, 401));
  const R rho = solve_rho<R>(2, R("1e-40")).rho;
  for (std::size_t n : {200U, 300U, 400U}) {
    const R ratio = counts[n].convert_to<R>() / counts[n + 1].convert_to<R>();
    EXPECT_LT(abs(ratio - rho), R("1e-20")) << "n=" << n;
  }
}

TEST(Pole, SecondOrderDeviationStaysBounded) {
  // |rho_k - first_order| / (k 4^-k) sits in a narrow band for k = 8..40.
  for (unsigned k : {8U, 12U, 20U, 30U, 40U}) {
    const auto est = solve_rho<R>(k, R("1e-45"));
    const R scaled = abs(est.rho - est.first_order) * detail::pow_int(R(4), k) / R(k);
    EXPECT_GT(scaled, R(0.03)) << "k=" << k;
    EXPECT_LT(scaled, R(0.07)) << "k=" << k;
  }
}

TEST(Pole, RejectsBadArguments) {
  try {
    solve_rho<R>(1);
    FAIL() << "k = 1 accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_argument);
  }
  try {
    solve_rho<R>(5, R("1e-49"));
    FAIL() << "infeasible tolerance accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::infeasible_tolerance);
  }
}

TEST(Rouche, WitnessForSeveralK) {
  for (unsigned k : {4U, 10U, 20U}) {
    const auto w = rouche_witness<R>(k);
    EXPECT_TRUE(w.verdict) << "k=" << k;
    EXPECT_LE(w.max_g, w.analytic_g_bound);
    EXPECT_GE(w.min_f + R("1e-30"), w.analytic_f_bound);
    EXPECT_EQ(w.samples, 4096U);
  }
  const auto w4 = rouche_witness<R>(4);
  EXPECT_LT(abs(w4.max_g - R(0.2521)), R(0.001));
}

TEST(Rouche, RefusesUnprovenRange) {
  try {
    rouche_witness<R>(3);
    FAIL() << "k = 3 accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::refused);
  }
  EXPECT_THROW(rouche_witness<R>(6, 1000), Error);
}

TEST(Residue, ApproximatesExactCount) {
  const auto pole = solve_rho<R>(5, R("1e-40"));
  const auto res = residue_count<R>(100, pole);
  const R exact = count_below(100, 5).convert_to<R>();
  EXPECT_LT(abs(res.count / exact - 1), R("1e-3"));
  EXPECT_LT(res.derivative, R(0));
}

TEST(Law, DoubleExponentialForm) {
  using std::exp;
  const auto at_scale = law_probability<R>(std::size_t{1} << 12, 10);
  EXPECT_LT(abs(at_scale.probability - exp(R(-1))), kTight);

  const auto mid = law_probability<R>(500, 9);
  EXPECT_EQ(mid.region, LawRegion::central);
  EXPECT_LT(abs(mid.probability - exp(R(-500) / 2048)), kTight);
  EXPECT_EQ(mid.h, 1);
}

TEST(Law, KAndHFormsAgree) {
  for (std::size_t n : {100U, 777U, 4096U, 100000U}) {
    for (long h = -3; h <= 4; ++h) {
      const long k = static_cast<long>(detail::floor_lg(n)) + h;
      if (k < 1) continue;
      const auto a = law_probability<R>(n, k);
      const auto b = law_probability_h<R>(n, h);
      EXPECT_LT(abs(a.probability - b.probability), kTight) << "n=" << n << " h=" << h;
      EXPECT_EQ(a.region, b.region);
    }
  }
}

TEST(Law, Regions) {
  EXPECT_EQ(law_probability<R>(1024, 5).region, LawRegion::left_tail);
  EXPECT_EQ(law_probability<R>(1024, 12).region, LawRegion::central);
  EXPECT_EQ(law_probability<R>(1024, 25).region, LawRegion::right_tail);
  EXPECT_EQ(to_string(LawRegion::left_tail), "left-tail");
  EXPECT_THROW(law_probability<R>(1, 3), Error);
}

TEST(HarmonicSums, PhiShiftIdentity) {
  using std::exp;
  for (const R& x : {R(0.5), R(3), R(1000)}) {
    const R lhs = phi(2 * x).value;
    const R rhs = phi(x).value + 1 - exp(-2 * x);
    EXPECT_LT(abs(lhs - rhs), R("1e-38"));
  }
}

TEST(HarmonicSums, PsiAtSmallArgument) {
  // For small x each term is (2h - 1) x / 2^h, and those weights sum to 2.
  const R x("1e-20");
  EXPECT_LT(abs(psi_big(x).value / (2 * x) - 1), R("1e-15"));
}

TEST(Fluctuations, PeriodicSmallAndCentred) {
  const FluctuationSeries<R> series;
  R max_p = 0;
  R max_q = 0;
  R mean_p = 0;
  constexpr int grid = 64;
  for (int i = 0; i < grid; ++i) {
    const R w = R(i) / grid;
    const R p = series.P(w).value;
    EXPECT_LT(abs(p - series.P(w + 3).value), R("1e-40"));
    mean_p += p / grid;
    max_p = std::max(max_p, R(abs(p)));
    max_q = std::max(max_q, R(abs(series.Q(w).value)));
  }
  EXPECT_LT(abs(mean_p), R("1e-40"));
  EXPECT_GT(max_p, R("5e-7"));
  EXPECT_LT(max_p, R("5e-6"));
  EXPECT_LT(max_q, R("1e-4"));
}

TEST(Fluctuations, FourierMatchesDirectSums) {
  const FluctuationSeries<R> series;
  for (const R& u : {R(10), R(10.3), R(17.77), R(25.5)}) {
    const R x = pow(R(2), u);
    EXPECT_LT(abs(phi_fluctuation(x) - series.P(u).value), R("1e-20")) << "u=" << format_real(u, 4);
    EXPECT_LT(abs(psi_fluctuation(x) - series.Q(u).value), R("1e-20")) << "u=" << format_real(u, 4);
  }
}

TEST(Moments, Constants) {
  expect_near(MomentConstants<R>::variance_constant(), "3.507048075870636730826859", R("1e-24"), "variance");
  expect_near(MomentConstants<R>::mean_offset(), "-1.667253822723132849353582", R("1e-24"), "mean offset");
}

TEST(Moments, ReportAgreesWithDirectSums) {
  const auto m = moment_report<R>(1024);
  EXPECT_LT(abs(m.mean_asym - m.phi_mean), R("1e-20"));
  EXPECT_LT(abs(m.var_asym - m.phi_psi_variance), R("1e-20"));
  EXPECT_LT(abs(m.var_asym - R("3.50704314")), R("1e-6"));
}

TEST(Moments, ExactMeanApproachesAsymptoticForm) {
  // The gap shrinks roughly by half each time n doubles.
  std::vector<R> gaps;
  for (std::size_t m = 6; m <= 11; ++m) {
    const std::size_t n = std::size_t{1} << m;
    const R exact = to_real<R>(exact_moments(n, 30).mean);
    gaps.push_back(abs(exact - moment_report<R>(n).mean_asym));
  }
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    const R ratio = gaps[i - 1] / gaps[i];
    EXPECT_GT(ratio, R(1.6)) << "step " << i;
    EXPECT_LT(ratio, R(2.4)) << "step " << i;
  }
}

TEST(Moments, RunOfGivenValuePrediction) {
  EXPECT_LT(abs(expected_run_of_r<R>(1024, 2) - R(5)), kTight);
  EXPECT_THROW(expected_run_of_r<R>(1024, 0), Error);
}

}  // namespace
}  // namespace comprun
