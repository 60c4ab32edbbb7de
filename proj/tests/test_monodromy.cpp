#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tauspec/errors.hpp"
#include "tauspec/monodromy.hpp"

using namespace tauspec;
using namespace tauspec::monodromy;

namespace {
const Cx I(0.0, 1.0);
double rel(Cx a, Cx b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}
}  // namespace

TEST_CASE("eta_tilde: m=0 identity and m -> -m involution") {
  Cx s(0.2), eta(0.7);
  CHECK(rel(eta_tilde(s, Cx(0.0), eta), eta) < 1e-14);

  Cx m(0.3);
  Cx et = eta_tilde(s, m, eta);
  Cx back = eta_tilde(s, -m, et);
  // involution up to 4 pi
  Cx d = (back - eta) / (4.0 * PI);
  CHECK(std::abs(d - std::round(d.real())) < 1e-13);

  // direct complex-log evaluation at (0.2, 0.3, 0.7)
  Cx expect = eta - 2.0 * I * std::log(std::sin(PI * (2.0 * s + m)) /
                                       std::sin(PI * (2.0 * s - m)));
  CHECK(rel(et, expect) < 1e-14);
}

TEST_CASE("Fricke relation holds at 100 random points in both charts") {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> ur(-0.9, 0.9);
  for (int it = 0; it < 100; ++it) {
    Cx s(0.05 + 0.4 * std::abs(ur(rng)), 0.3 * ur(rng));
    Cx m(0.2 + ur(rng), 0.2 * ur(rng));
    Cx eta(ur(rng) * 2.0, 0.4 * ur(rng));
    auto tp = trace_coordinates(s, m, eta, 1);
    CHECK(std::abs(fricke_residual(tp)) < 1e-12 * (1.0 + std::abs(tp.pAB)));
    Cx et = eta_tilde(s, m, eta);
    auto tq = trace_coordinates(s, m, et, 2);
    CHECK(std::abs(fricke_residual(tq)) < 1e-12 * (1.0 + std::abs(tq.pAB)));
    // both charts describe the same traces
    CHECK(rel(tp.pB, tq.pB) < 1e-11);
    CHECK(rel(tp.pAB, tq.pAB) < 1e-11);
  }
}

TEST_CASE("trace coordinates match explicit matrix products") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ur(-0.8, 0.8);
  for (int it = 0; it < 50; ++it) {
    Cx s(0.07 + 0.4 * std::abs(ur(rng)), 0.2 * ur(rng));
    Cx m(0.3 + 0.8 * std::abs(ur(rng)), 0.2 * ur(rng));
    Cx eta(1.5 * ur(rng), 0.3 * ur(rng));
    Mat2 A = monodromy_MA(s);
    Mat2 B = monodromy_MB(s, m, eta);
    Mat2 M0 = monodromy_M0(s, m, eta);
    auto tp = trace_coordinates(s, m, eta);
    CHECK(rel(A.trace(), tp.pA) < 1e-12);
    CHECK(rel(B.trace(), tp.pB) < 1e-12);
    CHECK(rel((A * B).trace(), tp.pAB) < 1e-12);
    CHECK(rel(M0.trace(), tp.p0) < 1e-10);
    // det M_B = 1
    CHECK(rel(B.a * B.d - B.b * B.c, Cx(1.0)) < 1e-12);
  }
}

TEST_CASE("diagonalizing transforms send M0 to diag(e^{2pi i m}, e^{-2pi i m})") {
  Cx s(0.21, 0.05), m(0.7, 0.1), eta(0.8, -0.1);
  Mat2 M0 = monodromy_M0(s, m, eta);
  Mat2 T1 = diag_transform_I(s, m, eta);
  Mat2 D = T1.inverse() * M0 * T1;
  CHECK(std::abs(D.b) < 1e-10);
  CHECK(std::abs(D.c) < 1e-10);
  CHECK(rel(D.a, std::exp(2.0 * PI * I * m)) < 1e-10);
  CHECK(rel(D.d, std::exp(-2.0 * PI * I * m)) < 1e-10);

  Cx et = eta_tilde(s, m, eta);
  Mat2 T2 = diag_transform_II(s, m, et);
  Mat2 D2 = T2.inverse() * M0 * T2;
  CHECK(std::abs(D2.b) < 1e-10);
  CHECK(std::abs(D2.c) < 1e-10);
  CHECK(rel(D2.a, std::exp(2.0 * PI * I * m)) < 1e-10);
}

TEST_CASE("f-ratios agree with conjugated matrix elements in both charts") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ur(-0.7, 0.7);
  for (int it = 0; it < 40; ++it) {
    Cx s(0.08 + 0.35 * std::abs(ur(rng)), 0.15 * ur(rng));
    Cx m(0.3 + 0.9 * std::abs(ur(rng)), 0.15 * ur(rng));
    Cx eta(1.2 * ur(rng), 0.25 * ur(rng));
    Mat2 A = monodromy_MA(s);
    Mat2 B = monodromy_MB(s, m, eta);
    Mat2 C = monodromy_MC(s, m, eta);

    Mat2 T1 = diag_transform_I(s, m, eta);
    Mat2 bI = T1.inverse() * B * T1;
    Mat2 aI = T1.inverse() * A * T1;
    Mat2 cI = T1.inverse() * C * T1;

    Cx fb21 = normalizability_residual('B', +1, s, m, eta);
    Cx fb12 = normalizability_residual('B', -1, s, m, eta);
    CHECK(rel(bI.c / aI.c, fb21) < 1e-9);
    CHECK(rel(bI.b / aI.b, fb12) < 1e-9);
    Cx fc21 = normalizability_residual('C', +1, s, m, eta);
    Cx fc12 = normalizability_residual('C', -1, s, m, eta);
    CHECK(rel(cI.c / aI.c, fc21) < 1e-8);
    CHECK(rel(cI.b / aI.b, fc12) < 1e-8);

    // chart II gives the same ratios
    Cx et = eta_tilde(s, m, eta);
    Mat2 T2 = diag_transform_II(s, m, et);
    Mat2 bII = T2.inverse() * B * T2;
    Mat2 aII = T2.inverse() * A * T2;
    CHECK(rel(bII.c / aII.c, fb21) < 1e-9);
    CHECK(rel(bII.b / aII.b, fb12) < 1e-9);
  }
}

TEST_CASE("B-cycle conditions: zeros at quantized eta / eta~") {
  Cx s(0.13, 0.21), m(1.7);
  // m<0 branch vanishes iff eta in 2 pi Z
  CHECK(std::abs(normalizability_residual('B', -1, s, m, Cx(2.0 * PI))) <
        1e-13);
  CHECK(std::abs(normalizability_residual('B', -1, s, m, Cx(0.0))) < 1e-13);
  CHECK(std::abs(normalizability_residual('B', -1, s, m, Cx(1.0))) > 1e-3);
  // m>0 branch vanishes iff eta~ in 2 pi Z: build eta from eta~ = 0
  Cx eta_from_tilde =
      Cx(0.0) - 2.0 * I * std::log(std::sin(PI * (2.0 * s - m)) /
                                   std::sin(PI * (2.0 * s + m)));
  CHECK(std::abs(normalizability_residual('B', +1, s, m, eta_from_tilde)) <
        1e-12);
}

TEST_CASE("C-cycle closed-form conditions annihilate the ratio") {
  Cx s(0.17, 0.12), m(0.9);
  // first condition: e^{i eta~} = e^{2 pi i s} cos pi(s+m/2)/cos pi(s-m/2)
  Cx et1 = -I * std::log(std::exp(2.0 * PI * I * s) *
                         std::cos(PI * (s + m / 2.0)) /
                         std::cos(PI * (s - m / 2.0)));
  // map eta~ -> eta
  Cx eta1 = et1 - 2.0 * I * std::log(std::sin(PI * (2.0 * s - m)) /
                                     std::sin(PI * (2.0 * s + m)));
  CHECK(std::abs(normalizability_residual('C', +1, s, m, eta1)) < 1e-11);
  // second condition with the minus sign and sines
  Cx et2 = -I * std::log(-std::exp(2.0 * PI * I * s) *
                         std::sin(PI * (s + m / 2.0)) /
                         std::sin(PI * (s - m / 2.0)));
  Cx eta2 = et2 - 2.0 * I * std::log(std::sin(PI * (2.0 * s - m)) /
                                     std::sin(PI * (2.0 * s + m)));
  CHECK(std::abs(normalizability_residual('C', +1, s, m, eta2)) < 1e-11);
}

TEST_CASE("chart guard raises ChartError") {
  // 2s - m integer: eta~ chart singular
  CHECK_THROWS_AS(eta_tilde(Cx(0.75), Cx(0.5), Cx(0.3)), ChartError);
}
