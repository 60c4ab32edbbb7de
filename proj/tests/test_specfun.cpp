#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "tauspec/errors.hpp"
#include "tauspec/specfun.hpp"

using namespace tauspec;
using specfun::Nome;

namespace {

const Cx I(0.0, 1.0);

// Independent log Gamma oracle: push far up with a fixed large shift, then
// a short Stirling tail.  Deliberately different from the library path.
Cx log_gamma_oracle(Cx z) {
  const int K = 32;
  Cx s(0.0);
  for (int k = 0; k < K; ++k) s += std::log(z + double(k));
  Cx w = z + double(K);
  Cx r = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * PI);
  r += 1.0 / (12.0 * w) - 1.0 / (360.0 * w * w * w);
  r += 1.0 / (1260.0 * std::pow(w, 5)) - 1.0 / (1680.0 * std::pow(w, 7));
  return r - s;
}

// Brute-force theta partial sum straight from the defining series.
Cx theta_brute(int kind, Cx z, Cx tau, int terms = 60) {
  Cx acc(0.0);
  for (int n = -terms; n <= terms; ++n) {
    Cx e;
    switch (kind) {
      case 1:
        e = -I * std::pow(Cx(-1.0), n) *
            std::exp(I * PI * tau * (n + 0.5) * (n + 0.5)) *
            std::exp(2.0 * I * PI * z * (n + 0.5));
        break;
      case 2:
        e = std::exp(I * PI * tau * (n + 0.5) * (n + 0.5)) *
            std::exp(2.0 * I * PI * z * (n + 0.5));
        break;
      case 3:
        e = std::exp(I * PI * tau * double(n) * double(n)) *
            std::exp(2.0 * I * PI * z * double(n));
        break;
      default:
        e = std::pow(Cx(-1.0), n) * std::exp(I * PI * tau * double(n) * double(n)) *
            std::exp(2.0 * I * PI * z * double(n));
    }
    acc += e;
  }
  return acc;
}

}  // namespace

TEST_CASE("log_gamma exact anchors") {
  CHECK(std::abs(specfun::log_gamma(Cx(1.0))) < 1e-14);
  CHECK(std::abs(specfun::log_gamma(Cx(0.5)) - 0.5 * std::log(PI)) < 1e-14);
  CHECK(std::abs(specfun::log_gamma(Cx(5.0)) - std::log(24.0)) < 1e-13);
}

TEST_CASE("log_gamma against independent shifted-Stirling oracle") {
  Cx z(3.7, 2.1);
  CHECK(std::abs(specfun::log_gamma(z) - log_gamma_oracle(z)) < 1e-13);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ur(-4.0, 6.0), ui(-5.0, 5.0);
  for (int it = 0; it < 200; ++it) {
    Cx w(ur(rng), ui(rng));
    if (specfun::is_gamma_pole(w, 1e-3)) continue;
    Cx a = specfun::log_gamma(w);
    // Compare exp() values: branch sheets may differ by 2 pi i on the left
    // half-plane, the function value may not.
    CHECK(std::abs(std::exp(a) - std::exp(log_gamma_oracle(w))) <=
          1e-11 * std::abs(std::exp(a)));
  }
}

TEST_CASE("log_gamma functional equation and pole error") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ur(0.2, 5.0), ui(-3.0, 3.0);
  for (int it = 0; it < 100; ++it) {
    Cx z(ur(rng), ui(rng));
    Cx lhs = specfun::log_gamma(z + 1.0);
    Cx rhs = specfun::log_gamma(z) + std::log(z);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
  }
  CHECK_THROWS_AS(specfun::log_gamma(Cx(0.0)), DomainError);
  CHECK_THROWS_AS(specfun::log_gamma(Cx(-3.0)), DomainError);
}

TEST_CASE("log_gamma relative accuracy for |z| <= 50 via recurrence checks") {
  // exp(log_gamma) should satisfy Gamma(z+1) = z Gamma(z) to 1e-13 rel.
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> ur(-40.0, 40.0), ui(-30.0, 30.0);
  int checked = 0;
  for (int it = 0; it < 300 && checked < 150; ++it) {
    Cx z(ur(rng), ui(rng));
    if (std::abs(z) > 49.0 || specfun::is_gamma_pole(z, 1e-2)) continue;
    Cx g1 = specfun::log_gamma(z + 1.0) - specfun::log_gamma(z) - std::log(z);
    // Equality mod 2 pi i (branch), exact as exp.
    double frac = std::abs(std::remainder(g1.imag(), 2.0 * PI));
    CHECK(std::abs(g1.real()) < 1e-11);
    CHECK(frac < 1e-11);
    ++checked;
  }
  REQUIRE(checked >= 100);
}

TEST_CASE("Nome validation") {
  CHECK_THROWS_AS(Nome(Cx(0.3, -0.2)), DomainError);
  Nome n(Cx(0.1, 0.8));
  CHECK(std::abs(n.q - std::exp(2.0 * PI * I * n.tau)) < 1e-16);
  CHECK(std::abs(n.q) < 1.0);
}

TEST_CASE("theta1 vanishes identically at z = 0") {
  Nome tau(Cx(0.13, 0.77));
  CHECK(specfun::theta(1, Cx(0.0), tau) == Cx(0.0));
}

TEST_CASE("theta values match brute-force partial sums") {
  Nome tau(Cx(0.1, 0.8));
  Cx z(0.3, 0.0);
  for (int kind = 1; kind <= 4; ++kind) {
    Cx lib = specfun::theta(kind, z, tau);
    Cx ref = theta_brute(kind, z, tau.tau);
    CHECK(std::abs(lib - ref) < 1e-14 * std::max(1.0, std::abs(ref)));
  }
  // also at a complex z
  Cx z2(0.21, 0.13);
  for (int kind = 1; kind <= 4; ++kind) {
    Cx lib = specfun::theta(kind, z2, tau);
    Cx ref = theta_brute(kind, z2, tau.tau);
    CHECK(std::abs(lib - ref) < 1e-13 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("theta z-derivatives agree with 5-point finite differences") {
  Nome tau(Cx(0.07, 0.93));
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ur(-0.4, 0.4);
  const double hstep = 1e-3;
  for (int it = 0; it < 20; ++it) {
    Cx z(ur(rng), 0.3 * ur(rng));
    for (int kind = 1; kind <= 4; ++kind) {
      for (int ord = 1; ord <= 2; ++ord) {
        auto f = [&](double d) {
          return specfun::theta(kind, z + d, tau, 0, 0);
        };
        Cx fd;
        if (ord == 1)
          fd = (-f(2 * hstep) + 8.0 * f(hstep) - 8.0 * f(-hstep) +
                f(-2 * hstep)) /
               (12.0 * hstep);
        else
          fd = (-f(2 * hstep) + 16.0 * f(hstep) - 30.0 * f(0.0) +
                16.0 * f(-hstep) - f(-2 * hstep)) /
               (12.0 * hstep * hstep);
        // library derivative is w.r.t. 2 pi i z
        Cx lib = specfun::theta(kind, z, tau, ord, 0) *
                 std::pow(2.0 * PI * I, ord);
        CHECK(std::abs(lib - fd) < 1e-8 * std::max(1.0, std::abs(lib)));
      }
    }
  }
}

TEST_CASE("theta dlogq derivative against finite difference in tau") {
  Cx tau0(0.11, 0.9);
  Cx z(0.17, 0.05);
  const double h = 1e-4;
  for (int kind = 1; kind <= 4; ++kind) {
    auto f = [&](double d) {
      return specfun::theta(kind, z, Nome(tau0 + Cx(d, 0.0)), 0, 0);
    };
    // d/d(log q) = d/(2 pi i dtau)
    Cx fd = (f(h) - f(-h)) / (2.0 * h) / (2.0 * PI * I);
    Cx lib = specfun::theta(kind, z, Nome(tau0), 0, 1);
    CHECK(std::abs(lib - fd) < 1e-7 * std::max(1.0, std::abs(lib)));
  }
}

TEST_CASE("theta1 z-derivative at zero equals 2 pi eta^3") {
  Nome tau(Cx(0.0, 1.3));
  auto ep = specfun::eta_phi(tau);
  Cx lhs = specfun::theta(1, Cx(0.0), tau, 1, 0) * (2.0 * PI * I);
  Cx rhs = 2.0 * PI * ep.eta * ep.eta * ep.eta;
  CHECK(std::abs(lhs - rhs) < 1e-13 * std::abs(rhs));
}

TEST_CASE("theta parity: theta1 odd, theta3 even") {
  Nome tau(Cx(0.21, 0.69));
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ur(-0.45, 0.45);
  for (int it = 0; it < 30; ++it) {
    Cx z(ur(rng), 0.4 * ur(rng));
    Cx p1 = specfun::theta(1, z, tau) + specfun::theta(1, -z, tau);
    Cx p3 = specfun::theta(3, z, tau) - specfun::theta(3, -z, tau);
    CHECK(std::abs(p1) < 1e-13);
    CHECK(std::abs(p3) < 1e-13);
  }
}

TEST_CASE("eta at i equals Gamma(1/4)/(2 pi^{3/4})") {
  Nome tau(Cx(0.0, 1.0));
  auto ep = specfun::eta_phi(tau);
  double expected =
      std::exp(std::lgamma(0.25)) / (2.0 * std::pow(PI, 0.75));
  CHECK(std::abs(ep.eta - Cx(expected)) < 1e-12);
  // product form cross-check
  CHECK(std::abs(ep.phi - ep.eta * std::exp(-std::log(tau.q) / 24.0)) <
        1e-12);
}

TEST_CASE("eta modular transform at tau = 0.2 + 1.1 i") {
  Cx tau0(0.2, 1.1);
  auto e1 = specfun::eta_phi(Nome(tau0)).eta;
  auto e2 = specfun::eta_phi(Nome(-1.0 / tau0)).eta;
  CHECK(std::abs(e2 - std::sqrt(-I * tau0) * e1) < 1e-12 * std::abs(e2));
}

TEST_CASE("eta1 tends to pi^2/6 for large Im tau") {
  Nome tau(Cx(0.0, 40.0));
  CHECK(std::abs(specfun::eta_phi(tau).eta1 - Cx(PI * PI / 6.0)) < 1e-12);
}

TEST_CASE("eta1 matches divisor-sum expansion") {
  Nome tau(Cx(0.05, 1.2));
  // eta1 = pi^2/6 (1 - 24 sum sigma1(n) q^n)
  Cx q = tau.q;
  int sigma1[9] = {0, 1, 3, 4, 7, 6, 12, 8, 15};
  Cx s(0.0);
  for (int n = 1; n <= 8; ++n) s += double(sigma1[n]) * std::pow(q, n);
  Cx ref = PI * PI / 6.0 * (1.0 - 24.0 * s);
  CHECK(std::abs(specfun::eta_phi(tau).eta1 - ref) < 1e-9);
}

TEST_CASE("weierstrass double pole with zero constant term") {
  Nome tau(Cx(0.0, 1.0));
  Cx z(1e-4, 0.0);
  auto w = specfun::weierstrass(z, tau);
  CHECK(std::abs(w.wp - 1.0 / (z * z)) < 1e-2);
}

TEST_CASE("weierstrass modular covariance") {
  Cx tau0(0.0, 0.7);
  Cx z(0.3, 0.0);
  auto w1 = specfun::weierstrass(z, Nome(tau0)).wp;
  auto w2 = specfun::weierstrass(z / tau0, Nome(-1.0 / tau0)).wp;
  CHECK(std::abs(w1 - w2 / (tau0 * tau0)) < 1e-10 * std::abs(w1));
}

TEST_CASE("weierstrass against sine-series oracle at tau = 2i") {
  // wp(z|tau) = pi^2/sin^2(pi z) - pi^2/3
  //           + sum_{k!=0} (pi^2/sin^2(pi(z-k tau)) - pi^2/sin^2(pi k tau))
  Cx tau0(0.0, 2.0);
  Cx z(0.25, 0.0);
  Cx acc = PI * PI / std::pow(std::sin(PI * z), 2) - PI * PI / 3.0;
  for (int k = 1; k <= 20; ++k) {
    for (int s : {+1, -1}) {
      Cx zz = z - double(s) * double(k) * tau0;
      acc += PI * PI / std::pow(std::sin(PI * zz), 2) -
             PI * PI / std::pow(std::sin(PI * double(s) * double(k) * tau0), 2);
    }
  }
  auto w = specfun::weierstrass(z, Nome(tau0));
  CHECK(std::abs(w.wp - acc) < 1e-12 * std::max(1.0, std::abs(acc)));
}

TEST_CASE("weierstrass parity and zeta oddness; wp' consistency") {
  Nome tau(Cx(0.12, 0.85));
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> ur(0.05, 0.45);
  for (int it = 0; it < 20; ++it) {
    Cx z(ur(rng), 0.3 * ur(rng));
    auto wp = specfun::weierstrass(z, tau);
    auto wm = specfun::weierstrass(-z, tau);
    CHECK(std::abs(wp.wp - wm.wp) < 1e-13 * std::max(1.0, std::abs(wp.wp)));
    CHECK(std::abs(wp.zeta + wm.zeta) <
          1e-13 * std::max(1.0, std::abs(wp.zeta)));
    // wp' from closed form vs finite difference of wp
    const double h = 1e-4;
    Cx fd = (specfun::weierstrass(z + h, tau).wp -
             specfun::weierstrass(z - h, tau).wp) /
            (2.0 * h);
    CHECK(std::abs(wp.wp_prime - fd) < 1e-5 * std::max(1.0, std::abs(fd)));
  }
  CHECK_THROWS_AS(specfun::weierstrass(Cx(0.0), tau), DomainError);
}

TEST_CASE("half-modulus theta identity theta3^2+theta2^2") {
  // theta3(z|2tau)^2 + theta2(z|2tau)^2 = theta3(z|tau) theta3(0|tau)
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> ur(-0.3, 0.3);
  for (int it = 0; it < 25; ++it) {
    Cx tau0(ur(rng) * 0.3, 0.8 + 0.3 * std::abs(ur(rng)));
    Cx z(ur(rng), ur(rng) * 0.2);
    Nome t1(tau0), t2(2.0 * tau0);
    Cx lhs = std::pow(specfun::theta(3, z, t2), 2) +
             std::pow(specfun::theta(2, z, t2), 2);
    Cx rhs = specfun::theta(3, z, t1) * specfun::theta(3, Cx(0.0), t1);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}
