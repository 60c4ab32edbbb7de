#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tauspec/errors.hpp"
#include "tauspec/kiev.hpp"
#include "tauspec/nekrasov.hpp"
#include "tauspec/oracle.hpp"
#include "tauspec/quantize.hpp"
#include "tauspec/specfun.hpp"

using namespace tauspec;
using namespace tauspec::quantize;
using specfun::Nome;

namespace {
const Cx I(0.0, 1.0);
}

TEST_CASE("mathieu triple agreement at t = 1") {
  double t = 1.0;
  auto tau_side = mathieu_levels(t, 3);
  auto ora = oracle::mathieu_spectrum_direct(t, 3);
  for (int n = 0; n < 3; ++n) {
    CHECK(tau_side[n].residual < 1e-10);
    CHECK(std::abs(tau_side[n].energy - ora.energies[n]) < 1e-6);
    auto ns = ns_quantize_pure(t, n + 1);
    CHECK(std::abs(ns.energy - ora.energies[n]) < 1e-6);
    CHECK(std::abs(ns.energy - tau_side[n].energy) < 1e-6);
  }
}

TEST_CASE("mathieu level energies increase with t") {
  double prev = 0.0;
  for (double t : {0.5, 1.0, 2.0}) {
    auto lv = mathieu_levels(t, 1);
    CHECK(lv[0].energy > prev);
    prev = lv[0].energy;
  }
}

TEST_CASE("table-3 point: tau pipeline at N = 5 and oracle row") {
  double m = -std::sqrt(6.0);
  auto lv = torus_levels_case2(m, 1.0, 1, 5);
  CHECK(lv.warning == "");
  CHECK(std::abs(lv.plus[0].energy - 48.435138199) < 48.4 * 2e-9);
  CHECK(std::abs(lv.minus[0].energy - 91.8587662451) < 91.9 * 2e-10);
  // eta quantization: located roots carry eta in {0, 2pi} exactly
  for (const auto& l : {lv.plus[0], lv.minus[0]}) {
    double e = l.eta.real();
    CHECK((std::abs(e) < 1e-14 || std::abs(e - 2.0 * PI) < 1e-14));
    CHECK(std::abs(l.eta.imag()) < 1e-14);
  }
}

TEST_CASE("table-3 digit stabilization across N = 1, 3, 5") {
  double m = -std::sqrt(6.0);
  // published N=3 and N=5 truncation rows are reproduced digit for digit;
  // the published N=1 row is anomalous (no natural truncation reproduces
  // it) so N=1 is held to the stabilization pattern only
  const double plus_rows[2] = {48.43513749440, 48.43513819947};
  const double minus_rows[2] = {91.8587660448900, 91.8587662451199};
  int Ns[2] = {3, 5};
  for (int i = 0; i < 2; ++i) {
    auto lv = torus_levels_case2(m, 1.0, 1, Ns[i]);
    CHECK(std::abs(lv.plus[0].energy - plus_rows[i]) < 5e-8);
    CHECK(std::abs(lv.minus[0].energy - minus_rows[i]) < 5e-8);
  }
  auto lv1 = torus_levels_case2(m, 1.0, 1, 1);
  double d1p = std::abs(lv1.plus[0].energy - 48.43513819950);
  double d3p = std::abs(plus_rows[0] - 48.43513819950);
  CHECK(d1p < 0.05);   // N=1 agrees with Num at the percent level
  CHECK(d1p > 10.0 * d3p);  // and is much less accurate than N=3
}

TEST_CASE("case-2 positive mass branch runs and matches the oracle") {
  double m = 1.6;
  auto lv = torus_levels_case2(m, 1.0, 1, 6);
  auto ora = oracle::lame_spectrum_direct(m, 2, 1.0, 1);
  CHECK(std::abs(lv.minus[0].energy - ora.minus[0]) < 1e-5);
  CHECK(std::abs(lv.plus[0].energy - ora.plus[0]) < 1e-5);
}

TEST_CASE("case-1 energies: oracle agreement and expansion through O(q)") {
  // m = 2.5 is the half-integer stress case (nudged internally)
  double m = 2.5;
  double q = 1e-3;
  double frak_t = -std::log(q) / (2.0 * PI);
  auto lv = torus_levels_case1(m, frak_t, 1, 8);
  double k = 1.0;
  double expect = -PI * PI / 3.0 * m * (m - 1.0) + PI * PI * (m + k) * (m + k) +
                  8.0 * PI * PI * m * (m - 1.0) * q *
                      (1.0 + m * (m - 1.0) / ((m + k) * (m + k) - 1.0));
  CHECK(std::abs(lv[0].energy - expect) < 2e-3);  // O(q^2) coefficient ~ 10^3

  auto ora = oracle::lame_spectrum_direct(m, 1, frak_t, 2);
  CHECK(std::abs(lv[0].energy - ora.minus[1]) < 1e-6);
}

TEST_CASE("case-1 at generic m matches the oracle") {
  double m = 2.3, frak_t = 1.0;
  auto lv = torus_levels_case1(m, frak_t, 2, 8);
  auto ora = oracle::lame_spectrum_direct(m, 1, frak_t, 3);
  CHECK(std::abs(lv[0].energy - ora.minus[1]) < 1e-6);
  CHECK(std::abs(lv[1].energy - ora.minus[2]) < 1e-6);
}

TEST_CASE("eta_star equals the NS prediction (blowup consequence)") {
  Nome tau(Cx(0.0, 1.2));
  // real sigma: each branch is exact for its matching mass sign
  auto rm = eta_star(-1, Cx(0.3), Cx(2.2), tau, 8);
  CHECK(rm.residual < 1e-10);
  CHECK(std::abs(rm.difference) < 1e-8);
  auto rp = eta_star(+1, Cx(0.3), Cx(-2.2), tau, 8);
  CHECK(std::abs(rp.difference) < 1e-8);
  // on the physical line sigma = i s both branches hold at both signs
  for (double mm : {2.2, -2.2}) {
    for (int pm : {-1, +1}) {
      auto r = eta_star(pm, Cx(0.0, 0.3), Cx(mm), tau, 8);
      CHECK(std::abs(r.difference) < 1e-8);
    }
  }
}

TEST_CASE("eta_star first q-correction exponent") {
  Cx sigma(0.27), m(1.7);
  double tvals[2] = {1.35, 1.5};
  for (double tv : tvals) {
    Nome tau(Cx(0.0, tv));
    auto r = eta_star(-1, sigma, m, tau, 8);
    Cx lead = -std::exp(-sigma * std::log(tau.q) +
                        specfun::log_gamma(1.0 - m - 2.0 * sigma) +
                        specfun::log_gamma(2.0 * sigma) -
                        specfun::log_gamma(1.0 - m + 2.0 * sigma) -
                        specfun::log_gamma(-2.0 * sigma));
    // first-order exponent from the NS identity: dF_inst/dsigma / 2 at
    // mu = m - 1/2 (the coefficient printed in the eta expansion formula
    // is inconsistent with its own NS line; see the notes ledger)
    Cx mu = m - 0.5;
    auto F1 = [&](Cx s) {
      return (4.0 * mu * mu - 1.0) * (3.0 + 4.0 * mu * mu - 16.0 * s * s) /
             (8.0 * (1.0 - 4.0 * s * s));
    };
    const double dd = 1e-6;
    Cx corr = (F1(sigma + dd) - F1(sigma - dd)) / (4.0 * dd) * tau.q;
    Cx u_star = std::exp(I * r.eta_star / 2.0);
    Cx logratio = std::log(u_star / lead);
    CHECK(std::abs(logratio - corr) < 60.0 * std::abs(tau.q * tau.q));
  }
}

TEST_CASE("Matone check: Kiev Hamiltonian at eta = i dF/dsigma equals NS") {
  double t = 0.05;
  Cx sigma(0.0, 0.3);
  auto fe = nekrasov::ns_free_energy_pure(sigma, Cx(t), 8);
  Cx eta = I * fe.dF_dsigma;
  Cx lhs = -kiev::hamiltonian_p3(sigma, eta, t, 8, 8);
  Cx rhs = -fe.xdF_dx;
  CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
}

TEST_CASE("ns nstar quantization consistent with case-2 tau levels") {
  double m = -std::sqrt(6.0);
  auto lv = torus_levels_case2(m, 1.0, 1, 6);
  auto nsm = ns_quantize_nstar(m, -1, 1.0, 0, 8);
  auto nsp = ns_quantize_nstar(m, +1, 1.0, 0, 8);
  CHECK(std::abs(nsm.energy - lv.minus[0].energy) < 1e-5);
  CHECK(std::abs(nsp.energy - lv.plus[0].energy) < 1e-5);
}

TEST_CASE("walls quantization reproduces the NS sigma at tau_hat = 0.1i") {
  double m = 2.0;
  Cx tau_hat(0.0, 0.1);
  double frak_t = 10.0;
  for (int n : {0, 1}) {
    auto ns = ns_quantize_nstar(m, -1, frak_t, n, 4);
    Cx kap = oracle::walls_quantization_kappa(m, tau_hat, n + 1);
    CHECK(std::abs(kap - 2.0 * ns.sigma) < 1e-6);
  }
}
