#include "tauspec/specfun.hpp"

#include <cmath>
#include <string>

#include "tauspec/errors.hpp"

namespace tauspec::specfun {

namespace {

std::string cx_str(Cx z) {
  return "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
}

// log sin(pi z), continuous on each half-plane, real-axis compatible.
// Extracts the dominant exponential so large |Im z| does not overflow.
Cx log_sin_pi(Cx z) {
  const Cx I(0.0, 1.0);
  if (z.imag() > 0.0) {
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z})
    return std::log(Cx(0.0, 0.5)) - I * PI * z +
           std::log(Cx(1.0) - std::exp(Cx(2.0) * I * PI * z));
  }
  // sin(pi z) = (-i/2) e^{i pi z} (1 - e^{-2 pi i z})
  return std::log(Cx(0.0, -0.5)) + I * PI * z +
         std::log(Cx(1.0) - std::exp(Cx(-2.0) * I * PI * z));
}

// Stirling's series, valid for |w| >= 12, Re w > 0.
Cx stirling(Cx w) {
  static const double c[] = {
      1.0 / 12.0,          -1.0 / 360.0,   1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0,        -691.0 / 360360.0, 1.0 / 156.0,
      -3617.0 / 122400.0};
  Cx res = (w - Cx(0.5)) * std::log(w) - w + 0.5 * std::log(2.0 * PI);
  Cx w2 = w * w;
  Cx p = Cx(1.0) / w;
  for (double ck : c) {
    res += ck * p;
    p /= w2;
  }
  return res;
}

}  // namespace

bool is_gamma_pole(Cx z, double tol) {
  double r = std::round(z.real());
  return r <= 0.5 && std::abs(z.real() - r) < tol && std::abs(z.imag()) < tol;
}

Cx log_gamma(Cx z) {
  if (is_gamma_pole(z, 1e-12))
    throw DomainError("log_gamma: pole of Gamma at z = " + cx_str(z));
  if (z.real() < 0.5) {
    // Reflection keeps the recurrence shift count bounded on the left.
    return std::log(Cx(PI)) - log_sin_pi(z) - log_gamma(Cx(1.0) - z);
  }
  Cx shift(0.0);
  Cx w = z;
  while (std::abs(w) < 12.0) {
    shift += std::log(w);
    w += 1.0;
  }
  return stirling(w) - shift;
}

Cx gamma_fn(Cx z) { return std::exp(log_gamma(z)); }

Nome::Nome(Cx tau_) : tau(tau_) {
  if (!(tau.imag() > 0.0))
    throw DomainError("Nome: Im tau must be positive, got tau = " +
                      cx_str(tau));
  q = std::exp(Cx(0.0, 2.0 * PI) * tau);
}

Cx theta(int kind, Cx z, const Nome& tau, int dz_order, int dlogq_order) {
  if (kind < 1 || kind > 4) throw DomainError("theta: kind must be 1..4");
  if (dz_order < 0 || dz_order > 4)
    throw DomainError("theta: dz_order out of range 0..4");
  if (dlogq_order < 0 || dlogq_order > 2)
    throw DomainError("theta: dlogq_order out of range 0..2");

  const Cx I(0.0, 1.0);
  const bool half = (kind == 1 || kind == 2);

  // Exponentials are built per term as exp(i pi tau idx^2 +- 2 pi i z idx):
  // powers of a precomputed nome would reduce z mod 1 and lose the
  // anti-periodicity of theta1/theta2.  Pairs (idx, -idx) share the
  // tau-exponent, so theta1(0|tau) = 0 holds exactly.
  Cx acc(0.0);
  double accscale = 0.0;
  int quiet = 0;
  for (int k = 0; k < 500; ++k) {
    Cx termsum(0.0);
    if (half) {
      double idx = k + 0.5;
      Cx qpow = std::exp(I * PI * tau.tau * (idx * idx));
      Cx base = qpow * std::pow(Cx(idx * idx / 2.0), double(dlogq_order)) *
                std::pow(Cx(idx), double(dz_order));
      Cx yp = std::exp(2.0 * I * PI * z * idx);
      Cx ym = std::exp(-2.0 * I * PI * z * idx);
      double sgn_a = (dz_order % 2 == 0) ? 1.0 : -1.0;
      if (kind == 2) {
        termsum = base * (yp + sgn_a * ym);
      } else {  // theta1
        double s = (k % 2 == 0) ? 1.0 : -1.0;
        termsum = -I * s * base * (yp - sgn_a * ym);
      }
    } else {
      if (k == 0) {
        // n = 0 term: only survives with no dz/dlogq weight.
        termsum = (dz_order == 0 && dlogq_order == 0) ? Cx(1.0) : Cx(0.0);
      } else {
        double idx = k;
        Cx qpow = std::exp(I * PI * tau.tau * (idx * idx));
        Cx base = qpow * std::pow(Cx(idx * idx / 2.0), double(dlogq_order)) *
                  std::pow(Cx(idx), double(dz_order));
        Cx yp = std::exp(2.0 * I * PI * z * idx);
        Cx ym = std::exp(-2.0 * I * PI * z * idx);
        double sgn_a = (dz_order % 2 == 0) ? 1.0 : -1.0;
        double s = (kind == 4 && k % 2 == 1) ? -1.0 : 1.0;
        termsum = s * base * (yp + sgn_a * ym);
      }
    }
    acc += termsum;
    accscale = std::max(accscale, std::abs(acc));
    if (k >= 1 && std::abs(termsum) < 1e-18 * std::max(accscale, 1e-300)) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
  }
  return acc;
}

EtaPhi eta_phi(const Nome& tau) {
  EtaPhi r;
  Cx phi(1.0);
  Cx qn(1.0);
  for (int n = 1; n < 10000; ++n) {
    qn *= tau.q;
    phi *= (Cx(1.0) - qn);
    if (std::abs(qn) < 1e-18) break;
  }
  r.phi = phi;
  r.eta = std::exp(std::log(tau.q) / 24.0) * phi;
  // eta1 = -(1/6) theta1'''(0)/theta1'(0) in plain z-derivatives; the
  // (2 pi i)^2 from the 2-pi-i-normalized derivatives gives the -4 pi^2.
  Cx t3 = theta(1, Cx(0.0), tau, 3, 0);
  Cx t1 = theta(1, Cx(0.0), tau, 1, 0);
  r.eta1 = -(1.0 / 6.0) * (-4.0 * PI * PI) * (t3 / t1);
  return r;
}

Weier weierstrass(Cx z, const Nome& tau) {
  // Reject lattice points z in Z + tau Z.
  Cx w = z;
  double n2 = std::round(w.imag() / tau.tau.imag());
  w -= n2 * tau.tau;
  double n1 = std::round(w.real());
  w -= n1;
  if (std::abs(w) < 1e-12)
    throw DomainError("weierstrass: z is a lattice point");

  Cx eta1 = eta_phi(tau).eta1;
  Cx t0 = theta(1, z, tau, 0, 0);
  Cx t1 = theta(1, z, tau, 1, 0);
  Cx t2 = theta(1, z, tau, 2, 0);
  Cx t3 = theta(1, z, tau, 3, 0);
  const Cx I(0.0, 1.0);
  const Cx d1 = Cx(2.0) * I * PI;  // d/dz = 2 pi i * d/d(2 pi i z)

  Cx l1 = t1 / t0;                            // dlog theta1 / d(2 pi i z)
  Cx l2 = t2 / t0 - l1 * l1;                  // second log-derivative
  Cx l3 = t3 / t0 - 3.0 * (t2 / t0) * l1 + 2.0 * l1 * l1 * l1;

  Weier r;
  r.wp = -d1 * d1 * l2 - 2.0 * eta1;
  r.wp_prime = -d1 * d1 * d1 * l3;
  r.zeta = d1 * l1 + 2.0 * z * eta1;
  return r;
}

}  // namespace tauspec::specfun
