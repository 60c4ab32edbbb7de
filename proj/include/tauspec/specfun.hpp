#ifndef TAUSPEC_SPECFUN_HPP
#define TAUSPEC_SPECFUN_HPP

#include "tauspec/config.hpp"

namespace tauspec::specfun {

// Modular parameter with its cached nome q = exp(2*pi*i*tau), Im tau > 0.
struct Nome {
  Cx tau;
  Cx q;
  explicit Nome(Cx tau_);
};

// Principal branch of log Gamma: real on (0, inf), analytic off the
// nonpositive real axis.  Throws DomainError at the poles z = 0, -1, -2, ...
Cx log_gamma(Cx z);

// True when z is within tol of a pole of Gamma.
bool is_gamma_pole(Cx z, double tol = 1e-9);

// Gamma itself (through log_gamma; overflow surfaces as inf).
Cx gamma_fn(Cx z);

// Jacobi theta functions, series conventions
//   theta1(z|tau) = -i sum_n (-1)^n e^{i pi tau (n+1/2)^2} e^{2 pi i z (n+1/2)}
//   theta2, theta3, theta4 likewise with the usual characteristics.
// dz_order differentiates with respect to 2*pi*i*z (0..4); dlogq_order with
// respect to log q = 2*pi*i*tau (0..2), q being the nome of the tau passed in.
// Terms are summed symmetrically so theta1(0|tau) = 0 holds exactly.
Cx theta(int kind, Cx z, const Nome& tau, int dz_order = 0,
         int dlogq_order = 0);

// Dedekind eta, Euler phi(q) = prod (1-q^n), and eta1 = -2 pi i d/dtau log eta
// (computed from the theta1 triple-derivative ratio).
struct EtaPhi {
  Cx eta;
  Cx phi;
  Cx eta1;
};
EtaPhi eta_phi(const Nome& tau);

// Weierstrass functions from theta1 log-derivatives:
//   wp   = -d^2/dz^2 log theta1 - 2 eta1
//   zeta =  d/dz log theta1 + 2 z eta1
//   wp'  = z-derivative of wp (closed form, no finite differences).
struct Weier {
  Cx wp;
  Cx wp_prime;
  Cx zeta;
};
Weier weierstrass(Cx z, const Nome& tau);

}  // namespace tauspec::specfun

#endif
