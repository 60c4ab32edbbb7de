#ifndef TAUSPEC_KIEV_HPP
#define TAUSPEC_KIEV_HPP

#include <optional>

#include "tauspec/config.hpp"
#include "tauspec/specfun.hpp"

namespace tauspec::kiev {

// Initial data of the isomonodromic flow.  In chart I `eta` is the eta of
// the Fourier factors e^{i n eta}; in chart II it holds eta-tilde and the
// evaluation is routed through the (m, eta) -> (-m, eta-tilde) symmetry.
struct MonodromyPoint {
  Cx sigma;
  Cx eta;
  enum class Chart { I, II } chart = Chart::I;
  std::optional<Cx> m;  // torus only
};

struct KievEvaluation {
  Cx value;
  Cx dlog;            // x d/dx log(sum), term-wise (x = t or q)
  double term_scale;  // largest |term| encountered (zero detection scale)
  double tail;        // last |n| shell relative to term_scale
  int n_range;
  int order;
  bool converged;
};

// Barnes-free coefficient ratio C_n / C_0 for the Kiev sums, reduced to
// finite Gamma products through G(z+1) = Gamma(z) G(z).  `twice_n` = 2n.
// Returns 0 when the ratio vanishes (Gamma pole on the denominator side);
// throws DomainError when the ratio is infinite.
Cx coeff_ratio_p3(Cx sigma, int twice_n);
Cx coeff_ratio_torus(Cx sigma, Cx m, int twice_n);

// Painleve III_3 tau function, which = 0 (integer shells) or 1
// (half-integer shells):
//   T_w = sum_n e^{i n eta} C_n(sigma) t^{(sigma+n)^2} Z(sigma+n, t).
// Normalization C_0 = 1; zeros and log-derivatives are unaffected.
KievEvaluation tau_p3(int which, Cx sigma, Cx eta, Cx t, int n_max = 8,
                      int N = 8, double tail_tol = 1e-10);

// Torus dual partition function, eps = 0 or 1/2 selected by `half`:
//   Z^D = sum_{n in Z+eps} e^{i n eta} C_n(sigma,m) q^{(sigma+n)^2-1/24}
//         Z(sigma+n, m, q).
// `w2` is 2*log(u) = i*eta: terms carry exp(n * w2), which stays finite in
// chart-boundary limits where u itself degenerates.
KievEvaluation dual_partition_torus(int half, Cx sigma, Cx m, Cx eta,
                                    const specfun::Nome& tau, int n_max = 8,
                                    int N = 8, double tail_tol = 1e-10);
KievEvaluation dual_partition_torus_pt(int half, const MonodromyPoint& pt,
                                       const specfun::Nome& tau,
                                       int n_max = 8, int N = 8);

// Q from the theta-ratio equation
//   theta2(2Q|2tau)/theta3(2Q|2tau) = Z^D_{1/2}/Z^D_0,
// damped Newton seeded at the m=0 closed form Q = sigma tau + eta/(4 pi)
// (or at `seed` when given, for continuation along parameter paths).
// Without a seed the representative is reduced to the fundamental cell
// Re Q in [0,1), Im Q/Im tau in [0,1), sign fixed by the seed.
Cx q_transcendent(Cx sigma, Cx m, Cx eta, const specfun::Nome& tau,
                  std::optional<Cx> seed = std::nullopt, int n_max = 8,
                  int N = 8);

// H_0 = t d/dt log T_0, term-wise derivative.
Cx hamiltonian_p3(Cx sigma, Cx eta, double t, int n_max = 8, int N = 8);

// H_star for O_minus (sign = -1) or O_plus (sign = +1):
//   H = 2 pi i d/dtau log Z^D_0 + 2 pi i d/dtau log(eta(tau)/theta3(0|2tau))
//       -+ 2 m theta3''(0|2tau)/theta3(0|2tau).
Cx hamiltonian_torus_star(int sign, Cx sigma, Cx m, Cx eta,
                          const specfun::Nome& tau, int n_max = 8, int N = 8);

// T = eta(tau) Z^D_0/theta3(2Q|2tau) = eta(tau) Z^D_{1/2}/theta2(2Q|2tau);
// both representations evaluated, mismatch beyond 1e-11 throws.
Cx tau_torus(Cx sigma, Cx m, Cx eta, const specfun::Nome& tau, int n_max = 8,
             int N = 8, std::optional<Cx> q_seed = std::nullopt);

}  // namespace tauspec::kiev

#endif
