#ifndef TAUSPEC_NEKRASOV_HPP
#define TAUSPEC_NEKRASOV_HPP

#include <optional>

#include "tauspec/config.hpp"
#include "tauspec/partitions.hpp"
#include "tauspec/series.hpp"

namespace tauspec::nekrasov {

// Omega-background parameter record.  a1 = a, a2 = -a; alpha is the adjoint
// mass and is absent for the pure theory.
struct OmegaParams {
  Cx a;
  std::optional<Cx> alpha;
  Cx eps1;
  Cx eps2;
};

// Bifundamental factor
//   N_{lambda,mu}(x) = prod_{s in lambda} (x - e2 (a_mu(s)+1) + e1 l_lambda(s))
//                    * prod_{s in mu}     (x + e2 a_lambda(s) - e1 (l_mu(s)+1)).
Cx nekrasov_factor(const partitions::Partition& lam,
                   const partitions::Partition& mu, Cx x, Cx eps1, Cx eps2);

// U(2) N=2* instanton sum, coefficients of q^0..q^N.  Throws PoleError when a
// denominator factor vanishes at the given parameters.
TruncatedSeries instanton_sum_nstar(Cx a, Cx alpha, Cx eps1, Cx eps2, int N);

// Pure SU(2) instanton sum sum_t t^{|l1|+|l2|} / prod N_{ij}(a_i - a_j).
TruncatedSeries instanton_sum_pure(Cx a, Cx eps1, Cx eps2, int N);

// Self-dual c=1 blocks.
//   torus:  Z(sigma, m, q) = phi(q)^{1-2m^2} Zinst^{U(2)}(sigma, m; -1, 1 | q)
//   pure:   Z(sigma, t)    = Zinst^{pure}(sigma; 1, -1 | t)
TruncatedSeries selfdual_block_torus(Cx sigma, Cx m, int N);
TruncatedSeries selfdual_block_pure(Cx sigma, int N);

// Nekrasov-Shatashvili free energy and its derivatives at a point.
//   pure:   F = sigma^2 log t - psi2(1+2s) - psi2(1-2s) + F_inst(sigma,t)
//   nstar:  F = -sigma^2 log q + F_1loop(sigma,mu) + (2 mu^2 - 1/2) log phi(q)
//               + F_inst(sigma,mu,q)
// The instanton part comes from the even eps2-extrapolation
// [f(h)+f(-h)]/2 with f(e) = e log Zinst(...;1,e), Richardson-refined over
// h, h/2, h/4.  d/dsigma of the instanton part by central differences
// (step 1e-5); the 1-loop sigma-derivative is the closed log-Gamma form.
struct NsFreeEnergy {
  Cx F;            // free energy
  Cx dF_dsigma;    // d/dsigma
  Cx xdF_dx;       // t d/dt (pure) or q d/dq (nstar)
  int order;       // instanton truncation order used
  double extrap_err;  // disagreement of the last two Richardson levels
};

NsFreeEnergy ns_free_energy_pure(Cx sigma, Cx t, int N = 8, double h = 0.01);
NsFreeEnergy ns_free_energy_nstar(Cx sigma, Cx mu, Cx q, int N = 8,
                                  double h = 0.01);

// Instanton parts alone, as truncated series in t/q (coefficients of the
// extrapolated NS limit).  `gate_weight` is the |x| radius in which the
// extrapolation self-consistency (1e-9) is enforced; the free-energy
// wrappers pass the actual evaluation point.
TruncatedSeries ns_inst_series_pure(Cx sigma, int N, double h = 0.01,
                                    double* extrap_err = nullptr,
                                    double gate_weight = 0.05);
TruncatedSeries ns_inst_series_nstar(Cx sigma, Cx mu, int N, double h = 0.01,
                                     double* extrap_err = nullptr,
                                     double gate_weight = 0.05);

// One-loop difference machinery for the blowup checkers.  G2 is the
// elementary block in the difference equation
//   gamma_{e1,e2}(x) - gamma_{e1,e2}(x + e1) = G2(x + e1; e2),
//   G2(y; e) = (y/e + 1/2) log e + log Gamma(y/e + 1) - (1/2) log(2 pi).
Cx gamma2_step(Cx y, Cx eps);

// gamma_{e1,e2}(x + k*step) - gamma_{e1,e2}(x) for integer k, where `step`
// must be one of the pair (e1, e2); `other` is the remaining epsilon.
Cx gamma_shift(Cx x, Cx step, Cx other, int k);

}  // namespace tauspec::nekrasov

#endif
