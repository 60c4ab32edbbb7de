#ifndef TAUSPEC_ORACLE_HPP
#define TAUSPEC_ORACLE_HPP

#include <vector>

#include "tauspec/config.hpp"

namespace tauspec::oracle {

// Discretization controls for the direct spectral solvers.
struct DiscretizationSpec {
  enum class Method { FiniteDifference, GalerkinPT };
  Method method = Method::FiniteDifference;
  int size = 8192;      // grid points (FD) or basis size (Galerkin)
  double half_width = 0.0;  // Mathieu box half width; 0 = auto from E_max
  int quad = 400;       // Gauss-Legendre points (Galerkin)
};

struct SpectrumResult {
  std::vector<double> energies;
  double convergence;  // max change under grid/basis refinement
};

// Modified Mathieu -d^2/dx^2 + sqrt(t)(e^x + e^{-x}) on [-L, L], Dirichlet,
// 5-point stencil, one Richardson step over grid doubling.  `shift`
// translates the potential (continuum-exact invariance, used in tests).
SpectrumResult mathieu_spectrum_direct(double t, int n_levels,
                                       DiscretizationSpec spec = {},
                                       double shift = 0.0);

// Overlap |<psi_0(x), psi_0(-x)>| of the Mathieu ground state (parity).
double mathieu_ground_reflection_overlap(double t, DiscretizationSpec spec = {});

// Lame / elliptic Calogero-Moser oracle: eigenvalues of
//   O = -d^2/dx^2 + c wp(x | tau_op),  x in [0,1],
// with c = m(m-1) for O_minus and c = m(m+1) for O_plus;
// tau_op = i*frak_t (case 1) or i/frak_t (case 2).  Galerkin in the
// Poschl-Teller eigenbasis (sin pi x)^lambda C_k^lambda(cos pi x), the
// wp-correction expanded in a cosine Fourier series truncated at 1e-16.
// wp_route = 0 uses the Fourier series; 1 evaluates wp through the theta
// functions (modular-consistency cross-check).
struct LameSpectra {
  std::vector<double> minus;  // O_minus levels
  std::vector<double> plus;   // O_plus levels
  double convergence;
};
LameSpectra lame_spectrum_direct(double m, int tau_case, double frak_t,
                                 int n_levels,
                                 DiscretizationSpec spec = {
                                     DiscretizationSpec::Method::GalerkinPT,
                                     44, 0.0, 400},
                                 int wp_route = 0);

// First-order perturbed Poschl-Teller level:
//   E_k = -pi^2 m(m-1)/3 + pi^2 (m+k)^2 + 8 pi^2 q (1 + m(m-1)/((m+k)^2-1)).
double pt_perturbative_energy(double m, int k, double q);

// PT-basis matrix element <Psi_k|sin^2 pi x|Psi_k>/<Psi_k|Psi_k> by
// quadrature (first-order correction cross-check).
double pt_sin2_matrix_element(double m, int k, int quad = 400);

// Distant-walls quantization: solve
//   pi i k = pi i kappa/tau_hat + log[G(1+k)G(m-k)/(G(1-k)G(m+k))]
// for kappa, Newton from kappa0 = k tau_hat.
Cx walls_quantization_kappa(double m, Cx tau_hat, int k);

}  // namespace tauspec::oracle

#endif
