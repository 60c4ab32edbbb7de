#include "tauspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "linalg.hpp"
#include "tauspec/errors.hpp"
#include "tauspec/specfun.hpp"

namespace tauspec::oracle {

using linalg::SymBand;

namespace {

// 5-point Dirichlet Laplacian plus potential on n interior points.
SymBand build_fd(double L, int n, double t, double shift) {
  double h = 2.0 * L / (n + 1);
  SymBand A(n, 2);
  double c0 = 30.0 / (12.0 * h * h);
  double c1 = -16.0 / (12.0 * h * h);
  double c2 = 1.0 / (12.0 * h * h);
  for (int i = 0; i < n; ++i) {
    double x = -L + (i + 1) * h + shift;
    A.band[0][i] = c0 + std::sqrt(t) * (std::exp(x) + std::exp(-x));
    if (i + 1 < n) A.band[1][i] = c1;
    if (i + 2 < n) A.band[2][i] = c2;
  }
  return A;
}

double auto_box(double t, int n_levels) {
  // sqrt(t) e^L should exceed the top requested energy by >= 10x
  double emax_guess = 10.0 + 6.0 * n_levels * n_levels;
  return std::max(8.0, std::acosh(emax_guess / (2.0 * std::sqrt(t))) + 4.0);
}

}  // namespace

SpectrumResult mathieu_spectrum_direct(double t, int n_levels,
                                       DiscretizationSpec spec, double shift) {
  if (!(t > 0.0)) throw DomainError("mathieu oracle: t must be positive");
  if (n_levels < 1) throw DomainError("mathieu oracle: need n_levels >= 1");
  double L = spec.half_width > 0.0 ? spec.half_width : auto_box(t, n_levels);
  int n = spec.size > 0 ? spec.size : 8192;

  auto levels = [&](int grid) {
    SymBand A = build_fd(L, grid, t, shift);
    std::vector<double> ev(n_levels);
    for (int k = 0; k < n_levels; ++k) ev[k] = linalg::sturm_eigenvalue(A, k);
    return ev;
  };
  std::vector<double> e1 = levels(n), e2 = levels(2 * n);
  SpectrumResult r;
  r.energies.resize(n_levels);
  r.convergence = 0.0;
  for (int k = 0; k < n_levels; ++k) {
    // 5-point stencil: leading error h^4, one Richardson step
    r.energies[k] = (16.0 * e2[k] - e1[k]) / 15.0;
    r.convergence = std::max(r.convergence, std::abs(e2[k] - e1[k]));
  }
  if (r.convergence > 1e-4 * std::max(1.0, std::abs(r.energies.back())))
    throw ConvergenceError("mathieu oracle: grid doubling still moves "
                           "eigenvalues by " +
                               std::to_string(r.convergence),
                           r.convergence);
  return r;
}

double mathieu_ground_reflection_overlap(double t, DiscretizationSpec spec) {
  double L = spec.half_width > 0.0 ? spec.half_width : auto_box(t, 1);
  int n = spec.size > 0 ? spec.size : 4096;
  if (n % 2 == 0) ++n;  // symmetric grid including x = 0
  SymBand A = build_fd(L, n, t, 0.0);
  double e0 = linalg::sturm_eigenvalue(A, 0);
  std::vector<double> v = linalg::inverse_iteration(A, e0);
  double dot = 0.0, nrm = 0.0;
  for (int i = 0; i < n; ++i) {
    dot += v[i] * v[n - 1 - i];
    nrm += v[i] * v[i];
  }
  return std::abs(dot / nrm);
}

namespace {

// Fourier form of the wp correction
//   Dv(x) = wp(x|tau) - pi^2/sin^2 pi x + pi^2/3
//         = 8 pi^2 [ sum_n sigma1(n) q^n - sum_j (j q^j/(1-q^j)) cos 2 pi j x ].
struct WpCorrection {
  double constant = 0.0;
  std::vector<double> cosc;  // coefficient of cos(2 pi j x), j = 1..
  explicit WpCorrection(double q) {
    double c = 0.0;
    for (int n = 1; n < 400; ++n) {
      double s1 = 0.0;
      for (int d = 1; d <= n; ++d)
        if (n % d == 0) s1 += d;
      double term = s1 * std::pow(q, n);
      c += term;
      if (term < 1e-18 && n > 4) break;
    }
    constant = 8.0 * PI * PI * c;
    for (int j = 1; j < 400; ++j) {
      double qj = std::pow(q, j);
      double coef = -8.0 * PI * PI * j * qj / (1.0 - qj);
      cosc.push_back(coef);
      if (std::abs(coef) < 1e-16 && j > 4) break;
    }
  }
  double operator()(double x) const {
    double v = constant;
    for (std::size_t j = 0; j < cosc.size(); ++j)
      v += cosc[j] * std::cos(2.0 * PI * (j + 1.0) * x);
    return v;
  }
};

// One Galerkin diagonalization for coupling c = lam(lam-1).
std::vector<double> galerkin_pt(double lam, double coupling, double tau_im,
                                int basis, int quad, int n_levels,
                                int wp_route) {
  std::vector<double> xs, ws;
  linalg::gauss_legendre_01(quad, xs, ws);
  double q_op = std::exp(-2.0 * PI * tau_im);
  WpCorrection dv(q_op);
  specfun::Nome tau(Cx(0.0, tau_im));

  // basis values at nodes: Psi_k(x) = (sin pi x)^lam C_k^lam(cos pi x)
  std::vector<std::vector<double>> psi(basis, std::vector<double>(quad));
  for (int iq = 0; iq < quad; ++iq) {
    double x = xs[iq];
    double s = std::sin(PI * x), u = std::cos(PI * x);
    double pref = std::pow(s, lam);
    double c0 = 1.0, c1 = 2.0 * lam * u;
    for (int k = 0; k < basis; ++k) {
      double ck;
      if (k == 0)
        ck = c0;
      else if (k == 1)
        ck = c1;
      else {
        ck = (2.0 * (k - 1 + lam) * u * c1 - (k - 2 + 2.0 * lam) * c0) / k;
        c0 = c1;
        c1 = ck;
      }
      psi[k][iq] = pref * ck;
    }
  }
  std::vector<double> norm(basis, 0.0);
  for (int k = 0; k < basis; ++k)
    for (int iq = 0; iq < quad; ++iq)
      norm[k] += ws[iq] * psi[k][iq] * psi[k][iq];

  std::vector<double> dvx(quad);
  for (int iq = 0; iq < quad; ++iq) {
    if (wp_route == 0) {
      dvx[iq] = dv(xs[iq]);
    } else {
      double x = xs[iq];
      double wp = specfun::weierstrass(Cx(x), tau).wp.real();
      dvx[iq] = wp - PI * PI / (std::sin(PI * x) * std::sin(PI * x)) +
                PI * PI / 3.0;
    }
  }

  std::vector<std::vector<double>> H(basis, std::vector<double>(basis, 0.0));
  for (int k = 0; k < basis; ++k) {
    for (int l = k; l < basis; ++l) {
      double acc = 0.0;
      for (int iq = 0; iq < quad; ++iq)
        acc += ws[iq] * psi[k][iq] * dvx[iq] * psi[l][iq];
      double v = coupling * acc / std::sqrt(norm[k] * norm[l]);
      H[k][l] = v;
      H[l][k] = v;
    }
    H[k][k] += PI * PI * (lam + k) * (lam + k) - coupling * PI * PI / 3.0;
  }
  std::vector<double> ev = linalg::jacobi_eigenvalues(H);
  ev.resize(std::min<std::size_t>(ev.size(), n_levels));
  return ev;
}

}  // namespace

LameSpectra lame_spectrum_direct(double m, int tau_case, double frak_t,
                                 int n_levels, DiscretizationSpec spec,
                                 int wp_route) {
  if (tau_case != 1 && tau_case != 2)
    throw DomainError("lame oracle: tau_case must be 1 or 2");
  if (!(frak_t > 0.0)) throw DomainError("lame oracle: frak_t must be > 0");
  if (spec.method != DiscretizationSpec::Method::GalerkinPT || spec.size > 200)
    spec = {DiscretizationSpec::Method::GalerkinPT, 44, 0.0, 400};
  double tau_im = (tau_case == 1) ? frak_t : 1.0 / frak_t;

  LameSpectra out;
  out.convergence = 0.0;
  for (int pm = 0; pm < 2; ++pm) {
    double coupling = (pm == 0) ? m * m - m : m * m + m;
    if (!(coupling > 0.0))
      throw DomainError(
          "lame oracle: effective coupling m(m-+1) must be positive, got " +
          std::to_string(coupling));
    double lam = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * coupling));
    auto e1 = galerkin_pt(lam, coupling, tau_im, spec.size, spec.quad,
                          n_levels, wp_route);
    auto e2 = galerkin_pt(lam, coupling, tau_im, spec.size + 8, 2 * spec.quad,
                          n_levels, wp_route);
    for (int k = 0; k < n_levels; ++k)
      out.convergence = std::max(out.convergence, std::abs(e2[k] - e1[k]));
    if (pm == 0)
      out.minus = e2;
    else
      out.plus = e2;
  }
  if (out.convergence > 1e-8 * std::max(1.0, std::abs(out.minus.back())))
    throw ConvergenceError(
        "lame oracle: basis refinement still moves eigenvalues by " +
            std::to_string(out.convergence),
        out.convergence);
  return out;
}

double pt_perturbative_energy(double m, int k, double q) {
  // First-order level of -d^2 + m(m-1) wp:
  //   E_k = -pi^2 m(m-1)/3 + pi^2 (m+k)^2
  //         + 8 pi^2 m(m-1) q (1 + m(m-1)/((m+k)^2 - 1)),
  // i.e. coupling times <16 pi^2 q sin^2 pi x> in the PT state.
  double mk = (m + k) * (m + k);
  if (std::abs(mk - 1.0) < 1e-12)
    throw DomainError("pt_perturbative_energy: (m+k)^2 = 1 pole");
  return -PI * PI * m * (m - 1.0) / 3.0 + PI * PI * mk +
         8.0 * PI * PI * m * (m - 1.0) * q *
             (1.0 + m * (m - 1.0) / (mk - 1.0));
}

double pt_sin2_matrix_element(double m, int k, int quad) {
  std::vector<double> xs, ws;
  linalg::gauss_legendre_01(quad, xs, ws);
  double num = 0.0, den = 0.0;
  for (int iq = 0; iq < quad; ++iq) {
    double x = xs[iq];
    double s = std::sin(PI * x), u = std::cos(PI * x);
    double c0 = 1.0, c1 = 2.0 * m * u, ck = c0;
    for (int j = 1; j <= k; ++j) {
      if (j == 1)
        ck = c1;
      else {
        ck = (2.0 * (j - 1 + m) * u * c1 - (j - 2 + 2.0 * m) * c0) / j;
        c0 = c1;
        c1 = ck;
      }
    }
    double psi = std::pow(s, m) * ck;
    num += ws[iq] * psi * psi * s * s;
    den += ws[iq] * psi * psi;
  }
  return num / den;
}

Cx walls_quantization_kappa(double m, Cx tau_hat, int k) {
  if (!((-Cx(0.0, 1.0) * tau_hat).real() <= 0.2 + 1e-12))
    throw DomainError("walls_quantization_kappa: -i tau_hat must be <= 0.2");
  const Cx I(0.0, 1.0);
  auto g = [&](Cx kap) {
    return PI * I * kap / tau_hat + specfun::log_gamma(1.0 + kap) +
           specfun::log_gamma(m - kap) - specfun::log_gamma(1.0 - kap) -
           specfun::log_gamma(m + kap) - PI * I * double(k);
  };
  Cx kap = double(k) * tau_hat;
  if (std::abs(kap) < 1e-8) kap = 0.3 * tau_hat;  // k = 0: start off zero
  Cx gv = g(kap);
  for (int it = 0; it < 80 && std::abs(gv) > 1e-13; ++it) {
    const double d = 1e-7;
    Cx gp = (g(kap + d) - g(kap - d)) / (2.0 * d);
    Cx dk = gv / gp;
    double damp = 1.0;
    bool moved = false;
    for (int tries = 0; tries < 25; ++tries) {
      Cx gn = g(kap - damp * dk);
      if (std::abs(gn) < std::abs(gv)) {
        kap -= damp * dk;
        gv = gn;
        moved = true;
        break;
      }
      damp *= 0.5;
    }
    if (!moved) break;
  }
  if (std::abs(gv) > 1e-10)
    throw ConvergenceError("walls_quantization_kappa: Newton residual " +
                               std::to_string(std::abs(gv)),
                           std::abs(gv));
  return kap;
}

}  // namespace tauspec::oracle
