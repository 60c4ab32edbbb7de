#include "tauspec/kiev.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tauspec/errors.hpp"
#include "tauspec/nekrasov.hpp"
#include "tauspec/series.hpp"

namespace tauspec::kiev {

using specfun::Nome;

namespace {

const Cx I(0.0, 1.0);

std::string cx_str(Cx z) {
  return "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
}

void guard_sigma(Cx sigma) {
  Cx two = 2.0 * sigma;
  double dist = std::hypot(two.real() - std::round(two.real()), two.imag());
  if (dist < 1e-3)
    throw DomainError(
        "kiev: 2 sigma within 1e-3 of an integer (sigma = " + cx_str(sigma) +
        "); shells degenerate, shift parameters or switch chart");
}

// Accumulated log of a product of Gamma factors, with bookkeeping for
// Gamma poles: `zeros` is the vanishing order of the final exponential.
struct GammaProd {
  Cx log{0.0};
  int zeros = 0;
  void mul_gamma(Cx x, int sign) {
    if (specfun::is_gamma_pole(x)) {
      zeros -= sign;
      return;
    }
    log += double(sign) * specfun::log_gamma(x);
  }
  // multiply by [G(x+k)/G(x)]^sign reduced to Gamma factors
  void mul_g_ratio(Cx x, int k, int sign) {
    if (k >= 0)
      for (int j = 0; j < k; ++j) mul_gamma(x + double(j), sign);
    else
      for (int j = 1; j <= -k; ++j) mul_gamma(x - double(j), -sign);
  }
  Cx value() const {
    if (zeros > 0) return Cx(0.0);
    if (zeros < 0)
      throw DomainError(
          "kiev coefficient ratio is infinite (degenerate sigma/m "
          "combination)");
    return std::exp(log);
  }
};

}  // namespace

Cx coeff_ratio_p3(Cx sigma, int twice_n) {
  // C_n = 1 / (G(1+2s+2n) G(1-2s-2n)), normalized by C_0
  GammaProd p;
  p.mul_g_ratio(1.0 + 2.0 * sigma, twice_n, -1);
  p.mul_g_ratio(1.0 - 2.0 * sigma, -twice_n, -1);
  return p.value();
}

Cx coeff_ratio_torus(Cx sigma, Cx m, int twice_n) {
  // C_n = prod_{e=+-} G(1-m+2e(s+n)) / prod_{e=+-} G(1+2e(s+n)), over C_0
  GammaProd p;
  p.mul_g_ratio(1.0 - m + 2.0 * sigma, twice_n, +1);
  p.mul_g_ratio(1.0 - m - 2.0 * sigma, -twice_n, +1);
  p.mul_g_ratio(1.0 + 2.0 * sigma, twice_n, -1);
  p.mul_g_ratio(1.0 - 2.0 * sigma, -twice_n, -1);
  return p.value();
}

namespace {

// Shared Kiev-sum driver.  Terms are
//   exp(n*(i eta) + log R_n + ((sigma+n)^2 - cpow) log x) * Z(sigma+n, x);
// shells are added in increasing |n|, the last shell supplies the tail.
struct KievSum {
  Cx sigma;
  std::optional<Cx> m;  // engaged: torus blocks; empty: pure blocks
  Cx w;                 // i * eta
  Cx logx;
  double cpow = 0.0;
  int N = 8;

  KievEvaluation run(int half, Cx x, int n_max, double tail_tol) const {
    KievEvaluation ev{};
    ev.order = N;
    ev.n_range = n_max;
    Cx sum(0.0), dsum(0.0);
    double scale = 0.0, last_shell = 0.0;
    const int shells = (half == 0) ? n_max + 1 : n_max;
    for (int shell = 0; shell < shells; ++shell) {
      std::vector<int> twons;
      if (half == 0)
        twons = (shell == 0) ? std::vector<int>{0}
                             : std::vector<int>{2 * shell, -2 * shell};
      else
        twons = {2 * shell + 1, -2 * shell - 1};
      double shell_mag = 0.0;
      for (int twon : twons) {
        Cx R = m ? coeff_ratio_torus(sigma, *m, twon)
                 : coeff_ratio_p3(sigma, twon);
        if (R == Cx(0.0)) continue;
        double n = 0.5 * twon;
        Cx sn = sigma + n;
        Cx logterm = n * w + std::log(R) + (sn * sn - cpow) * logx;
        TruncatedSeries z = m ? nekrasov::selfdual_block_torus(sn, *m, N)
                              : nekrasov::selfdual_block_pure(sn, N);
        Cx zv = z.eval(x);
        Cx term = std::exp(logterm) * zv;
        sum += term;
        dsum += term * (sn * sn - cpow + z.dlog().eval(x) / zv);
        shell_mag = std::max(shell_mag, std::abs(term));
      }
      scale = std::max(scale, shell_mag);
      last_shell = shell_mag;
    }
    ev.value = sum;
    ev.dlog = dsum / sum;
    ev.term_scale = scale;
    ev.tail = last_shell / std::max(scale, 1e-300);
    ev.converged = ev.tail <= tail_tol;
    if (!ev.converged)
      throw ConvergenceError("kiev sum: tail estimate " +
                                 std::to_string(ev.tail) +
                                 " above tolerance; increase n_max",
                             ev.tail);
    return ev;
  }
};

}  // namespace

KievEvaluation tau_p3(int which, Cx sigma, Cx eta, Cx t, int n_max, int N,
                      double tail_tol) {
  guard_sigma(sigma);
  KievSum ks;
  ks.sigma = sigma;
  ks.w = I * eta;
  ks.logx = std::log(t);
  ks.cpow = 0.0;
  ks.N = N;
  return ks.run(which, t, n_max, tail_tol);
}

KievEvaluation dual_partition_torus(int half, Cx sigma, Cx m, Cx eta,
                                    const Nome& tau, int n_max, int N,
                                    double tail_tol) {
  guard_sigma(sigma);
  KievSum ks;
  ks.sigma = sigma;
  ks.m = m;
  ks.w = I * eta;
  ks.logx = 2.0 * PI * I * tau.tau;  // log q, analytic in tau
  ks.cpow = 1.0 / 24.0;
  ks.N = N;
  return ks.run(half, tau.q, n_max, tail_tol);
}

KievEvaluation dual_partition_torus_pt(int half, const MonodromyPoint& pt,
                                       const Nome& tau, int n_max, int N) {
  if (!pt.m) throw DomainError("dual_partition_torus: point carries no mass");
  if (pt.chart == MonodromyPoint::Chart::I)
    return dual_partition_torus(half, pt.sigma, *pt.m, pt.eta, tau, n_max, N);
  // Chart II: the stored eta is eta-tilde; the theta-ratio is covariant
  // under (m, eta) -> (-m, eta-tilde), so evaluate at the flipped mass.
  return dual_partition_torus(half, pt.sigma, -*pt.m, pt.eta, tau, n_max, N);
}

Cx q_transcendent(Cx sigma, Cx m, Cx eta, const Nome& tau,
                  std::optional<Cx> seed, int n_max, int N) {
  Nome tau2(2.0 * tau.tau);

  auto lattice_dist = [&](Cx d) {
    d -= std::round(d.imag() / tau.tau.imag()) * tau.tau;
    d -= std::round(d.real());
    return std::abs(d);
  };

  KievEvaluation z0 = dual_partition_torus(0, sigma, m, eta, tau, n_max, N);
  KievEvaluation zh = dual_partition_torus(1, sigma, m, eta, tau, n_max, N);
  if (std::abs(z0.value) < 1e-12 * z0.term_scale)
    throw DomainError("q_transcendent: Z^D_0 vanishes at this point");
  Cx rho = zh.value / z0.value;
  auto f = [&](Cx Q) {
    return specfun::theta(2, 2.0 * Q, tau2) -
           rho * specfun::theta(3, 2.0 * Q, tau2);
  };
  auto fp = [&](Cx Q) {
    return 2.0 * (2.0 * PI * I) *
           (specfun::theta(2, 2.0 * Q, tau2, 1, 0) -
            rho * specfun::theta(3, 2.0 * Q, tau2, 1, 0));
  };
  const double fscale =
      std::abs(specfun::theta(3, Cx(0.0), tau2)) * std::max(1.0, std::abs(rho)) +
      1e-30;

  // Damped Newton; returns the residual at the final iterate.
  auto newton = [&](Cx q_init, Cx* root) {
    Cx q = q_init;
    Cx fv = f(q);
    for (int it = 0; it < 80 && std::abs(fv) > 1e-14 * fscale; ++it) {
      Cx dq = fv / fp(q);
      double damp = 1.0;
      bool moved = false;
      for (int tries = 0; tries < 30; ++tries) {
        Cx fn = f(q - damp * dq);
        if (std::abs(fn) < std::abs(fv)) {
          q -= damp * dq;
          fv = fn;
          moved = true;
          break;
        }
        damp *= 0.5;
      }
      if (!moved) break;
    }
    *root = q;
    return std::abs(fv) / fscale;
  };

  Cx q0 = seed ? *seed : sigma * tau.tau + eta / (4.0 * PI);
  Cx q;
  double res = newton(q0, &q);
  if (res > 1e-10) {
    // Newton can stall at the critical points of the theta ratio
    // (half-period Q).  Fall back to a cell scan for fresh starts.
    Cx best = q;
    double best_res = res;
    const int G = 36;
    std::vector<std::pair<double, Cx>> ranked;
    for (int a = 0; a < G; ++a)
      for (int b = 0; b < G; ++b) {
        Cx Q = (a + 0.5) / G + tau.tau * ((b + 0.5) / G);
        ranked.push_back({std::abs(f(Q)), Q});
      }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    for (int c = 0; c < 6 && best_res > 1e-10; ++c) {
      Cx cand;
      double r2 = newton(ranked[c].second, &cand);
      // keep the root landing closest to the seed (mod lattice, mod sign)
      if (r2 < 1e-10) {
        double dplus = lattice_dist(cand - q0), dminus = lattice_dist(cand + q0);
        double dbest = std::min(lattice_dist(best - q0), lattice_dist(best + q0));
        if (best_res > 1e-10 || std::min(dplus, dminus) < dbest) best = cand;
        best_res = r2;
      }
    }
    q = best;
    res = best_res;
  }
  if (res > 1e-10)
    throw ConvergenceError("q_transcendent: Newton stagnation, residual " +
                               std::to_string(res) + " at Q = " + cx_str(q),
                           res);
  if (!seed) {
    auto reduce = [&](Cx Q) {
      double n2 = std::floor(Q.imag() / tau.tau.imag());
      Q -= n2 * tau.tau;
      Q -= std::floor(Q.real());
      return Q;
    };
    Cx qa = reduce(q), qb = reduce(-q), q0r = reduce(q0);
    q = (std::abs(qa - q0r) <= std::abs(qb - q0r)) ? qa : qb;
  }
  return q;
}

Cx hamiltonian_p3(Cx sigma, Cx eta, double t, int n_max, int N) {
  KievEvaluation ev = tau_p3(0, sigma, eta, Cx(t), n_max, N);
  if (std::abs(ev.value) < 1e-12 * ev.term_scale)
    throw DomainError("hamiltonian_p3: tau_0 vanishes at this point");
  return ev.dlog;
}

Cx hamiltonian_torus_star(int sign, Cx sigma, Cx m, Cx eta, const Nome& tau,
                          int n_max, int N) {
  if (sign != -1 && sign != 1)
    throw DomainError("hamiltonian_torus_star: sign must be -1 or +1");
  KievEvaluation z0 = dual_partition_torus(0, sigma, m, eta, tau, n_max, N);
  if (std::abs(z0.value) < 1e-12 * z0.term_scale)
    throw DomainError("hamiltonian_torus_star: Z^D_0 vanishes at this point");
  const double pi2 = PI * PI;
  Nome tau2(2.0 * tau.tau);
  Cx th0 = specfun::theta(3, Cx(0.0), tau2, 0, 0);
  Cx th_dq = specfun::theta(3, Cx(0.0), tau2, 0, 1);
  Cx th_zz = specfun::theta(3, Cx(0.0), tau2, 2, 0);
  Cx eta1 = specfun::eta_phi(tau).eta1;

  // 2 pi i dtau log Z^D_0, term-wise
  Cx h = -4.0 * pi2 * z0.dlog;
  // + 2 pi i dtau log(eta/theta3(0|2tau))
  h += -eta1 + 8.0 * pi2 * th_dq / th0;
  // -+ 2 m theta3''(0|2tau)/theta3(0|2tau), '' the plain z-derivative:
  // theta3'' = (2 pi i)^2 * (2-pi-i-normalized second derivative)
  Cx theta_ratio_zz = -4.0 * pi2 * th_zz / th0;
  h += double(sign) * 2.0 * m * theta_ratio_zz;
  return h;
}

Cx tau_torus(Cx sigma, Cx m, Cx eta, const Nome& tau, int n_max, int N,
             std::optional<Cx> q_seed) {
  KievEvaluation z0 = dual_partition_torus(0, sigma, m, eta, tau, n_max, N);
  KievEvaluation zh = dual_partition_torus(1, sigma, m, eta, tau, n_max, N);
  Cx q = q_transcendent(sigma, m, eta, tau, q_seed, n_max, N);
  Nome tau2(2.0 * tau.tau);
  Cx th3 = specfun::theta(3, 2.0 * q, tau2);
  Cx th2 = specfun::theta(2, 2.0 * q, tau2);
  if (std::abs(th3) < 1e-12)
    throw DomainError("tau_torus: theta3(2Q|2tau) vanishes");
  Cx etav = specfun::eta_phi(tau).eta;
  Cx t_a = etav * z0.value / th3;
  Cx t_b = etav * zh.value / th2;
  if (std::abs(t_a - t_b) > 1e-11 * std::max(std::abs(t_a), 1e-300))
    throw ConvergenceError(
        "tau_torus: theta3 and theta2 representations disagree by " +
            std::to_string(std::abs(t_a - t_b) / std::abs(t_a)),
        std::abs(t_a - t_b) / std::abs(t_a));
  return t_a;
}

}  // namespace tauspec::kiev
