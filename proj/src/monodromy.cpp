#include "tauspec/monodromy.hpp"

#include <cmath>
#include <string>

#include "tauspec/errors.hpp"

namespace tauspec::monodromy {

namespace {
const Cx I(0.0, 1.0);

Cx sinpi(Cx z) { return std::sin(PI * z); }
Cx cospi(Cx z) { return std::cos(PI * z); }
}  // namespace

Cx eta_tilde(Cx sigma, Cx m, Cx eta) {
  Cx den = sinpi(2.0 * sigma - m);
  if (std::abs(den) < 1e-12)
    throw ChartError(
        "eta_tilde: sin pi(2 sigma - m) vanishes; eta-tilde chart is "
        "singular here, keep eta finite (chart I)");
  Cx ratio = sinpi(2.0 * sigma + m) / den;
  return eta - 2.0 * I * std::log(ratio);
}

TracePoint trace_coordinates(Cx sigma, Cx m, Cx eta, int chart) {
  Cx s2 = sinpi(2.0 * sigma);
  if (std::abs(s2) < 1e-12)
    throw DomainError("trace_coordinates: 2 sigma integer");
  Cx mm = m, ee = eta;
  if (chart == 2) {
    mm = -m;  // theta-ratio covariance (m, eta) -> (-m, eta-tilde)
  } else if (chart != 1) {
    throw DomainError("trace_coordinates: chart must be 1 or 2");
  }
  Cx up = std::exp(I * ee / 2.0);
  TracePoint tp;
  tp.pA = 2.0 * cospi(2.0 * sigma);
  tp.p0 = 2.0 * cospi(2.0 * m);
  tp.pB = (sinpi(2.0 * sigma + mm) * up + sinpi(2.0 * sigma - mm) / up) / s2;
  tp.pAB = std::exp(2.0 * PI * I * sigma) * tp.pB -
           2.0 * I * sinpi(2.0 * sigma + mm) * up;
  return tp;
}

Cx fricke_residual(const TracePoint& tp) {
  return tp.pAB * tp.pAB + tp.pA * tp.pA + tp.pB * tp.pB -
         tp.pA * tp.pB * tp.pAB - tp.p0 - 2.0;
}

namespace {

Cx f21_BA(Cx sigma, Cx m, Cx eta) {
  // -e^{i pi m} sin(eta~/2)/sin(2 pi sigma), written through eta
  Cx up = std::exp(I * eta / 2.0);
  Cx num = up * sinpi(2.0 * sigma + m) / sinpi(2.0 * sigma - m) -
           (1.0 / up) * sinpi(2.0 * sigma - m) / sinpi(2.0 * sigma + m);
  return num / (-2.0 * I * std::exp(-I * PI * m) * sinpi(2.0 * sigma));
}

Cx f12_BA(Cx sigma, Cx m, Cx eta) {
  return -std::exp(-I * PI * m) * std::sin(eta / 2.0) / sinpi(2.0 * sigma);
}

Cx f21_CA(Cx sigma, Cx m, Cx eta) {
  Cx et = eta_tilde(sigma, m, eta);
  Cx s2 = sinpi(2.0 * sigma);
  Cx e = std::exp(I * et - 2.0 * PI * I * sigma);
  return I * std::exp(I * PI * m - I * et + 2.0 * PI * I * sigma) /
         (s2 * s2) * (e * cospi(sigma - m / 2.0) - cospi(sigma + m / 2.0)) *
         (e * sinpi(sigma - m / 2.0) + sinpi(sigma + m / 2.0));
}

Cx f12_CA(Cx sigma, Cx m, Cx eta) {
  Cx s2 = sinpi(2.0 * sigma);
  Cx e = std::exp(I * eta - 2.0 * PI * I * sigma);
  return I * std::exp(-I * PI * m - I * eta + 2.0 * PI * I * sigma) /
         (s2 * s2) * (e * cospi(sigma + m / 2.0) - cospi(sigma - m / 2.0)) *
         (e * sinpi(sigma + m / 2.0) + sinpi(sigma - m / 2.0));
}

}  // namespace

Cx normalizability_residual(char cycle, int m_sign, Cx sigma, Cx m, Cx eta) {
  if (m_sign != 1 && m_sign != -1)
    throw DomainError("normalizability_residual: m_sign must be +-1");
  switch (cycle) {
    case 'A':
      return (m_sign > 0) ? 1.0 / f21_BA(sigma, m, eta)
                          : 1.0 / f12_BA(sigma, m, eta);
    case 'B':
      return (m_sign > 0) ? f21_BA(sigma, m, eta) : f12_BA(sigma, m, eta);
    case 'C':
      return (m_sign > 0) ? f21_CA(sigma, m, eta) : f12_CA(sigma, m, eta);
    default:
      throw DomainError("normalizability_residual: cycle must be A, B or C");
  }
}

Mat2 monodromy_MA(Cx sigma) {
  return {std::exp(2.0 * PI * I * sigma), Cx(0.0), Cx(0.0),
          std::exp(-2.0 * PI * I * sigma)};
}

Mat2 monodromy_MB(Cx sigma, Cx m, Cx eta) {
  Cx s2 = sinpi(2.0 * sigma);
  Cx up = std::exp(I * eta / 2.0);
  return {sinpi(2.0 * sigma - m) / s2 / up, sinpi(m) / s2, -sinpi(m) / s2,
          sinpi(2.0 * sigma + m) / s2 * up};
}

Mat2 monodromy_M0(Cx sigma, Cx m, Cx eta) {
  Mat2 A = monodromy_MA(sigma);
  Mat2 B = monodromy_MB(sigma, m, eta);
  return A * B.inverse() * A.inverse() * B;
}

Mat2 monodromy_MC(Cx sigma, Cx m, Cx eta) {
  Mat2 A = monodromy_MA(sigma);
  Mat2 B = monodromy_MB(sigma, m, eta);
  return A * B * B;
}

Mat2 diag_transform_I(Cx sigma, Cx m, Cx eta) {
  Cx s2 = sinpi(2.0 * sigma);
  Cx cm = cospi(m);
  Cx e = std::exp(I * eta / 2.0 + 2.0 * PI * I * sigma);
  return {e * sinpi(2.0 * sigma + m) / (s2 * cm), Cx(1.0),
          -sinpi(2.0 * sigma - m) / (s2 * cm), 1.0 / e};
}

Mat2 diag_transform_II(Cx sigma, Cx m, Cx eta_t) {
  Cx s2 = sinpi(2.0 * sigma);
  Cx cm = cospi(m);
  Cx e = std::exp(I * eta_t / 2.0 + 2.0 * PI * I * sigma);
  return {Cx(1.0), e * sinpi(2.0 * sigma - m) / (s2 * cm), -1.0 / e,
          sinpi(2.0 * sigma + m) / (s2 * cm)};
}

}  // namespace tauspec::monodromy
