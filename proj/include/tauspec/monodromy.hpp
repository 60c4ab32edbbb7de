#ifndef TAUSPEC_MONODROMY_HPP
#define TAUSPEC_MONODROMY_HPP

#include <array>

#include "tauspec/config.hpp"

namespace tauspec::monodromy {

// Column-major-free tiny 2x2 complex matrix: {a b; c d}.
struct Mat2 {
  Cx a, b, c, d;
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
            c * o.b + d * o.d};
  }
  Mat2 inverse() const {
    Cx det = a * d - b * c;
    return {d / det, -b / det, -c / det, a / det};
  }
  Cx trace() const { return a + d; }
};

// e^{i eta~/2} = e^{i eta/2} sin pi(2s+m)/sin pi(2s-m); branch continuous
// in eta.  Throws ChartError at sin pi(2s-m) = 0.
Cx eta_tilde(Cx sigma, Cx m, Cx eta);

struct TracePoint {
  Cx pA, pB, pAB, p0;
};

// Trace coordinates from the linear relations
//   pAB - e^{ 2 pi i s} pB = -2i sin pi(2s+m) e^{ i eta/2},
//   pAB - e^{-2 pi i s} pB =  2i sin pi(2s-m) e^{-i eta/2}.
// chart = 1 parameterizes with (m, eta), chart = 2 with (-m, eta-tilde).
TracePoint trace_coordinates(Cx sigma, Cx m, Cx eta, int chart = 1);

// Fricke residual pAB^2 + pA^2 + pB^2 - pA pB pAB - p0 - 2.
Cx fricke_residual(const TracePoint& tp);

// Normalizability f-ratio (Table of normalizability conditions): B- or
// C-cycle ratio for the given mass sign; for cycle A the reciprocal is
// returned so that a vanishing return value always encodes the condition.
Cx normalizability_residual(char cycle, int m_sign, Cx sigma, Cx m, Cx eta);

// Explicit monodromy matrices as a numeric test oracle.
Mat2 monodromy_MA(Cx sigma);
Mat2 monodromy_MB(Cx sigma, Cx m, Cx eta);     // eta-chart form
Mat2 monodromy_M0(Cx sigma, Cx m, Cx eta);     // M_A M_B^-1 M_A^-1 M_B
Mat2 monodromy_MC(Cx sigma, Cx m, Cx eta);     // M_A M_B^2
Mat2 diag_transform_I(Cx sigma, Cx m, Cx eta);
Mat2 diag_transform_II(Cx sigma, Cx m, Cx eta_tilde);

}  // namespace tauspec::monodromy

#endif
