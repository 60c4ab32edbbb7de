#ifndef TAUSPEC_SERIES_HPP
#define TAUSPEC_SERIES_HPP

#include <vector>

#include "tauspec/config.hpp"

namespace tauspec {

// Truncated power series c_0 + c_1 x + ... + c_N x^N in the nome q or the
// Painleve time t.  Binary operations truncate to the smaller order and
// require matching variable tags.
class TruncatedSeries {
public:
  enum class Var { Q, T };

  TruncatedSeries(Var var, int order);
  TruncatedSeries(Var var, std::vector<Cx> coeffs);

  Var var() const { return var_; }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Cx>& coeffs() const { return c_; }
  Cx operator[](int k) const { return c_[k]; }
  Cx& at(int k) { return c_[k]; }

  TruncatedSeries truncated(int order) const;

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator*(Cx s) const;

  // d/d(log x): multiplies coefficient k by k.
  TruncatedSeries dlog() const;

  TruncatedSeries inverse() const;       // requires c_0 != 0
  TruncatedSeries log() const;           // requires c_0 != 0
  TruncatedSeries exp() const;
  TruncatedSeries pow(Cx p) const;       // exp(p * log), c_0 != 0

  Cx eval(Cx x) const;                   // Horner

  // Euler function phi(x) = prod_{k>=1} (1 - x^k) truncated at `order`
  // (pentagonal-number sparse coefficients).
  static TruncatedSeries euler_phi(Var var, int order);

  static TruncatedSeries one(Var var, int order);

private:
  Var var_;
  std::vector<Cx> c_;
};

}  // namespace tauspec

#endif
