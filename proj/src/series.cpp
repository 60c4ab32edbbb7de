#include "tauspec/series.hpp"

#include <algorithm>
#include <cmath>

#include "tauspec/errors.hpp"

namespace tauspec {

namespace {
void check_same(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.var() != b.var())
    throw DomainError("TruncatedSeries: variable tags differ");
}
}  // namespace

TruncatedSeries::TruncatedSeries(Var var, int order) : var_(var) {
  if (order < 0) throw DomainError("TruncatedSeries: negative order");
  c_.assign(order + 1, Cx(0.0));
}

TruncatedSeries::TruncatedSeries(Var var, std::vector<Cx> coeffs)
    : var_(var), c_(std::move(coeffs)) {
  if (c_.empty()) throw DomainError("TruncatedSeries: empty coefficients");
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
  TruncatedSeries r(var_, std::min(order, this->order()));
  for (int k = 0; k <= r.order(); ++k) r.c_[k] = c_[k];
  return r;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  check_same(*this, o);
  int n = std::min(order(), o.order());
  TruncatedSeries r(var_, n);
  for (int k = 0; k <= n; ++k) r.c_[k] = c_[k] + o.c_[k];
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  check_same(*this, o);
  int n = std::min(order(), o.order());
  TruncatedSeries r(var_, n);
  for (int k = 0; k <= n; ++k) r.c_[k] = c_[k] - o.c_[k];
  return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  check_same(*this, o);
  int n = std::min(order(), o.order());
  TruncatedSeries r(var_, n);
  for (int k = 0; k <= n; ++k) {
    Cx acc(0.0);
    for (int j = 0; j <= k; ++j) acc += c_[j] * o.c_[k - j];
    r.c_[k] = acc;
  }
  return r;
}

TruncatedSeries TruncatedSeries::operator*(Cx s) const {
  TruncatedSeries r(*this);
  for (auto& v : r.c_) v *= s;
  return r;
}

TruncatedSeries TruncatedSeries::dlog() const {
  TruncatedSeries r(*this);
  for (int k = 0; k <= order(); ++k) r.c_[k] *= double(k);
  return r;
}

TruncatedSeries TruncatedSeries::inverse() const {
  if (c_[0] == Cx(0.0))
    throw DomainError("TruncatedSeries::inverse: zero constant term");
  TruncatedSeries r(var_, order());
  r.c_[0] = Cx(1.0) / c_[0];
  for (int k = 1; k <= order(); ++k) {
    Cx acc(0.0);
    for (int j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
    r.c_[k] = -acc / c_[0];
  }
  return r;
}

TruncatedSeries TruncatedSeries::log() const {
  if (c_[0] == Cx(0.0))
    throw DomainError("TruncatedSeries::log: zero constant term");
  TruncatedSeries g(var_, order());
  g.c_[0] = std::log(c_[0]);
  for (int k = 1; k <= order(); ++k) {
    Cx acc = c_[k];
    for (int j = 1; j < k; ++j) acc -= (double (j) / double(k)) * g.c_[j] * c_[k - j];
    g.c_[k] = acc / c_[0];
  }
  return g;
}

TruncatedSeries TruncatedSeries::exp() const {
  TruncatedSeries h(var_, order());
  h.c_[0] = std::exp(c_[0]);
  for (int k = 1; k <= order(); ++k) {
    Cx acc(0.0);
    for (int j = 1; j <= k; ++j) acc += double(j) * c_[j] * h.c_[k - j];
    h.c_[k] = acc / double(k);
  }
  return h;
}

TruncatedSeries TruncatedSeries::pow(Cx p) const { return (log() * p).exp(); }

Cx TruncatedSeries::eval(Cx x) const {
  Cx acc(0.0);
  for (int k = order(); k >= 0; --k) acc = acc * x + c_[k];
  return acc;
}

TruncatedSeries TruncatedSeries::euler_phi(Var var, int order) {
  TruncatedSeries r(var, order);
  // prod (1-x^k) = sum_j (-1)^j x^{j(3j±1)/2}
  r.c_[0] = Cx(1.0);
  for (int j = 1;; ++j) {
    long long g1 = 1LL * j * (3 * j - 1) / 2;
    long long g2 = 1LL * j * (3 * j + 1) / 2;
    if (g1 > order && g2 > order) break;
    double s = (j % 2 == 1) ? -1.0 : 1.0;
    if (g1 <= order) r.c_[g1] += s;
    if (g2 <= order) r.c_[g2] += s;
  }
  return r;
}

TruncatedSeries TruncatedSeries::one(Var var, int order) {
  TruncatedSeries r(var, order);
  r.at(0) = Cx(1.0);
  return r;
}

}  // namespace tauspec
