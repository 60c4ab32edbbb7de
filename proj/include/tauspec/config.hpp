#ifndef TAUSPEC_CONFIG_HPP
#define TAUSPEC_CONFIG_HPP

#include <complex>

namespace tauspec {

using Real = double;
using Cx = std::complex<double>;

inline constexpr double PI = 3.14159265358979323846264338327950288;

// Floating backend for the summation-sensitive kernels (Kiev shells,
// instanton coefficient accumulation).  Double is the default; Extended
// switches the accumulators to long double.  Selected once at startup
// (CLI reads TAUSPEC_PRECISION), before any worker threads run.
enum class Precision { Double, Extended };

Precision precision();
void set_precision(Precision p);

int thread_count();
void set_thread_count(int n);

}  // namespace tauspec

#endif
