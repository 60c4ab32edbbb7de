#include "tauspec/config.hpp"

#include <thread>

namespace tauspec {

namespace {
Precision g_precision = Precision::Double;
int g_threads = 0;
}  // namespace

Precision precision() { return g_precision; }
void set_precision(Precision p) { g_precision = p; }

int thread_count() {
  if (g_threads > 0) return g_threads;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void set_thread_count(int n) { g_threads = n; }

}  // namespace tauspec
