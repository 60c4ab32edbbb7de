#include "tauspec/partitions.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <string>

#include "tauspec/errors.hpp"

namespace tauspec::partitions {

namespace {
constexpr int kMaxWeight = 48;  // hard memo bound; sums in this project stay <= ~12
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (parts_[k] <= 0)
      throw DomainError("Partition parts must be positive");
    if (k > 0 && parts_[k] > parts_[k - 1])
      throw DomainError("Partition parts must be weakly decreasing");
    weight_ += parts_[k];
  }
  if (!parts_.empty()) {
    conj_.assign(parts_[0], 0);
    for (int p : parts_)
      for (int j = 0; j < p; ++j) conj_[j] += 1;
  }
}

namespace {

void emit(int remaining, int max_part, std::vector<int>& stack,
          std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(stack);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    stack.push_back(p);
    emit(remaining - p, p, stack, out);
    stack.pop_back();
  }
}

std::vector<std::vector<Partition>> build_table(int max_weight) {
  std::vector<std::vector<Partition>> table(max_weight + 1);
  for (int w = 0; w <= max_weight; ++w) {
    std::vector<int> stack;
    emit(w, w == 0 ? 1 : w, stack, table[w]);
  }
  return table;
}

std::mutex g_mutex;
std::vector<std::vector<Partition>> g_table;  // grows monotonically

}  // namespace

const std::vector<std::vector<Partition>>& partitions_up_to(int max_weight) {
  if (max_weight < 0) throw DomainError("max_weight must be nonnegative");
  if (max_weight > kMaxWeight)
    throw CapacityError("partition enumeration capped at weight " +
                        std::to_string(kMaxWeight) + ", requested " +
                        std::to_string(max_weight));
  std::lock_guard<std::mutex> lock(g_mutex);
  if (static_cast<int>(g_table.size()) <= max_weight)
    g_table = build_table(std::max(max_weight, 16));
  return g_table;
}

const std::vector<Partition>& partitions_of(int weight) {
  return partitions_up_to(weight)[weight];
}

std::pair<int, int> arm_leg(const Partition& lambda, const Partition& mu,
                            int i, int j) {
  if (!lambda.contains(i, j))
    throw DomainError("arm_leg: cell (" + std::to_string(i) + "," +
                      std::to_string(j) + ") outside the diagram");
  return {mu.row(i) - j, lambda.col(j) - i};
}

long long pentagonal_count(int w) {
  if (w < 0) throw DomainError("pentagonal_count: negative weight");
  std::vector<long long> p(w + 1, 0);
  p[0] = 1;
  for (int n = 1; n <= w; ++n) {
    long long acc = 0;
    for (int k = 1;; ++k) {
      int g1 = k * (3 * k - 1) / 2;
      int g2 = k * (3 * k + 1) / 2;
      if (g1 > n && g2 > n) break;
      long long sign = (k % 2 == 1) ? 1 : -1;
      if (g1 <= n) acc += sign * p[n - g1];
      if (g2 <= n) acc += sign * p[n - g2];
    }
    p[n] = acc;
  }
  return p[w];
}

}  // namespace tauspec::partitions
