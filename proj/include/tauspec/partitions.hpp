#ifndef TAUSPEC_PARTITIONS_HPP
#define TAUSPEC_PARTITIONS_HPP

#include <utility>
#include <vector>

namespace tauspec::partitions {

// Integer partition with cached conjugate, so arm and leg lookups are O(1).
// Rows and columns are 1-based in the cell interface.
class Partition {
public:
  Partition() = default;  // empty partition
  explicit Partition(std::vector<int> parts);

  int weight() const { return weight_; }
  int rows() const { return static_cast<int>(parts_.size()); }
  const std::vector<int>& parts() const { return parts_; }
  const std::vector<int>& conjugate_parts() const { return conj_; }

  // Row/column lengths; zero outside the diagram.
  int row(int i) const {
    return (i >= 1 && i <= rows()) ? parts_[i - 1] : 0;
  }
  int col(int j) const {
    return (j >= 1 && j <= static_cast<int>(conj_.size())) ? conj_[j - 1] : 0;
  }
  bool contains(int i, int j) const { return i >= 1 && j >= 1 && j <= row(i); }

  Partition conjugate() const { return Partition(conj_); }

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }

private:
  std::vector<int> parts_;
  std::vector<int> conj_;
  int weight_ = 0;
};

// All partitions of weights 0..max_weight, indexed by weight, each list in
// lexicographically descending order ([4],[3,1],[2,2],[2,1,1],[1,1,1,1]).
// The table is memoized per process; safe for concurrent readers once built.
const std::vector<std::vector<Partition>>& partitions_up_to(int max_weight);

// Convenience accessor for one weight.
const std::vector<Partition>& partitions_of(int weight);

// Arm measured in mu and leg measured in lambda for a cell of lambda:
//   a_mu(i,j) = mu_i - j,   l_lambda(i,j) = lambda'_j - i.
// Throws DomainError if the cell is outside lambda.
std::pair<int, int> arm_leg(const Partition& lambda, const Partition& mu,
                            int i, int j);

// Partition function p(w) by Euler's pentagonal-number recurrence.
// Lives here as an independent counting oracle for tests.
long long pentagonal_count(int w);

}  // namespace tauspec::partitions

#endif
