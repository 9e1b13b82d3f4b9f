#ifndef SLICESIM_TENSOR_HPP
#define SLICESIM_TENSOR_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace slicesim {

/// Dense slice-by-node-by-kind tensor, row-major with kind fastest.
/// Used both for allocations x_{i,j,k} and for per-unit weights.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int num_slices, int num_nodes, int num_kinds, double fill = 0.0)
      : num_slices_(num_slices),
        num_nodes_(num_nodes),
        num_kinds_(num_kinds),
        values_(static_cast<std::size_t>(num_slices) * num_nodes * num_kinds, fill) {}

  int num_slices() const { return num_slices_; }
  int num_nodes() const { return num_nodes_; }
  int num_kinds() const { return num_kinds_; }
  std::size_t size() const { return values_.size(); }

  double& at(int i, int j, int k) { return values_[index(i, j, k)]; }
  double at(int i, int j, int k) const { return values_[index(i, j, k)]; }

  std::span<double> flat() { return values_; }
  std::span<const double> flat() const { return values_; }

  bool same_shape(const Tensor3& other) const {
    return num_slices_ == other.num_slices_ && num_nodes_ == other.num_nodes_ &&
           num_kinds_ == other.num_kinds_;
  }

  /// Sum of x_{i,j,k} over all slices for a fixed (node, kind).
  double node_sum(int j, int k) const {
    double s = 0.0;
    for (int i = 0; i < num_slices_; ++i) s += at(i, j, k);
    return s;
  }

  /// Sum of x_{i,j,k} over all nodes for a fixed (slice, kind).
  double slice_sum(int i, int k) const {
    double s = 0.0;
    for (int j = 0; j < num_nodes_; ++j) s += at(i, j, k);
    return s;
  }

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * num_nodes_ + j) * num_kinds_ + k;
  }

  int num_slices_ = 0;
  int num_nodes_ = 0;
  int num_kinds_ = 0;
  std::vector<double> values_;
};

using AllocationTensor = Tensor3;

}  // namespace slicesim

#endif
