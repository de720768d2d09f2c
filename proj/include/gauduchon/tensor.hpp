#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gauduchon {

/// Dense cubical complex tensor of fixed rank over indices 0..n-1.
template <int Rank>
class Tensor {
public:
  using value_type = std::complex<double>;

  Tensor() = default;
  explicit Tensor(int n) : n_(n), data_(size_for(n)) {}

  int n() const { return n_; }

  template <typename... Idx>
  value_type& operator()(Idx... idx) {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset({static_cast<int>(idx)...})];
  }
  template <typename... Idx>
  const value_type& operator()(Idx... idx) const {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset({static_cast<int>(idx)...})];
  }

  const std::vector<value_type>& data() const { return data_; }

  double max_norm() const {
    double best = 0.0;
    for (const auto& v : data_) best = std::max(best, std::abs(v));
    return best;
  }

  Tensor& operator-=(const Tensor& other) {
    if (n_ != other.n_) throw std::invalid_argument("tensor size mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
  }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }

  /// Position of the entry with the largest magnitude.
  std::array<int, Rank> argmax() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < data_.size(); ++k)
      if (std::abs(data_[k]) > std::abs(data_[best])) best = k;
    std::array<int, Rank> idx{};
    for (int r = Rank - 1; r >= 0; --r) {
      idx[static_cast<std::size_t>(r)] = static_cast<int>(best % static_cast<std::size_t>(n_));
      best /= static_cast<std::size_t>(n_);
    }
    return idx;
  }

private:
  static std::size_t size_for(int n) {
    std::size_t s = 1;
    for (int r = 0; r < Rank; ++r) s *= static_cast<std::size_t>(n);
    return s;
  }
  std::size_t offset(std::array<int, Rank> idx) const {
    std::size_t off = 0;
    for (int v : idx) {
      if (v < 0 || v >= n_) throw std::out_of_range("tensor index out of range");
      off = off * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
    }
    return off;
  }

  int n_ = 0;
  std::vector<value_type> data_;
};

using Tensor2 = Tensor<2>;
using Tensor3 = Tensor<3>;
using Tensor4 = Tensor<4>;

}  // namespace gauduchon
