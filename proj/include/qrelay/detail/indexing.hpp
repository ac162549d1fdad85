#pragma once

#include <vector>

#include "qrelay/shape.hpp"

namespace qrelay::detail {

inline std::vector<Eigen::Index> dims_of(const SubsystemShape& s) {
  std::vector<Eigen::Index> d(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) d[i] = s[i].dim;
  return d;
}

// First subsystem most significant (Kronecker convention).
inline std::vector<Eigen::Index> strides_of(const std::vector<Eigen::Index>& dims) {
  std::vector<Eigen::Index> st(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
    st[i] = st[i + 1] * dims[i + 1];
  return st;
}

// Flat offsets contributed by the subsystems at `pos` as their joint index runs
// over its own mixed-radix range (pos order, last digit fastest). The full flat
// index of the original space is the sum of the offsets of disjoint groups.
inline std::vector<Eigen::Index> offsets_for(const std::vector<std::size_t>& pos,
                                             const std::vector<Eigen::Index>& dims,
                                             const std::vector<Eigen::Index>& strides) {
  Eigen::Index total = 1;
  for (auto p : pos) total *= dims[p];
  std::vector<Eigen::Index> out(static_cast<std::size_t>(total));
  std::vector<Eigen::Index> digit(pos.size(), 0);
  for (Eigen::Index f = 0; f < total; ++f) {
    Eigen::Index off = 0;
    for (std::size_t k = 0; k < pos.size(); ++k) off += digit[k] * strides[pos[k]];
    out[static_cast<std::size_t>(f)] = off;
    for (int k = static_cast<int>(pos.size()) - 1; k >= 0; --k) {
      if (++digit[k] < dims[pos[k]]) break;
      digit[k] = 0;
    }
  }
  return out;
}

}  // namespace qrelay::detail
