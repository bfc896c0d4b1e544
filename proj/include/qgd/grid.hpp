#pragma once

// Mesh operators on the node mesh and the half-node mesh.
//
// A node array has N entries, node k at x_min + k h. A half-mesh array has
// N + 1 entries; entry i sits at index i - 1/2, between nodes i - 1 and i.
// The two outermost half-nodes use one ghost node per side supplied by the
// boundary rule: Periodic wraps, CopyOutflow replicates the end node.

#include <Eigen/Core>

#include <string>

#include "qgd/core.hpp"

namespace qgd {

template <typename Scalar>
using ArrayX = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

namespace detail {

inline void require_length(Eigen::Index actual, Eigen::Index expected, const char* what) {
  if (actual != expected) {
    throw Error(ErrorCode::LengthMismatch, std::string(what) + ": expected length " +
                                               std::to_string(expected) + ", got " +
                                               std::to_string(actual));
  }
}

}  // namespace detail

/// Node array padded with one ghost node per side (length N + 2).
template <typename Derived>
ArrayX<typename Derived::Scalar> with_ghosts(const Eigen::ArrayBase<Derived>& v, const Mesh& mesh) {
  detail::require_length(v.size(), mesh.n, "with_ghosts");
  const Eigen::Index n = v.size();
  ArrayX<typename Derived::Scalar> ext(n + 2);
  ext.segment(1, n) = v;
  if (mesh.boundary == Boundary::Periodic) {
    ext(0) = v(n - 1);
    ext(n + 1) = v(0);
  } else {
    ext(0) = v(0);
    ext(n + 1) = v(n - 1);
  }
  return ext;
}

/// (s v)_{k-1/2} = (v_{k-1} + v_k) / 2.
template <typename Derived>
ArrayX<typename Derived::Scalar> half_average(const Eigen::ArrayBase<Derived>& v, const Mesh& mesh) {
  const auto ext = with_ghosts(v, mesh);
  const Eigen::Index m = ext.size() - 1;
  return 0.5 * (ext.head(m) + ext.tail(m));
}

/// (delta v)_{k-1/2} = (v_k - v_{k-1}) / h.
template <typename Derived>
ArrayX<typename Derived::Scalar> half_difference(const Eigen::ArrayBase<Derived>& v,
                                                 const Mesh& mesh) {
  const auto ext = with_ghosts(v, mesh);
  const Eigen::Index m = ext.size() - 1;
  return (ext.tail(m) - ext.head(m)) / mesh.h;
}

/// (delta* y)_k = (y_{k+1/2} - y_{k-1/2}) / h.
template <typename Derived>
ArrayX<typename Derived::Scalar> node_difference(const Eigen::ArrayBase<Derived>& y,
                                                 const Mesh& mesh) {
  detail::require_length(y.size(), mesh.n + 1, "node_difference");
  return (y.tail(mesh.n) - y.head(mesh.n)) / mesh.h;
}

/// (s* y)_k = (y_{k-1/2} + y_{k+1/2}) / 2.
template <typename Derived>
ArrayX<typename Derived::Scalar> node_average(const Eigen::ArrayBase<Derived>& y,
                                              const Mesh& mesh) {
  detail::require_length(y.size(), mesh.n + 1, "node_average");
  return 0.5 * (y.head(mesh.n) + y.tail(mesh.n));
}

/// v_{+,k} = v_{k+1} (offset = +1) or v_{-,k} = v_{k-1} (offset = -1).
template <typename Derived>
ArrayX<typename Derived::Scalar> shifted(const Eigen::ArrayBase<Derived>& v, const Mesh& mesh,
                                         int offset) {
  if (offset != 1 && offset != -1) {
    throw Error(ErrorCode::InvalidArgument, "shift offset must be +1 or -1");
  }
  const auto ext = with_ghosts(v, mesh);
  return ext.segment(1 + offset, mesh.n);
}

}  // namespace qgd
