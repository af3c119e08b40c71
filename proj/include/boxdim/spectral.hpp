#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "boxdim/condensation.hpp"

namespace boxdim {

template <typename Scalar>
struct PerronEstimate {
  Scalar radius = 0;
  /// Collatz-Wielandt enclosure: lower <= radius <= upper.
  Scalar lower = 0;
  Scalar upper = 0;
  /// ||A x - radius x||_1 with x the L1-normalised iterate.
  Scalar residual = 0;
  int iterations = 0;
  bool converged = false;
};

/// Perron root of an irreducible nonnegative matrix by power iteration on
/// A + I, which is primitive and shares the Perron vector of A, so periodic
/// blocks converge too. Stops once the Collatz-Wielandt bounds of A agree to
/// `tolerance` relative to max(1, upper).
template <typename Scalar>
PerronEstimate<Scalar> perron_root(const Eigen::SparseMatrix<Scalar>& a, Scalar tolerance,
                                   int max_iterations) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  PerronEstimate<Scalar> out;
  const Eigen::Index size = a.rows();
  if (size == 0) {
    out.converged = true;
    return out;
  }
  Vector x = Vector::Constant(size, Scalar(1) / Scalar(size));
  Vector y(size);
  for (int it = 1; it <= max_iterations; ++it) {
    y = a * x;
    Scalar lo = std::numeric_limits<Scalar>::infinity();
    Scalar hi = 0;
    for (Eigen::Index i = 0; i < size; ++i) {
      const Scalar r = y[i] / x[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    out.lower = lo;
    out.upper = hi;
    out.radius = (lo + hi) / 2;
    out.iterations = it;
    if (hi - lo <= tolerance * std::max(Scalar(1), hi)) {
      out.residual = (y - out.radius * x).template lpNorm<1>();
      out.converged = true;
      return out;
    }
    x += y;
    x /= x.sum();
  }
  out.residual = (y - out.radius * x).template lpNorm<1>();
  return out;
}

/// Spectral radius of an arbitrary nonnegative matrix: permute to block
/// triangular form via the SCCs of its pattern and take the largest Perron
/// root among the diagonal blocks.
template <typename Scalar>
PerronEstimate<Scalar> spectral_radius(const Eigen::SparseMatrix<Scalar>& a, Scalar tolerance,
                                       int max_iterations) {
  const auto size = static_cast<std::size_t>(a.rows());
  Adjacency adjacency(size);
  Eigen::SparseMatrix<Scalar, Eigen::RowMajor> rows(a);
  for (Eigen::Index r = 0; r < rows.outerSize(); ++r) {
    for (typename Eigen::SparseMatrix<Scalar, Eigen::RowMajor>::InnerIterator it(rows, r); it; ++it) {
      if (it.value() != Scalar(0)) adjacency[static_cast<std::size_t>(r)].push_back(static_cast<std::size_t>(it.col()));
    }
  }
  std::size_t block_count = 0;
  const auto label = scc_labels(adjacency, &block_count);
  std::vector<std::vector<std::size_t>> blocks(block_count);
  for (std::size_t v = 0; v < size; ++v) blocks[label[v]].push_back(v);

  PerronEstimate<Scalar> best;
  best.converged = true;
  std::vector<Eigen::Index> local(size, -1);
  for (const auto& block : blocks) {
    for (std::size_t i = 0; i < block.size(); ++i) local[block[i]] = static_cast<Eigen::Index>(i);
    std::vector<Eigen::Triplet<Scalar>> entries;
    for (std::size_t v : block) {
      for (typename Eigen::SparseMatrix<Scalar, Eigen::RowMajor>::InnerIterator it(rows, static_cast<Eigen::Index>(v)); it; ++it) {
        const auto w = static_cast<std::size_t>(it.col());
        if (label[w] == label[v] && it.value() != Scalar(0)) {
          entries.emplace_back(local[v], local[w], it.value());
        }
      }
    }
    for (std::size_t v : block) local[v] = -1;
    if (entries.empty()) continue;  // transient single state
    const auto n = static_cast<Eigen::Index>(block.size());
    Eigen::SparseMatrix<Scalar> sub(n, n);
    sub.setFromTriplets(entries.begin(), entries.end());
    const auto est = perron_root(sub, tolerance, max_iterations);
    if (!est.converged) return est;
    if (est.radius > best.radius) best = est;
  }
  return best;
}

}  // namespace boxdim
