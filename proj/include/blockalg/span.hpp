#pragma once

#include <cstddef>
#include <map>

#include "blockalg/core.hpp"

namespace blockalg {

/// Row-echelon basis of a finite-dimensional subspace of sparse vectors.
/// Each row is normalized to coefficient 1 on its pivot, and every other
/// term of the row comes after the pivot in BasisOrder.
class SparseEchelon {
 public:
  /// Residual of v after eliminating every pivot it touches; zero iff v ∈ span.
  Terms reduce(Terms v) const;
  bool contains(const Terms& v) const { return reduce(v).empty(); }
  /// Adds v to the span; returns false if it was already there.
  bool insert(const Terms& v) { return !insert_reduced(v).empty(); }
  /// Like insert, but returns the normalized residual that was added (empty if none).
  Terms insert_reduced(const Terms& v);
  std::size_t dim() const { return rows_.size(); }

 private:
  std::map<BasisIdx, Terms, BasisOrder> rows_;
};

}  // namespace blockalg
