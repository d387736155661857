#pragma once

#include <map>
#include <optional>
#include <vector>

#include "jetcc/ratfunc.hpp"

namespace jetcc {

// Sparse row over integer column indices; column 0 is the leftmost
// (highest-precedence) column.
using SparseRow = std::map<int, RatFunc>;

// Exact reduced row echelon form over Q(x1..xn). The result is the canonical
// RREF of the row space: every pivot is 1 and pivot columns are cleared in
// all other rows. Pivot-row selection (sparsest, then lowest tag) only
// affects intermediate work, not the final matrix.
class SparseRREF {
 public:
  void add_row(SparseRow r, long tag = 0);
  void reduce();

  long rank() const { return static_cast<long>(rows_.size()); }
  // Nonzero rows after reduce(), sorted by pivot column ascending
  // (leftmost pivot first).
  const std::vector<SparseRow>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  long identities() const { return identities_; }

  // Reduces v against the current RREF basis (call reduce() first);
  // returns the normal form.
  SparseRow normal_form(SparseRow v) const;

 private:
  std::vector<SparseRow> pending_;
  std::vector<long> tags_;
  std::vector<SparseRow> rows_;
  std::vector<int> pivots_;
  long identities_ = 0;
  bool reduced_ = false;
};

// Dense exact helpers for small matrices over Q.
using QMatrix = std::vector<std::vector<Rational>>;

Rational mat_det(QMatrix a);
std::optional<QMatrix> mat_inverse(QMatrix a);

}  // namespace jetcc
