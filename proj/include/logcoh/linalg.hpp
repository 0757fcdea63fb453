#ifndef LOGCOH_LINALG_HPP
#define LOGCOH_LINALG_HPP

#include <optional>
#include <vector>

#include "logcoh/rat.hpp"

namespace logcoh {

using QVec = std::vector<Rat>;

// Dense exact rational matrix, row major.
struct QMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Rat(0)) {}
  Rat& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const Rat& at(int r, int c) const {
    return a[static_cast<std::size_t>(r) * cols + c];
  }
};

// In-place reduced row echelon form; returns pivot column per pivot row.
std::vector<int> rref(QMat& m);

int rank(QMat m);

// Basis of {x : M x = 0}, canonical (free variable = 1, pivots solved).
std::vector<QVec> kernel_basis(const QMat& m);

// One solution of M x = b, or nullopt.
std::optional<QVec> solve(const QMat& m, const QVec& b);

// Incrementally built row space with canonical elimination, used both for
// rank tracking and for reducing vectors against a subspace.
class RowSpace {
public:
  // reduce v against the stored rows (eliminating at their pivot columns)
  QVec reduce(QVec v) const;
  // reduce and, when the remainder is nonzero, insert it; returns true if
  // the vector enlarged the space
  bool insert(QVec v);
  int dim() const { return static_cast<int>(rows_.size()); }

  // pivot positions are chosen as the first nonzero coordinate; coordinate
  // order is fixed by the caller's vector layout
  const std::vector<QVec>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

private:
  std::vector<QVec> rows_;
  std::vector<int> pivots_;
};

} // namespace logcoh

#endif
