#include "logcoh/linalg.hpp"

namespace logcoh {

std::vector<int> rref(QMat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    Rat inv = m.at(r, c);
    for (int j = c; j < m.cols; ++j) m.at(r, j) /= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(QMat m) { return static_cast<int>(rref(m).size()); }

std::vector<QVec> kernel_basis(const QMat& m) {
  QMat w = m;
  std::vector<int> piv = rref(w);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (int c = 0; c < m.cols; ++c) {
    if (is_pivot[c]) continue;
    QVec v(m.cols, Rat(0));
    v[c] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -w.at(static_cast<int>(r), c);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVec> solve(const QMat& m, const QVec& b) {
  QMat aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[static_cast<std::size_t>(i)];
  }
  std::vector<int> piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols) return std::nullopt; // inconsistent
  QVec x(m.cols, Rat(0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(static_cast<int>(r), m.cols);
  return x;
}

QVec RowSpace::reduce(QVec v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rat& c = v[pivots_[k]];
    if (c == 0) continue;
    Rat f = c; // rows are normalized with pivot 1
    for (std::size_t j = 0; j < v.size(); ++j)
      if (rows_[k][j] != 0) v[j] -= f * rows_[k][j];
  }
  return v;
}

bool RowSpace::insert(QVec v) {
  v = reduce(std::move(v));
  int p = -1;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) {
      p = static_cast<int>(j);
      break;
    }
  if (p < 0) return false;
  Rat inv = v[p];
  for (auto& c : v) c /= inv;
  // back-substitute into existing rows to keep reduction canonical
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    Rat f = rows_[k][p];
    if (f == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) rows_[k][j] -= f * v[j];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

} // namespace logcoh
