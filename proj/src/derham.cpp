#include "logcoh/derham.hpp"

#include <algorithm>
#include <map>

namespace logcoh {

namespace {

const std::vector<std::string>& xy() {
  static const std::vector<std::string> v{"x", "y"};
  return v;
}

int ord_or_zero(const WeylOp& p, const WeightVector& w) {
  // shifts only matter against nonzero entries; 0 never violates filtration
  return p.is_zero() ? 0 : ord_w(p, w);
}

std::vector<Expv> stage_monomials(std::optional<long> bound, int shift) {
  std::vector<Expv> out;
  if (!bound) return out;
  long cap = *bound - 1 + shift;
  for (long d = 0; d <= cap; ++d)
    for (long a = d; a >= 0; --a) {
      Expv m;
      m.n = 2;
      m.e[0] = static_cast<int>(a);
      m.e[1] = static_cast<int>(d - a);
      out.push_back(m);
    }
  return out;
}

Poly mono_poly(const Expv& m) {
  Poly p(xy());
  p.add_term(m, Rat(1));
  return p;
}

// column block: images of stage monomials under u ↦ class(u·E),
// expanded in the target stage basis
void fill_block(QMat& M, int row0, int col0, const std::vector<Expv>& src,
                const std::vector<Expv>& dst, const WeylOp& entry) {
  if (entry.is_zero() || src.empty()) return;
  WeylOp adj = adjoint(entry);
  std::map<std::pair<int, int>, int> index;
  for (int i = 0; i < static_cast<int>(dst.size()); ++i)
    index[{dst[i].e[0], dst[i].e[1]}] = i;
  for (int j = 0; j < static_cast<int>(src.size()); ++j) {
    Poly img = apply(adj, mono_poly(src[j]));
    for (const auto& [m, c] : img.terms()) {
      auto it = index.find({m.e[0], m.e[1]});
      if (it == index.end())
        fail(Err::Internal, "filtration violated: image leaves the stage");
      M.at(row0 + it->second, col0 + j) = c;
    }
  }
}

QVec column(const QMat& M, int j) {
  QVec v(M.rows, Rat(0));
  for (int i = 0; i < M.rows; ++i) v[i] = M.at(i, j);
  return v;
}

struct Window {
  std::vector<Expv> left, mid1, mid2, target;
  QMat M2, M1;
  int mid_dim() const { return static_cast<int>(mid1.size() + mid2.size()); }
};

Window build_window(const FilteredComplex& fc, std::optional<long> bound) {
  Window w;
  w.left = stage_monomials(bound, fc.left_shift);
  w.mid1 = stage_monomials(bound, fc.m1);
  w.mid2 = stage_monomials(bound, fc.m2);
  w.target = stage_monomials(bound, FilteredComplex::target_shift);

  int n1 = static_cast<int>(w.mid1.size());
  w.M2 = QMat(w.mid_dim(), static_cast<int>(w.left.size()));
  fill_block(w.M2, 0, 0, w.left, w.mid1, fc.a2[0]);
  fill_block(w.M2, n1, 0, w.left, w.mid2, fc.a2[1]);
  w.M1 = QMat(static_cast<int>(w.target.size()), w.mid_dim());
  fill_block(w.M1, 0, 0, w.mid1, w.target, fc.a1[0]);
  fill_block(w.M1, 0, n1, w.mid2, w.target, fc.a1[1]);

  // composite must vanish on the nose
  for (int j = 0; j < w.M2.cols; ++j)
    for (int i = 0; i < w.M1.rows; ++i) {
      Rat acc(0);
      for (int k = 0; k < w.M2.rows; ++k)
        acc += w.M1.at(i, k) * w.M2.at(k, j);
      if (acc != 0) fail(Err::Internal, "truncated composite is nonzero");
    }
  return w;
}

// embed a mid-stage vector for the base window into the coordinates of a
// larger window; stage bases are nested prefixes, so blocks shift in place
QVec embed_mid(const QVec& v, int n1_small, int n_small, int n1_big,
               int mid_big) {
  QVec out(mid_big, Rat(0));
  for (int i = 0; i < n1_small; ++i) out[i] = v[i];
  for (int i = n1_small; i < n_small; ++i) out[n1_big + (i - n1_small)] = v[i];
  return out;
}

struct SaturatedDims {
  int h1 = 0, h2 = 0;
  std::vector<int> h1_pick; // indices into the base-window kernel basis
  std::vector<int> h2_pick; // indices into the base-window target monomials
};

SaturatedDims saturate_against(const Window& big,
                               const std::vector<QVec>& ker1, int n1_small,
                               int n_small, int target_small) {
  SaturatedDims out;
  int n1_big = static_cast<int>(big.mid1.size());

  RowSpace image2;
  for (int j = 0; j < big.M2.cols; ++j) image2.insert(column(big.M2, j));
  for (int i = 0; i < static_cast<int>(ker1.size()); ++i)
    if (image2.insert(
            embed_mid(ker1[i], n1_small, n_small, n1_big, big.mid_dim())))
      out.h1_pick.push_back(i);
  out.h1 = static_cast<int>(out.h1_pick.size());

  RowSpace image1;
  for (int j = 0; j < big.M1.cols; ++j) image1.insert(column(big.M1, j));
  int tbig = static_cast<int>(big.target.size());
  for (int i = 0; i < target_small; ++i) {
    QVec e(tbig, Rat(0));
    e[i] = 1;
    if (image1.insert(e)) out.h2_pick.push_back(i);
  }
  out.h2 = static_cast<int>(out.h2_pick.size());
  return out;
}

} // namespace

FilteredComplex spencer_resolution(const LogFrame& frame) {
  FilteredComplex fc;
  fc.frame = frame;
  WeightVector w = WeightVector::integration(2);

  fc.m1 = 1 - ord_w(frame.ell1, w);
  fc.m2 = 1 - ord_w(frame.ell2, w);
  fc.a1 = {frame.ell1, frame.ell2};
  fc.a2 = {-frame.ell2 - WeylOp::from_poly(frame.b1),
           frame.ell1 - WeylOp::from_poly(frame.b2)};
  fc.left_shift = std::min(fc.m1 - ord_or_zero(fc.a2[0], w),
                           fc.m2 - ord_or_zero(fc.a2[1], w));

  if (!(weyl_mul(fc.a2[0], fc.a1[0]) + weyl_mul(fc.a2[1], fc.a1[1])).is_zero())
    fail(Err::Internal, "resolution composite is nonzero");
  int mshift[2] = {fc.m1, fc.m2};
  for (int i = 0; i < 2; ++i) {
    if (mshift[i] + ord_or_zero(fc.a1[i], w) > FilteredComplex::target_shift)
      fail(Err::Internal, "a1 is not filtered");
    if (fc.left_shift + ord_or_zero(fc.a2[i], w) > mshift[i])
      fail(Err::Internal, "a2 is not filtered");
  }
  return fc;
}

std::optional<long> truncation_bound(const BFunction& bf) {
  if (bf.integral_roots.empty()) return std::nullopt;
  return bf.integral_roots.back();
}

TruncatedComplex truncate(const FilteredComplex& fc,
                          std::optional<long> bound) {
  TruncatedComplex tc;
  tc.bound = bound;
  Window w = build_window(fc, bound);
  tc.left = std::move(w.left);
  tc.mid1 = std::move(w.mid1);
  tc.mid2 = std::move(w.mid2);
  tc.target = std::move(w.target);
  tc.M2 = std::move(w.M2);
  tc.M1 = std::move(w.M1);
  tc.fc = fc;
  return tc;
}

CohomologyClasses cohomology(const TruncatedComplex& tc) {
  CohomologyClasses out;

  // kernels never need saturation: a window cocycle is a cocycle outright
  auto ker2 = kernel_basis(tc.M2);
  out.dims[0] = static_cast<int>(ker2.size());
  for (const auto& v : ker2) {
    Poly rep(xy());
    for (int i = 0; i < tc.left_dim(); ++i)
      if (v[i] != 0) rep.add_term(tc.left[i], v[i]);
    out.h0.push_back(rep);
  }

  if (!tc.bound) return out;

  auto ker1 = kernel_basis(tc.M1);
  int n1 = static_cast<int>(tc.mid1.size());
  int nmid = tc.mid_dim();
  int ntgt = tc.target_dim();

  // bookkeeping sanity on the base window: for the bare (unsaturated)
  // complex the alternating sums of dimensions and ranks must agree
  {
    RowSpace im2_base;
    for (int j = 0; j < tc.M2.cols; ++j) im2_base.insert(column(tc.M2, j));
    RowSpace im1_base;
    for (int j = 0; j < tc.M1.cols; ++j) im1_base.insert(column(tc.M1, j));
    long h0n = out.dims[0];
    long h1n = static_cast<long>(ker1.size()) - im2_base.dim();
    long h2n = static_cast<long>(ntgt) - im1_base.dim();
    if (h0n - h1n + h2n != tc.left_dim() - nmid + ntgt)
      fail(Err::Internal, "Euler characteristic mismatch");
  }

  // saturate the image subspaces against growing windows until the
  // dimensions plateau three times in a row
  long base = *tc.bound;
  SaturatedDims d0 = saturate_against(build_window(tc.fc, base), ker1, n1,
                                      nmid, ntgt);
  SaturatedDims d1 = saturate_against(build_window(tc.fc, base + 1), ker1, n1,
                                      nmid, ntgt);
  SaturatedDims d2 = saturate_against(build_window(tc.fc, base + 2), ker1, n1,
                                      nmid, ntgt);
  const int kGuard = 60;
  for (int step = 0;; ++step) {
    if (d1.h1 > d0.h1 || d2.h1 > d1.h1 || d1.h2 > d0.h2 || d2.h2 > d1.h2)
      fail(Err::Internal, "saturated dimensions increased");
    if (d0.h1 == d1.h1 && d1.h1 == d2.h1 && d0.h2 == d1.h2 && d1.h2 == d2.h2)
      break;
    if (step >= kGuard)
      fail(Err::Internal, "image saturation did not stabilize");
    d0 = std::move(d1);
    d1 = std::move(d2);
    d2 = saturate_against(build_window(tc.fc, base + 3 + step), ker1, n1,
                          nmid, ntgt);
  }

  for (int i : d0.h1_pick) {
    const QVec& v = ker1[i];
    Poly c1(xy()), c2(xy());
    for (int j = 0; j < nmid; ++j) {
      if (v[j] == 0) continue;
      if (j < n1)
        c1.add_term(tc.mid1[j], v[j]);
      else
        c2.add_term(tc.mid2[j - n1], v[j]);
    }
    out.h1.emplace_back(c1, c2);
  }
  out.dims[1] = d0.h1;
  for (int i : d0.h2_pick) out.h2.push_back(mono_poly(tc.target[i]));
  out.dims[2] = d0.h2;
  return out;
}

CohomologyClasses stable_cohomology(const FilteredComplex& fc,
                                    std::optional<long> bound) {
  if (!bound) return cohomology(truncate(fc, bound));
  long base = *bound;
  auto at = [&](long b) { return cohomology(truncate(fc, b)); };
  CohomologyClasses c0 = at(base), c1 = at(base + 1), c2 = at(base + 2);
  const int kGuard = 60;
  for (int step = 0;; ++step) {
    if (c0.dims == c1.dims && c1.dims == c2.dims) return c0;
    if (step >= kGuard)
      fail(Err::Internal, "window growth did not stabilize");
    c0 = std::move(c1);
    c1 = std::move(c2);
    c2 = at(base + 3 + step);
  }
}

} // namespace logcoh
