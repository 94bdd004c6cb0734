#include "opvg/exterior.hpp"

#include <algorithm>
#include <bit>

namespace opvg {

IndexMask mask_from_tuple(const std::vector<int>& tuple, std::size_t dim) {
  IndexMask mask = 0;
  int prev = -1;
  for (int i : tuple) {
    if (i <= prev || i < 0 || static_cast<std::size_t>(i) >= dim) {
      fail(Errc::dim_mismatch, "index tuple must be strictly increasing and within dimension");
    }
    mask |= 1u << i;
    prev = i;
  }
  return mask;
}

std::vector<int> tuple_from_mask(IndexMask mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

std::vector<IndexMask> degree_masks(std::size_t dim, std::size_t degree) {
  std::vector<IndexMask> out;
  std::vector<int> tuple(degree);
  // lexicographic enumeration of strictly increasing tuples
  auto rec = [&](auto&& self, std::size_t slot, int start) -> void {
    if (slot == degree) {
      out.push_back(mask_from_tuple(tuple, dim));
      return;
    }
    for (int i = start; i < static_cast<int>(dim); ++i) {
      tuple[slot] = i;
      self(self, slot + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

int wedge_sign(IndexMask a, IndexMask b) {
  if ((a & b) != 0) return 0;
  int inversions = 0;
  for (IndexMask rest = b; rest != 0; rest &= rest - 1) {
    const IndexMask low = rest & ~(rest - 1);      // lowest set bit of b
    inversions += std::popcount(a & ~(low - 1) & ~low);  // elements of a above it
  }
  return inversions % 2 == 0 ? 1 : -1;
}

MultiVector::MultiVector(std::size_t dim, std::size_t degree, std::size_t fibers)
    : dim_(dim), degree_(degree), fibers_(fibers) {
  if (degree > dim) fail(Errc::dim_mismatch, "degree exceeds dimension");
}

MultiVector MultiVector::basis(std::size_t dim, IndexMask mask, std::size_t fibers) {
  MultiVector out(dim, static_cast<std::size_t>(std::popcount(mask)), fibers);
  out.set(mask, AElem::unit(fibers));
  return out;
}

AElem MultiVector::coeff(IndexMask mask) const {
  auto it = coeffs_.find(mask);
  return it == coeffs_.end() ? AElem::zero(fibers_) : it->second;
}

void MultiVector::set(IndexMask mask, AElem value) {
  if (static_cast<std::size_t>(std::popcount(mask)) != degree_) {
    fail(Errc::dim_mismatch, "coefficient key has wrong degree");
  }
  if (value.fibers() != fibers_) fail(Errc::fiber_count_mismatch, "coefficient fiber count");
  coeffs_[mask] = std::move(value);
}

void MultiVector::accumulate(IndexMask mask, const AElem& value) {
  auto it = coeffs_.find(mask);
  if (it == coeffs_.end()) {
    set(mask, value);
  } else {
    it->second += value;
  }
}

MultiVector MultiVector::conj() const {
  MultiVector out(dim_, degree_, fibers_);
  for (const auto& [mask, c] : coeffs_) out.set(mask, involution(c));
  return out;
}

double MultiVector::norm() const {
  double m = 0.0;
  for (const auto& [mask, c] : coeffs_) m = std::max(m, c.norm());
  return m;
}

MultiVector operator+(const MultiVector& a, const MultiVector& b) {
  if (a.dim() != b.dim() || a.degree() != b.degree()) {
    fail(Errc::dim_mismatch, "multivector sum shape mismatch");
  }
  MultiVector out = a;
  for (const auto& [mask, c] : b.coeffs()) out.accumulate(mask, c);
  return out;
}

MultiVector operator-(const MultiVector& a, const MultiVector& b) {
  if (a.dim() != b.dim() || a.degree() != b.degree()) {
    fail(Errc::dim_mismatch, "multivector difference shape mismatch");
  }
  MultiVector out = a;
  for (const auto& [mask, c] : b.coeffs()) out.accumulate(mask, -c);
  return out;
}

MultiVector scale(const AElem& s, const MultiVector& v) {
  MultiVector out(v.dim(), v.degree(), v.fibers());
  for (const auto& [mask, c] : v.coeffs()) out.set(mask, s * c);
  return out;
}

MultiVector wedge(const MultiVector& a, const MultiVector& b) {
  if (a.dim() != b.dim()) fail(Errc::dim_mismatch, "wedge of different dimensions");
  const std::size_t deg = a.degree() + b.degree();
  if (deg > a.dim()) return MultiVector(a.dim(), a.dim(), a.fibers());  // zero by degree
  MultiVector out(a.dim(), deg, a.fibers());
  for (const auto& [ma, ca] : a.coeffs()) {
    for (const auto& [mb, cb] : b.coeffs()) {
      const int sgn = wedge_sign(ma, mb);
      if (sgn == 0) continue;
      AElem term = ca * cb;
      out.accumulate(ma | mb, sgn > 0 ? term : -term);
    }
  }
  return out;
}

AMatrix gram_k(const AMatrix& gram, std::size_t k) {
  const std::size_t n = gram.rows();
  const auto masks = degree_masks(n, k);
  AMatrix out(masks.size(), masks.size(), gram.fibers());
  for (std::size_t a = 0; a < masks.size(); ++a) {
    const auto ti = tuple_from_mask(masks[a]);
    for (std::size_t b = 0; b < masks.size(); ++b) {
      const auto tj = tuple_from_mask(masks[b]);
      AMatrix sub(k, k, gram.fibers());
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c)
          sub.at(r, c) = gram.at(static_cast<std::size_t>(ti[r]), static_cast<std::size_t>(tj[c]));
      out.at(a, b) = det(sub);
    }
  }
  return out;
}

AMatrix gram_k(const OrientedSpace& space, std::size_t k) { return gram_k(space.base.gram(), k); }

AElem mv_inner_gram(const AMatrix& gram, const MultiVector& a, const MultiVector& b) {
  if (a.degree() != b.degree() || a.dim() != b.dim()) {
    fail(Errc::dim_mismatch, "inner product of mismatched multivectors");
  }
  const auto masks = degree_masks(a.dim(), a.degree());
  const AMatrix gk = gram_k(gram, a.degree());
  AElem out = AElem::zero(gram.fibers());
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const AElem ai = a.coeff(masks[i]);
    if (ai.is_zero()) continue;
    for (std::size_t j = 0; j < masks.size(); ++j) {
      out += ai * involution(b.coeff(masks[j])) * gk.at(i, j);
    }
  }
  return out;
}

AElem mv_inner(const OrientedSpace& space, const MultiVector& a, const MultiVector& b) {
  return mv_inner_gram(space.base.gram(), a, b);
}

MultiVector volume_form(const OrientedSpace& space) {
  const AElem g = det(space.base.gram());
  const AElem coeff = sqrt_pos(abs_parts(g).abs) / g;  // sqrt|g| e^1...e^n = (sqrt|g|/g) e_1...e_n
  MultiVector out(space.dim(), space.dim(), space.fibers());
  out.set((1u << space.dim()) - 1u, coeff);
  return out;
}

MultiVector hodge_with_volume(const AMatrix& gram, const AElem& vol_coeff, const MultiVector& b) {
  const std::size_t n = gram.rows();
  if (b.dim() != n) fail(Errc::dim_mismatch, "multivector dimension does not match Gram matrix");
  const std::size_t k = b.degree();
  const std::size_t k2 = n - k;
  const IndexMask full = (1u << n) - 1u;

  const AElem g = det(gram);
  const AElem nu = signature_of_gram(gram);
  const AElem q = involution(vol_coeff) * g;  // <e_1..n, Omega> factor

  const auto masks = degree_masks(n, k2);
  std::vector<AElem> rhs(masks.size(), AElem::zero(gram.fibers()));
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const IndexMask complement = full ^ masks[i];
    const int sgn = wedge_sign(complement, masks[i]);
    AElem c = b.coeff(complement);
    if (sgn < 0) c = -c;
    rhs[i] = nu * c * q;
  }

  const AMatrix g2 = gram_k(gram, k2);
  const std::vector<AElem> y = inverse(g2).apply(rhs);  // y = conj(star coefficients)

  MultiVector out(n, k2, gram.fibers());
  for (std::size_t j = 0; j < masks.size(); ++j) {
    if (!y[j].is_zero()) out.set(masks[j], involution(y[j]));
  }
  return out;
}

MultiVector hodge(const OrientedSpace& space, const MultiVector& b) {
  const AElem g = det(space.base.gram());
  const AElem coeff = sqrt_pos(abs_parts(g).abs) / g;
  return hodge_with_volume(space.base.gram(), coeff, b);
}

}  // namespace opvg
