#pragma once

#include <map>
#include <vector>

#include "opvg/amodule.hpp"

namespace opvg {

// Index tuples of exterior basis elements are kept as bitmasks over the
// module dimension; bit i set means e_i participates. Strictly increasing
// tuple order is the ascending bit order of the mask.
using IndexMask = unsigned;

IndexMask mask_from_tuple(const std::vector<int>& tuple, std::size_t dim);
std::vector<int> tuple_from_mask(IndexMask mask);

// All degree-k masks in lexicographic order of their index tuples.
std::vector<IndexMask> degree_masks(std::size_t dim, std::size_t degree);

// Sign of sorting the concatenation (tuple(a), tuple(b)); 0 when they share
// an index.
int wedge_sign(IndexMask a, IndexMask b);

// Degree-k element of the exterior power with AElem coefficients.
class MultiVector {
 public:
  MultiVector() = default;
  MultiVector(std::size_t dim, std::size_t degree, std::size_t fibers);

  static MultiVector basis(std::size_t dim, IndexMask mask, std::size_t fibers);

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  std::size_t fibers() const { return fibers_; }

  AElem coeff(IndexMask mask) const;  // zero for absent keys
  void set(IndexMask mask, AElem value);
  void accumulate(IndexMask mask, const AElem& value);
  const std::map<IndexMask, AElem>& coeffs() const { return coeffs_; }

  MultiVector conj() const;
  double norm() const;  // max over coefficient sup norms

 private:
  std::size_t dim_ = 0, degree_ = 0, fibers_ = 1;
  std::map<IndexMask, AElem> coeffs_;
};

MultiVector operator+(const MultiVector& a, const MultiVector& b);
MultiVector operator-(const MultiVector& a, const MultiVector& b);
MultiVector scale(const AElem& s, const MultiVector& v);

// Graded-commutative exterior product; degrees exceeding the dimension give
// the zero element of that degree.
MultiVector wedge(const MultiVector& a, const MultiVector& b);

// Oriented inner-product space: the stored basis order is the proper one.
struct OrientedSpace {
  InnerProductSpace base;

  explicit OrientedSpace(InnerProductSpace b) : base(std::move(b)) {}
  std::size_t dim() const { return base.dim(); }
  std::size_t fibers() const { return base.fibers(); }
};

// Gram matrix of the induced inner product on degree-k wedges:
// <e_I, e_J> = det(gram[I, J]).
AMatrix gram_k(const AMatrix& gram, std::size_t k);
AMatrix gram_k(const OrientedSpace& space, std::size_t k);

// <a, b> on same-degree multivectors under the induced inner product.
AElem mv_inner_gram(const AMatrix& gram, const MultiVector& a, const MultiVector& b);
AElem mv_inner(const OrientedSpace& space, const MultiVector& a, const MultiVector& b);

// Omega = sqrt|g| e^1 ^ ... ^ e^n expressed in the e-basis.
MultiVector volume_form(const OrientedSpace& space);

// Hodge star from the defining relation <alpha, *beta> = nu <beta ^ alpha, Omega>,
// solved against the degree-(n-k) Gram matrix. The general entry point takes
// the module Gram matrix and the e-basis coefficient of the volume form, which
// is how the manifold-level star (volume form sqrt|g| dx^1...dx^n over the
// cotangent Gram g^ij) reuses it.
MultiVector hodge_with_volume(const AMatrix& gram, const AElem& vol_coeff, const MultiVector& b);
MultiVector hodge(const OrientedSpace& space, const MultiVector& b);

}  // namespace opvg
