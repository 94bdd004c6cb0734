#pragma once

#include <cstddef>
#include <vector>

#include "opvg/algebra.hpp"

namespace opvg {

// Dense matrix with AElem entries; carrier for Gram matrices, their inverses
// and basis transitions. All entries share one fiber count.
class AMatrix {
 public:
  AMatrix() = default;
  AMatrix(std::size_t rows, std::size_t cols, std::size_t fibers);
  AMatrix(std::size_t rows, std::size_t cols, std::vector<AElem> entries);

  static AMatrix identity(std::size_t n, std::size_t fibers);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t fibers() const { return fibers_; }

  AElem& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const AElem& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  AMatrix transpose() const;
  AMatrix conj() const;  // entrywise involution
  bool is_hermitian(double eps = tol::self_adjoint) const;

  std::vector<AElem> apply(const std::vector<AElem>& x) const;  // this * x

 private:
  std::size_t rows_ = 0, cols_ = 0, fibers_ = 1;
  std::vector<AElem> entries_;
};

AMatrix operator*(const AMatrix& a, const AMatrix& b);
AMatrix operator+(const AMatrix& a, const AMatrix& b);
AMatrix operator-(const AMatrix& a, const AMatrix& b);
AMatrix scale(const AElem& s, const AMatrix& m);

// Cofactor-expansion determinant over the commutative algebra; dimension
// capped at 6 (a 0x0 determinant is the unit).
AElem det(const AMatrix& m);

// Adjugate divided by determinant; throws SingularMatrix naming the fiber
// where the determinant fails invertibility.
AMatrix inverse(const AMatrix& m);

// Free module with a fixed basis and Hermitian, entrywise self-adjoint,
// nondegenerate Gram matrix (the manifold-facing restriction).
class InnerProductSpace {
 public:
  explicit InnerProductSpace(AMatrix gram);

  std::size_t dim() const { return gram_.rows(); }
  std::size_t fibers() const { return gram_.fibers(); }
  const AMatrix& gram() const { return gram_; }

 private:
  AMatrix gram_;
};

// <x, y> = sum_ij x_i y_j^* g_ij  (linear first slot, conjugate-linear second).
AElem ip_eval_gram(const AMatrix& gram, const std::vector<AElem>& x, const std::vector<AElem>& y);
AElem ip_eval(const InnerProductSpace& space, const std::vector<AElem>& x,
              const std::vector<AElem>& y);

// Rows are the coefficients of the reciprocal basis e^i = g^ij e_j.
AMatrix reciprocal_basis(const InnerProductSpace& space);

// nu = |g| / g for g = det(gram); self-adjoint, nu^2 = 1, basis invariant.
AElem signature_of_gram(const AMatrix& gram);
AElem signature(const InnerProductSpace& space);

}  // namespace opvg
