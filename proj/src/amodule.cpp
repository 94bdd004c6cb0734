#include "opvg/amodule.hpp"

#include <string>

namespace opvg {

namespace {

constexpr std::size_t kMaxDet = 6;

AMatrix minor_of(const AMatrix& m, std::size_t row, std::size_t col) {
  AMatrix out(m.rows() - 1, m.cols() - 1, m.fibers());
  for (std::size_t i = 0, oi = 0; i < m.rows(); ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, oj = 0; j < m.cols(); ++j) {
      if (j == col) continue;
      out.at(oi, oj) = m.at(i, j);
      ++oj;
    }
    ++oi;
  }
  return out;
}

}  // namespace

AMatrix::AMatrix(std::size_t rows, std::size_t cols, std::size_t fibers)
    : rows_(rows), cols_(cols), fibers_(fibers),
      entries_(rows * cols, AElem::zero(fibers)) {}

AMatrix::AMatrix(std::size_t rows, std::size_t cols, std::vector<AElem> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    fail(Errc::dim_mismatch, "entry count does not match matrix shape");
  }
  fibers_ = entries_.empty() ? 1 : entries_[0].fibers();
  for (const auto& e : entries_) {
    if (e.fibers() != fibers_) fail(Errc::fiber_count_mismatch, "mixed fiber counts in matrix");
  }
}

AMatrix AMatrix::identity(std::size_t n, std::size_t fibers) {
  AMatrix out(n, n, fibers);
  for (std::size_t i = 0; i < n; ++i) out.at(i, i) = AElem::unit(fibers);
  return out;
}

AMatrix AMatrix::transpose() const {
  AMatrix out(cols_, rows_, fibers_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

AMatrix AMatrix::conj() const {
  AMatrix out(rows_, cols_, fibers_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = involution(at(i, j));
  return out;
}

bool AMatrix::is_hermitian(double eps) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (!(at(i, j) - involution(at(j, i))).is_zero(eps)) return false;
    }
  }
  return true;
}

std::vector<AElem> AMatrix::apply(const std::vector<AElem>& x) const {
  if (x.size() != cols_) fail(Errc::dim_mismatch, "vector length does not match matrix");
  std::vector<AElem> out(rows_, AElem::zero(fibers_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * x[j];
  return out;
}

AMatrix operator*(const AMatrix& a, const AMatrix& b) {
  if (a.cols() != b.rows()) fail(Errc::dim_mismatch, "matrix product shape mismatch");
  AMatrix out(a.rows(), b.cols(), a.fibers());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
  return out;
}

AMatrix operator+(const AMatrix& a, const AMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(Errc::dim_mismatch, "matrix sum shape");
  AMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) += b.at(i, j);
  return out;
}

AMatrix operator-(const AMatrix& a, const AMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(Errc::dim_mismatch, "matrix diff shape");
  AMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) -= b.at(i, j);
  return out;
}

AMatrix scale(const AElem& s, const AMatrix& m) {
  AMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = s * out.at(i, j);
  return out;
}

AElem det(const AMatrix& m) {
  if (m.rows() != m.cols()) fail(Errc::not_square, "determinant of a non-square matrix");
  if (m.rows() > kMaxDet) {
    fail(Errc::dim_too_large, "determinant capped at dimension " + std::to_string(kMaxDet));
  }
  const std::size_t n = m.rows();
  if (n == 0) return AElem::unit(m.fibers());
  if (n == 1) return m.at(0, 0);
  AElem out = AElem::zero(m.fibers());
  for (std::size_t j = 0; j < n; ++j) {
    AElem term = m.at(0, j) * det(minor_of(m, 0, j));
    out += (j % 2 == 0) ? term : -term;
  }
  return out;
}

AMatrix inverse(const AMatrix& m) {
  if (m.rows() != m.cols()) fail(Errc::not_square, "inverse of a non-square matrix");
  const AElem d = det(m);
  if (!is_invertible(d)) {
    fail(Errc::singular_matrix, "singular matrix: determinant vanishes at fiber " +
                                    std::to_string(least_invertible_fiber(d)));
  }
  const std::size_t n = m.rows();
  AMatrix out(n, n, m.fibers());
  if (n == 1) {
    out.at(0, 0) = AElem::unit(m.fibers()) / d;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      AElem c = det(minor_of(m, j, i));  // adjugate: cofactor of (j, i)
      if ((i + j) % 2 == 1) c = -c;
      out.at(i, j) = c / d;
    }
  }
  return out;
}

InnerProductSpace::InnerProductSpace(AMatrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) fail(Errc::not_square, "Gram matrix must be square");
  if (!gram_.is_hermitian()) {
    fail(Errc::not_self_adjoint, "Gram matrix must be Hermitian");
  }
  for (std::size_t i = 0; i < gram_.rows(); ++i) {
    for (std::size_t j = 0; j < gram_.cols(); ++j) {
      if (!gram_.at(i, j).is_self_adjoint()) {
        fail(Errc::not_self_adjoint, "Gram entries must be self-adjoint");
      }
    }
  }
  const AElem d = det(gram_);
  if (!is_invertible(d)) {
    fail(Errc::singular_matrix, "degenerate inner product: det vanishes at fiber " +
                                    std::to_string(least_invertible_fiber(d)));
  }
}

AElem ip_eval_gram(const AMatrix& gram, const std::vector<AElem>& x, const std::vector<AElem>& y) {
  if (x.size() != gram.rows() || y.size() != gram.cols()) {
    fail(Errc::dim_mismatch, "coefficient vector length does not match Gram matrix");
  }
  AElem out = AElem::zero(gram.fibers());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out += x[i] * involution(y[j]) * gram.at(i, j);
  return out;
}

AElem ip_eval(const InnerProductSpace& space, const std::vector<AElem>& x,
              const std::vector<AElem>& y) {
  return ip_eval_gram(space.gram(), x, y);
}

AMatrix reciprocal_basis(const InnerProductSpace& space) { return inverse(space.gram()); }

AElem signature_of_gram(const AMatrix& gram) {
  const AElem g = det(gram);
  if (!g.is_self_adjoint()) fail(Errc::not_self_adjoint, "Gram determinant not self-adjoint");
  if (!is_invertible(g)) {
    fail(Errc::singular_matrix, "signature of a degenerate Gram matrix (fiber " +
                                    std::to_string(least_invertible_fiber(g)) + ")");
  }
  return abs_parts(g).abs / g;
}

AElem signature(const InnerProductSpace& space) { return signature_of_gram(space.gram()); }

}  // namespace opvg
