#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "opvg/errors.hpp"

namespace opvg {

using Complex = std::complex<double>;

// Tolerances used across the library (double-precision headroom at desk scale).
namespace tol {
inline constexpr double invertible = 1e-10;     // relative invertibility cutoff
inline constexpr double self_adjoint = 1e-10;   // |imag| bound for "real" fibers
inline constexpr double positivity = 1e-12;     // negative dust clamped to zero
inline constexpr double fcalc = 1e-12;          // functional-calculus identities
inline constexpr double linear = 1e-10;         // matrix inverse / reciprocal basis
}  // namespace tol

// The scalar algebra: C(X) with X a finite set of `fibers` points.
struct AlgebraSpec {
  std::size_t fibers = 1;
  std::vector<std::string> labels;  // optional; when present: fibers entries, no duplicates

  void validate() const;
};

// One element of C(X): a tuple of complex values, one per fiber. Immutable in
// practice (all operations return fresh values); sup norm.
class AElem {
 public:
  AElem() = default;
  explicit AElem(std::vector<Complex> values) : values_(std::move(values)) {}

  static AElem constant(std::size_t fibers, Complex value) {
    return AElem(std::vector<Complex>(fibers, value));
  }
  static AElem zero(std::size_t fibers) { return constant(fibers, 0.0); }
  static AElem unit(std::size_t fibers) { return constant(fibers, 1.0); }

  std::size_t fibers() const { return values_.size(); }
  Complex& operator[](std::size_t i) { return values_[i]; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<Complex>& values() const { return values_; }

  // sup norm: max fiber modulus
  double norm() const;
  bool is_self_adjoint(double eps = tol::self_adjoint) const;
  bool is_zero(double eps = 0.0) const;

  AElem& operator+=(const AElem& rhs);
  AElem& operator-=(const AElem& rhs);
  AElem& operator*=(const AElem& rhs);
  AElem& operator/=(const AElem& rhs);

 private:
  std::vector<Complex> values_;
};

AElem operator+(AElem a, const AElem& b);
AElem operator-(AElem a, const AElem& b);
AElem operator*(AElem a, const AElem& b);
AElem operator/(AElem a, const AElem& b);
AElem operator-(AElem a);
AElem operator*(double s, AElem a);
AElem operator*(const Complex& s, AElem a);

// A*: componentwise complex conjugate.
AElem involution(const AElem& a);

// Distinct fiber values (the spectrum is exact for finite X).
std::vector<Complex> spectrum(const AElem& a);

// Unique positive square root of a positive element; negative dust within
// tol::positivity is clamped to zero.
AElem sqrt_pos(const AElem& a);

struct AbsParts {
  AElem abs, pos, neg;  // |A| = sqrt(A^2), A± = (|A| ± A)/2
};
AbsParts abs_parts(const AElem& a);

// min fiber modulus > tol::invertible * max(1, norm)
bool is_invertible(const AElem& a);

// Index of the fiber with smallest modulus (worst invertibility offender).
std::size_t least_invertible_fiber(const AElem& a);

// Fiberwise modulus |a_i| as a (real-valued) element; handy for residuals.
AElem fiber_modulus(const AElem& a);

}  // namespace opvg
