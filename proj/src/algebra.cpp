#include "opvg/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace opvg {

namespace {

void check_same_fibers(const AElem& a, const AElem& b) {
  if (a.fibers() != b.fibers()) {
    fail(Errc::fiber_count_mismatch, "fiber count mismatch: " + std::to_string(a.fibers()) +
                                         " vs " + std::to_string(b.fibers()));
  }
}

}  // namespace

void AlgebraSpec::validate() const {
  if (fibers < 1) fail(Errc::schema_error, "algebra needs at least one fiber");
  if (!labels.empty()) {
    if (labels.size() != fibers) {
      fail(Errc::schema_error, "label count does not match fiber count");
    }
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) fail(Errc::schema_error, "duplicate fiber labels");
  }
}

double AElem::norm() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool AElem::is_self_adjoint(double eps) const {
  const double scale = std::max(1.0, norm());
  for (const auto& v : values_) {
    if (std::abs(v.imag()) > eps * scale) return false;
  }
  return true;
}

bool AElem::is_zero(double eps) const {
  for (const auto& v : values_) {
    if (std::abs(v) > eps) return false;
  }
  return true;
}

AElem& AElem::operator+=(const AElem& rhs) {
  check_same_fibers(*this, rhs);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += rhs[i];
  return *this;
}

AElem& AElem::operator-=(const AElem& rhs) {
  check_same_fibers(*this, rhs);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= rhs[i];
  return *this;
}

AElem& AElem::operator*=(const AElem& rhs) {
  check_same_fibers(*this, rhs);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= rhs[i];
  return *this;
}

AElem& AElem::operator/=(const AElem& rhs) {
  check_same_fibers(*this, rhs);
  if (!is_invertible(rhs)) {
    fail(Errc::not_invertible,
         "division by non-invertible element (fiber " +
             std::to_string(least_invertible_fiber(rhs)) + ")");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] /= rhs[i];
  return *this;
}

AElem operator+(AElem a, const AElem& b) { return a += b; }
AElem operator-(AElem a, const AElem& b) { return a -= b; }
AElem operator*(AElem a, const AElem& b) { return a *= b; }
AElem operator/(AElem a, const AElem& b) { return a /= b; }

AElem operator-(AElem a) {
  for (std::size_t i = 0; i < a.fibers(); ++i) a[i] = -a[i];
  return a;
}

AElem operator*(double s, AElem a) {
  for (std::size_t i = 0; i < a.fibers(); ++i) a[i] *= s;
  return a;
}

AElem operator*(const Complex& s, AElem a) {
  for (std::size_t i = 0; i < a.fibers(); ++i) a[i] *= s;
  return a;
}

AElem involution(const AElem& a) {
  std::vector<Complex> v(a.fibers());
  for (std::size_t i = 0; i < a.fibers(); ++i) v[i] = std::conj(a[i]);
  return AElem(std::move(v));
}

std::vector<Complex> spectrum(const AElem& a) {
  std::vector<Complex> out;
  for (std::size_t i = 0; i < a.fibers(); ++i) {
    bool seen = false;
    for (const auto& w : out) {
      if (w == a[i]) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(a[i]);
  }
  return out;
}

AElem sqrt_pos(const AElem& a) {
  const double scale = std::max(1.0, a.norm());
  std::vector<Complex> v(a.fibers());
  for (std::size_t i = 0; i < a.fibers(); ++i) {
    const Complex z = a[i];
    if (std::abs(z.imag()) > tol::self_adjoint * scale || z.real() < -tol::positivity * scale) {
      fail(Errc::not_positive, "element not positive at fiber " + std::to_string(i));
    }
    v[i] = std::sqrt(std::max(z.real(), 0.0));
  }
  return AElem(std::move(v));
}

AbsParts abs_parts(const AElem& a) {
  if (!a.is_self_adjoint()) {
    fail(Errc::not_self_adjoint, "abs decomposition needs a self-adjoint element");
  }
  AbsParts out;
  out.abs = sqrt_pos(a * a);
  out.pos = 0.5 * (out.abs + a);
  out.neg = 0.5 * (out.abs - a);
  return out;
}

bool is_invertible(const AElem& a) {
  if (a.fibers() == 0) return false;
  const double threshold = tol::invertible * std::max(1.0, a.norm());
  for (std::size_t i = 0; i < a.fibers(); ++i) {
    if (std::abs(a[i]) <= threshold) return false;
  }
  return true;
}

std::size_t least_invertible_fiber(const AElem& a) {
  std::size_t worst = 0;
  double best = std::abs(a[0]);
  for (std::size_t i = 1; i < a.fibers(); ++i) {
    if (std::abs(a[i]) < best) {
      best = std::abs(a[i]);
      worst = i;
    }
  }
  return worst;
}

AElem fiber_modulus(const AElem& a) {
  std::vector<Complex> v(a.fibers());
  for (std::size_t i = 0; i < a.fibers(); ++i) v[i] = std::abs(a[i]);
  return AElem(std::move(v));
}

}  // namespace opvg
