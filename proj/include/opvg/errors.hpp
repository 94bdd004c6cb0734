#pragma once

#include <stdexcept>
#include <string>

namespace opvg {

// Every failure mode of the library maps to one code; messages carry the
// offending fiber/offset/path so callers can report precisely.
enum class Errc {
  fiber_count_mismatch,
  not_invertible,
  not_positive,
  not_self_adjoint,
  not_square,
  dim_too_large,
  singular_matrix,
  dim_mismatch,
  syntax_error,
  unknown_name,
  arity_error,
  domain_error,
  unknown_constant,
  degree_zero,
  wrong_degree,
  point_degenerate,
  out_of_domain,
  degenerate_plane,
  signature_inconsistent,
  support_violation,
  schema_error,
  metric_invalid,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace opvg
