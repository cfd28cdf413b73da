#ifndef MCFORM_ERROR_HPP
#define MCFORM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mcform {

// Failure kinds, split between "the input is malformed" and "the math says
// no".  The C API and CLI exit codes are derived from this split.
enum class Errc {
  // input / usage errors
  syntax_error,
  unknown_variable,
  degree_overflow,
  field_mismatch,
  validation_error,
  context_mismatch,
  order_violation,
  zero_epsilon,
  bad_params,
  incomplete_rules,
  invalid_argument,
  io_error,
  // mathematical failure states
  not_coboundary,
  cubic_degenerate,
  tail_unsolvable,
  truncation_too_small,
  not_stabilized,
  not_associative,
  differential_not_square_zero,
  fixed_locus_positive_dimensional,
};

bool errc_is_math(Errc c);
const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace mcform

#endif
