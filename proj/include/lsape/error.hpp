#ifndef LSAPE_ERROR_HPP_
#define LSAPE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace lsape {

enum class ErrorCode {
  kInvalidInput,
  kParse,
  kShapeMismatch,
  kNotBinary,
  kNotEpsBistochastic,
  kNonFinite,
  kNegativeCompletion,
  kConstantTooSmall,
  kCornerNonzero,
  kNegativeCost,
  kOverflow,
  kTooLarge,
  kDivisionByZero,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lsape

#endif  // LSAPE_ERROR_HPP_
