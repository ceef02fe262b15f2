#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace narcert {

enum class ErrorKind {
  kInvalidArgument,
  kParse,
  kNonAdmissible,
  kNonIntegralGenus,
  kTableCorrupt,
  kOrderCapExceeded,
  kLongRelationFails,
  kOrderNotPreserved,
  kNotSurjective,
  kSearchSpaceTooLarge,
  kNotSurfaceKernel,
  kNotInvariant,
  kWitnessSearchFailed,
  kVerificationFailed,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `detail()` carries the offending
/// position when one exists (1-based generator index for
/// OrderNotPreserved, 1-based line number for TableCorrupt, genus for
/// WitnessSearchFailed), otherwise -1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::int64_t detail = -1);

  ErrorKind kind() const noexcept { return kind_; }
  std::int64_t detail() const noexcept { return detail_; }

  /// True for failures caused by a configurable resource limit.
  bool is_resource_limit() const noexcept {
    return kind_ == ErrorKind::kOrderCapExceeded ||
           kind_ == ErrorKind::kSearchSpaceTooLarge;
  }

 private:
  ErrorKind kind_;
  std::int64_t detail_;
};

}  // namespace narcert
