#pragma once

#include <stdexcept>
#include <string>

namespace sumsetlab {

/// Error codes for every rejectable condition in the library.
enum class errc {
  empty_factor_list,
  factor_below_two,
  broken_divisibility_chain,
  order_below_two,
  index_out_of_range,
  coord_out_of_range,
  group_mismatch,
  empty_set_positive_fold,
  set_too_small,
  fold_exceeds_size,
  fold_out_of_range,
  size_out_of_range,
  not_elementary_abelian_2_group,
  not_representable,
  no_exact_prediction,
  bad_group_literal,
  invalid_options,
  internal_check_failed,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::empty_factor_list: return "EmptyFactorList";
    case errc::factor_below_two: return "FactorBelowTwo";
    case errc::broken_divisibility_chain: return "BrokenDivisibilityChain";
    case errc::order_below_two: return "OrderBelowTwo";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::coord_out_of_range: return "CoordOutOfRange";
    case errc::group_mismatch: return "GroupMismatch";
    case errc::empty_set_positive_fold: return "EmptySetPositiveFold";
    case errc::set_too_small: return "SetTooSmall";
    case errc::fold_exceeds_size: return "FoldExceedsSize";
    case errc::fold_out_of_range: return "FoldOutOfRange";
    case errc::size_out_of_range: return "SizeOutOfRange";
    case errc::not_elementary_abelian_2_group: return "NotElementaryAbelian2Group";
    case errc::not_representable: return "NotRepresentable";
    case errc::no_exact_prediction: return "NoExactPrediction";
    case errc::bad_group_literal: return "BadGroupLiteral";
    case errc::invalid_options: return "InvalidOptions";
    case errc::internal_check_failed: return "InternalCheckFailed";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

/// Internal invariant check; failures indicate a bug, not bad input.
inline void internal_check(bool ok, const char* what) {
  if (!ok) fail(errc::internal_check_failed, what);
}

}  // namespace sumsetlab
