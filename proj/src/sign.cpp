#include "sosign/sign.hpp"

namespace sosign {

std::string_view to_string(SignResult r) {
  switch (r) {
    case SignResult::negative: return "negative";
    case SignResult::zero: return "zero";
    case SignResult::positive: return "positive";
    case SignResult::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view to_string(Method m) {
  return m == Method::quick ? "quick" : "robust";
}

std::string_view to_string(RobustExit e) {
  switch (e) {
    case RobustExit::heaps_empty: return "heaps-empty";
    case RobustExit::one_heap_empty: return "one-heap-empty";
    case RobustExit::exponent_gap: return "exponent-gap";
    case RobustExit::size_guard: return "size-guard";
  }
  return "?";
}

}  // namespace sosign
