#pragma once

#include <cstdint>
#include <string_view>

namespace wallis {

enum class Method { partial, tail_corrected, closed_form, quadrature, continued_fraction };

constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::partial:
      return "partial";
    case Method::tail_corrected:
      return "tail_corrected";
    case Method::closed_form:
      return "closed_form";
    case Method::quadrature:
      return "quadrature";
    case Method::continued_fraction:
      return "continued_fraction";
  }
  return "unknown";
}

/// A numeric value together with an upper bound on its absolute error.
struct Evaluation {
  double value = 0.0;
  double error_bound = 0.0;
  std::uint64_t terms_used = 0;
  Method method = Method::closed_form;
};

}  // namespace wallis
