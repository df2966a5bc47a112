#include "coherelab/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace coherelab {

std::string format_number(double x) {
  if (x == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

double round_to_12_digits(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  const std::string s = format_number(x);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

}  // namespace coherelab
