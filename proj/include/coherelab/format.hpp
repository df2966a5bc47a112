#pragma once

#include <string>

namespace coherelab {

// 12 significant digits, shortest form, '.' decimal point regardless of locale.
std::string format_number(double x);

// x rounded to 12 significant digits (so JSON writers emit at most 12).
double round_to_12_digits(double x);

}  // namespace coherelab
