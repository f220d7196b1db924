#pragma once

#include <initializer_list>
#include <span>
#include <string>

namespace ballroll {

/// Number format used by every text output: 17 significant digits, so
/// values round-trip bit-exactly.
std::string format_number(double value);

/// Comma-joined format_number values.
std::string join_numbers(std::span<const double> values);
std::string join_numbers(std::initializer_list<double> values);

}  // namespace ballroll
