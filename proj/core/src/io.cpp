#include <ballroll/io.hpp>

#include <fmt/format.h>

namespace ballroll {

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

std::string join_numbers(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

std::string join_numbers(std::initializer_list<double> values) {
  return join_numbers(std::span<const double>(values.begin(), values.size()));
}

}  // namespace ballroll
