// SPDX-License-Identifier: Apache-2.0
#include "expsig/format.hpp"

#include <charconv>
#include <system_error>

namespace expsig {

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

}  // namespace expsig
