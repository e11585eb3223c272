// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace expsig {

/// Shortest decimal string that round-trips the double exactly (at most 17
/// significant digits). The float-to-text path for CSV and diagnostics, so
/// identical values always serialize to identical bytes.
std::string format_double(double x);

}  // namespace expsig
