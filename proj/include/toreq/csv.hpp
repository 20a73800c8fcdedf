#pragma once

#include <string>
#include <vector>

namespace toreq {

/// RFC 4180 field quoting: fields containing a comma, quote, CR or LF are
/// wrapped in double quotes with embedded quotes doubled.
std::string csv_escape(const std::string& field);
std::string csv_row(const std::vector<std::string>& fields);

/// Shortest round-trip rendering ("%.17g"); "nan", "inf", "-inf" otherwise.
std::string format_double(double x);

}  // namespace toreq
