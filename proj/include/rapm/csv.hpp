#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rapm::csv {

// Strips leading/trailing spaces and tabs plus a trailing CR.
std::string trim(std::string_view s);

// Splits one CSV line. Double-quoted fields may contain commas and doubled
// quotes. Fields are trimmed.
std::vector<std::string> split_line(const std::string& line);

// Locale-independent strict numeric parse; throws ParseError on garbage.
double parse_number(const std::string& field, const std::string& where);

// Shortest representation that parses back to the same double. Integral
// values print without a decimal part.
std::string format_number(double v);

// Quotes a field when it needs quoting (comma, quote, leading/trailing
// space); otherwise returns it unchanged.
std::string escape_field(const std::string& s);

}  // namespace rapm::csv
