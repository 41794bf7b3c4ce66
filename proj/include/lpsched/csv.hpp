#pragma once

#include <string>
#include <vector>

namespace lpsched {

// Strict: the whole cell must parse. Accepts "inf" and "-inf".
double parse_double(const std::string& cell);

// Plain comma split; cells never contain commas or quotes.
std::vector<std::string> split_csv_line(const std::string& line);

// Shortest representation that round-trips to the same double.
std::string format_number(double v);

}  // namespace lpsched
