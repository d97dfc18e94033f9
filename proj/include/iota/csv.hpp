#pragma once

#include <string>
#include <vector>

namespace iota::csv {

// Splits one CSV line. Supports double-quoted fields with "" escapes; no
// embedded newlines.
std::vector<std::string> split_line(const std::string& line);

// Quotes a field only when needed.
std::string escape(const std::string& field);

std::string join(const std::vector<std::string>& fields);

}  // namespace iota::csv
