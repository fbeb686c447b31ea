#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mixem/censored.hpp"

namespace mixem::cli {

/// Censored observations: header `left,right`, one interval per line, `inf`
/// for right censoring. Blank lines and lines starting with '#' are skipped.
/// Errors carry 1-based line numbers.
CensoredSample read_censored_csv(std::istream& in);

/// Dense n x m density table without a header.
std::vector<std::vector<double>> read_dense_csv(std::istream& in);

/// One value per line (first field of each line).
std::vector<double> read_values(std::istream& in);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double x);

}  // namespace mixem::cli
