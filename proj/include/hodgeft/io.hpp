#pragma once

#include <string>

#include "hodgeft/algebra.hpp"
#include "hodgeft/givental.hpp"

namespace hodgeft {

/// Loads an algebra definition from a JSON file and finalizes it.
/// Missing mirror entries of the multiplication table are filled in by
/// graded symmetry, and unit products default to e_1*e_j = e_j.
/// Throws InputError with a descriptive message on malformed input.
HodgeAlgebra load_algebra(const std::string& path);
HodgeAlgebra parse_algebra(const std::string& json_text, const std::string& origin);

std::string slurp_file(const std::string& path);

/// R-matrix file: {"terms": [{"l": 1, "matrix": [[...]]}, ...]}.
RMatrixSeries load_rmatrix(const std::string& path, int dim);
RMatrixSeries parse_rmatrix(const std::string& json_text, const std::string& origin, int dim);

/// FNV-1a 64-bit content hash, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

} // namespace hodgeft
