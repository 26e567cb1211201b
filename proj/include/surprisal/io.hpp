#pragma once

#include <string>

#include "surprisal/measures.hpp"

namespace surprisal {

// Shortest representation preserving 17 significant digits.
std::string g17(double v);

// Reads a dichotomy document: JSON object with field "p" (list of numbers)
// and optional field "s" (uniform reference when omitted).  Errors carry the
// path and offending field.
Dichotomy read_dichotomy_file(const std::string& path);

// Reads just the "p" field of the same document format.
Spectrum read_spectrum_file(const std::string& path);

// One Renyi value per line, k ascending from 2; blank lines and # comments skipped.
std::vector<double> read_renyi_file(const std::string& path);

}  // namespace surprisal
