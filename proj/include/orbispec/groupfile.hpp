#pragma once

#include <string>

#include "orbispec/groups.hpp"

namespace orbispec {

// Loads a group description file (format documented in README.md: version
// header, presentation tag, optional signature, one generator matrix per
// line).  Validation at load time: determinant 1 per generator, defining
// relations of the presentation (involution squares), and the
// no-short-relator scan up to length 12.  Throws std::runtime_error with a
// line-numbered message on malformed input and on any validation failure.
PresentedGroup group_file_loader(const std::string& path);

// Same parser on an in-memory string; `origin` labels error messages and the
// group id.
PresentedGroup parse_group_file(const std::string& text, const std::string& origin);

// Serializes a group to the file format (exact integer entries when the
// group is exact, shortest round-trip decimals otherwise).  Reloading the
// result reproduces the same element sets.
std::string write_group_file(const PresentedGroup& g);

}  // namespace orbispec
