#pragma once

// `nOFF` text interchange:
//
//   nOFF
//   <n>
//   <num_vertices> <num_facets>
//   <n reals per vertex line>
//   <n 0-based vertex indices per facet line, orientation significant>
//
// `#` starts a comment that runs to the end of the line.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "igeo/mesh.hpp"

namespace igeo {

/// Throws Error(kParse) on malformed input.
SimplicialMesh read_noff(std::istream& in);
/// Throws Error(kIo) when the file cannot be opened.
SimplicialMesh read_noff_file(const std::filesystem::path& path);

/// Writes with 17 significant digits so vertices round-trip exactly.
void write_noff(std::ostream& out, const SimplicialMesh& mesh);
void write_noff_file(const std::filesystem::path& path, const SimplicialMesh& mesh);

}  // namespace igeo
