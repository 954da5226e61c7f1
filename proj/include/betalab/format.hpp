#pragma once

#include <string>

namespace betalab {

/// Shortest-stable text for a double: 17 significant digits, "-0" folded to "0".
std::string fmt17(double x);
/// Fixed short rendering for SVG coordinates.
std::string fmt_coord(double x);

/// Writes via a temporary sibling file and rename, so readers never observe a
/// partial file. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace betalab
