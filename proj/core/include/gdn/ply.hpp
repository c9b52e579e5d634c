// SPDX-License-Identifier: Apache-2.0

#ifndef GDN_PLY_HPP
#define GDN_PLY_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gdn/point_cloud.hpp"

namespace gdn {

enum class PlyFormat { Ascii, BinaryLittleEndian };

/// Reads a PLY vertex element with x/y/z and 8-bit red/green/blue.
///
/// Integer positions produce a quantized cloud whose bit depth is the declared
/// one, or else the smallest grid holding every coordinate. Floating point positions are kept as-is and
/// the cloud is left unquantized. Vertex properties other than position and
/// color are skipped; a note for each is appended to `warnings` when given.
/// Throws ParseError on malformed or unsupported input.
PointCloud load_ply(std::istream& in, std::vector<std::string>* warnings = nullptr);
PointCloud load_ply(const std::filesystem::path& path,
                    std::vector<std::string>* warnings = nullptr);

/// Writes the cloud; colors are rounded half-up to 8 bits. Quantized clouds
/// record their bit depth in a `comment bit_depth <b>` header line, which
/// load_ply honors when it holds every coordinate.
void save_ply(std::ostream& out, const PointCloud& pc, PlyFormat format);
void save_ply(const std::filesystem::path& path, const PointCloud& pc, PlyFormat format);

}  // namespace gdn

#endif  // GDN_PLY_HPP
