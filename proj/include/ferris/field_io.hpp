#pragma once

#include <filesystem>
#include <string>

#include "ferris/grid.hpp"

namespace ferris {

// CSV field files. '#'-prefixed header lines carry key=value metadata that
// fully determines the payload; then nx*ny rows, y-major:
//   x,y,re,im   (complex)   or   x,y,value   (real)
// Values are printed with 17 significant digits so doubles round-trip
// bit-exactly. All writers go through a temp file + atomic rename.
void write_field(const ComplexField2D& field, const std::filesystem::path& path,
                 const std::string& params_echo = "");
void write_field(const RealField2D& field, const std::filesystem::path& path,
                 const std::string& params_echo = "");

ComplexField2D read_complex_field(const std::filesystem::path& path);
RealField2D read_real_field(const std::filesystem::path& path);

// 16-bit grayscale PGM (P5, big-endian samples). Values are min-max normalised
// then raised to `gamma`; a degenerate range renders mid-gray with a warning.
// Row 0 of the image is the top (largest y).
void write_pgm16(const RealField2D& field, const std::filesystem::path& path, double gamma = 1.0);

// 8-bit RGB PNG through zlib with a fixed built-in colormap ("gray" or
// "inferno"). Same normalisation as the PGM writer; deterministic bytes.
void write_png8(const RealField2D& field, const std::filesystem::path& path,
                const std::string& colormap = "inferno", double gamma = 1.0);

}  // namespace ferris
