#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "excitable/lattice.hpp"

namespace excitable {

/// Which pixel class of the raster maps to excitable (street) nodes.
/// PBM bit 1 is dark; PGM samples at or below the gray threshold are dark.
enum class RasterPolarity { DarkIsStreet, LightIsStreet };

/// Reads a P1/P4 bitmap or a P2/P5 graymap (maxval up to 255) into a mask,
/// one node per pixel. Throws ParseError on malformed input and EmptyMask
/// when no node ends up excitable.
DomainMask read_mask(const std::filesystem::path& path, RasterPolarity polarity,
                     int gray_threshold = 127);

/// Writes the mask as a binary PBM (P4), street = 1 (dark). The header is
/// canonical, so saving a loaded P4 file reproduces it byte for byte.
void write_mask_p4(const std::filesystem::path& path, const DomainMask& mask);

struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major
};

void write_pgm_p5(const std::filesystem::path& path, const GrayImage& image);
GrayImage read_pgm_p5(const std::filesystem::path& path);

}  // namespace excitable
