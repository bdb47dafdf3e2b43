#pragma once

#include <string>

#include "pyrtex/image.hpp"

namespace pyrtex {

/// Reads PNG (8/16-bit), binary PPM (P6) or binary PGM (P5). 8-bit samples map
/// to v/255, 16-bit to v/65535 (other PNM maxvals to v/maxval). Alpha channels
/// are dropped; palette PNG expands to RGB.
ImageBuf load_image(const std::string& path);

/// Writes 8-bit PNG, PPM (P6, 3-channel) or PGM (P5, 1-channel) depending on
/// the extension. Samples are clamped to [0,1] and quantized with
/// round-half-away-from-zero to v*255.
void save_image(const ImageBuf& img, const std::string& path);

/// Reads a float HDR radiance map: Radiance RGBE (.hdr, flat or RLE scanlines)
/// or PFM (PF/Pf, either endianness).
ImageBuf load_hdr(const std::string& path);

/// Writes a little-endian, bottom-up PFM (PF for 3 channels, Pf for 1).
void save_pfm(const ImageBuf& img, const std::string& path);

}  // namespace pyrtex
