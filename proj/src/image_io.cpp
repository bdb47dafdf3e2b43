#include "pyrtex/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace pyrtex {

namespace {

std::string lower_ext(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return {};
    std::string ext = path.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

uint8_t quantize8(double v) {
    return static_cast<uint8_t>(std::llround(clamp01(v) * 255.0));
}

// ---------------------------------------------------------------------------
// PNM (binary PPM P6 / PGM P5)
// ---------------------------------------------------------------------------

int pnm_read_value(std::istream& in, const std::string& path) {
    int c = in.get();
    while (c == '#' || std::isspace(c)) {
        if (c == '#') {
            while (c != '\n' && c != EOF) c = in.get();
        }
        c = in.get();
    }
    if (!std::isdigit(c)) throw format_error("pnm: malformed header in " + path);
    long val = 0;
    while (std::isdigit(c)) {
        val = val * 10 + (c - '0');
        c = in.get();
    }
    // The final get() consumed the single whitespace that ends the token.
    return static_cast<int>(val);
}

ImageBuf load_pnm(std::istream& in, const std::string& path) {
    char magic[2];
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6')) {
        throw format_error("pnm: not a binary PGM/PPM: " + path);
    }
    const int channels = magic[1] == '6' ? 3 : 1;
    const int w = pnm_read_value(in, path);
    const int h = pnm_read_value(in, path);
    const int maxval = pnm_read_value(in, path);
    if (w < 1 || h < 1 || maxval < 1 || maxval > 65535) {
        throw format_error("pnm: bad dimensions or maxval in " + path);
    }
    const size_t samples = static_cast<size_t>(h) * w * channels;
    const int bytes_per = maxval > 255 ? 2 : 1;
    std::vector<uint8_t> raw(samples * bytes_per);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!in) throw format_error("pnm: truncated pixel data in " + path);

    ImageBuf img(h, w, channels);
    const double scale = 1.0 / maxval;
    if (bytes_per == 1) {
        for (size_t i = 0; i < samples; ++i) img.data[i] = raw[i] * scale;
    } else {
        for (size_t i = 0; i < samples; ++i) {
            img.data[i] = ((raw[2 * i] << 8) | raw[2 * i + 1]) * scale;  // big-endian
        }
    }
    return img;
}

void save_pnm(const ImageBuf& img, const std::string& path, bool color) {
    if (color && img.channels != 3) {
        throw format_error("ppm: P6 requires a 3-channel image: " + path);
    }
    if (!color && img.channels != 1) {
        throw format_error("pgm: P5 requires a 1-channel image: " + path);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << (color ? "P6" : "P5") << "\n" << img.width << " " << img.height << "\n255\n";
    std::vector<uint8_t> raw(img.data.size());
    for (size_t i = 0; i < img.data.size(); ++i) raw[i] = quantize8(img.data[i]);
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw io_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// PNG via libpng
// ---------------------------------------------------------------------------

// quiet handlers; decode failures surface as exceptions instead of stderr
void png_error_fn(png_structp png, png_const_charp) {
    png_longjmp(png, 1);
}
void png_warn_fn(png_structp, png_const_charp) {}

ImageBuf load_png(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw io_error("cannot open: " + path);

    png_structp png =
        png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warn_fn);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(f);
        throw io_error("png: allocation failure");
    }

    std::vector<uint8_t> bytes;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(f);
        throw format_error("png: failed to decode " + path);
    }

    png_init_io(png, f);
    png_read_info(png, info);

    const png_byte color_type = png_get_color_type(png, info);
    const png_byte bit_depth = png_get_bit_depth(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));
    const int channels = png_get_channels(png, info);
    const int depth = png_get_bit_depth(png, info);
    if ((channels != 1 && channels != 3) || (depth != 8 && depth != 16)) {
        longjmp(png_jmpbuf(png), 1);
    }

    const size_t rowbytes = png_get_rowbytes(png, info);
    bytes.resize(rowbytes * h);
    rows.resize(h);
    for (int y = 0; y < h; ++y) rows[y] = bytes.data() + rowbytes * y;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(f);

    ImageBuf img(h, w, channels);
    if (depth == 8) {
        for (int y = 0; y < h; ++y) {
            const uint8_t* src = bytes.data() + rowbytes * y;
            double* dst = img.row(y);
            for (int i = 0; i < w * channels; ++i) dst[i] = src[i] / 255.0;
        }
    } else {
        for (int y = 0; y < h; ++y) {
            const uint8_t* src = bytes.data() + rowbytes * y;
            double* dst = img.row(y);
            for (int i = 0; i < w * channels; ++i) {
                dst[i] = ((src[2 * i] << 8) | src[2 * i + 1]) / 65535.0;  // PNG is big-endian
            }
        }
    }
    return img;
}

void save_png(const ImageBuf& img, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw io_error("cannot open for writing: " + path);

    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warn_fn);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_write_struct(&png, &info);
        std::fclose(f);
        throw io_error("png: allocation failure");
    }

    std::vector<uint8_t> raw(img.data.size());
    std::vector<png_bytep> rows(img.height);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(f);
        throw io_error("png: failed to encode " + path);
    }

    png_init_io(png, f);
    png_set_IHDR(png, info, img.width, img.height, 8,
                 img.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);

    for (size_t i = 0; i < img.data.size(); ++i) raw[i] = quantize8(img.data[i]);
    const size_t rowbytes = static_cast<size_t>(img.width) * img.channels;
    for (int y = 0; y < img.height; ++y) rows[y] = raw.data() + rowbytes * y;

    png_set_rows(png, info, rows.data());
    png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
    png_destroy_write_struct(&png, &info);
    if (std::fclose(f) != 0) throw io_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// PFM
// ---------------------------------------------------------------------------

ImageBuf load_pfm(std::istream& in, const std::string& path) {
    char magic[2];
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || (magic[1] != 'F' && magic[1] != 'f')) {
        throw format_error("pfm: bad magic in " + path);
    }
    const int channels = magic[1] == 'F' ? 3 : 1;
    const int w = pnm_read_value(in, path);
    const int h = pnm_read_value(in, path);

    std::string token;
    in >> token;
    in.get();  // single whitespace terminating the scale token
    const double scale = std::strtod(token.c_str(), nullptr);
    if (scale == 0.0) throw format_error("pfm: bad scale in " + path);
    const bool little_endian = scale < 0.0;
    const double factor = std::abs(scale);

    const size_t row_samples = static_cast<size_t>(w) * channels;
    std::vector<uint8_t> raw(row_samples * 4);
    ImageBuf img(h, w, channels);
    for (int y = h - 1; y >= 0; --y) {  // PFM rows run bottom to top
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (!in) throw format_error("pfm: truncated pixel data in " + path);
        double* dst = img.row(y);
        for (size_t i = 0; i < row_samples; ++i) {
            uint8_t b[4];
            if (little_endian) {
                std::memcpy(b, raw.data() + 4 * i, 4);
            } else {
                b[0] = raw[4 * i + 3];
                b[1] = raw[4 * i + 2];
                b[2] = raw[4 * i + 1];
                b[3] = raw[4 * i + 0];
            }
            float v;
            std::memcpy(&v, b, 4);
            dst[i] = v * factor;
        }
    }
    return img;
}

// ---------------------------------------------------------------------------
// Radiance RGBE
// ---------------------------------------------------------------------------

void rgbe_to_rgb(const uint8_t px[4], double* out) {
    if (px[3] == 0) {
        out[0] = out[1] = out[2] = 0.0;
        return;
    }
    const double f = std::ldexp(1.0, static_cast<int>(px[3]) - 136);
    out[0] = px[0] * f;
    out[1] = px[1] * f;
    out[2] = px[2] * f;
}

void rgbe_read_flat_row(std::istream& in, const uint8_t first[4], std::vector<uint8_t>& scan,
                        int w, const std::string& path) {
    uint8_t px[4];
    std::memcpy(px, first, 4);
    int x = 0;
    int repeat_shift = 0;
    while (true) {
        if (px[0] == 1 && px[1] == 1 && px[2] == 1 && x > 0) {
            // Legacy run: repeat the previous pixel px[3] << shift times.
            if (repeat_shift > 16) throw format_error("rgbe: runaway repeat in " + path);
            const int count = px[3] << repeat_shift;
            if (count < 0 || x + count > w) {
                throw format_error("rgbe: run overflows scanline in " + path);
            }
            for (int i = 0; i < count; ++i, ++x) {
                std::memcpy(&scan[4 * x], &scan[4 * (x - 1)], 4);
            }
            repeat_shift += 8;
        } else {
            std::memcpy(&scan[4 * x], px, 4);
            ++x;
            repeat_shift = 0;
        }
        if (x >= w) break;
        in.read(reinterpret_cast<char*>(px), 4);
        if (!in) throw format_error("rgbe: truncated scanline in " + path);
    }
}

ImageBuf load_rgbe(std::istream& in, const std::string& path) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("#?", 0) != 0) {
        throw format_error("rgbe: missing #? header in " + path);
    }
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) break;
        if (line.rfind("FORMAT=", 0) == 0 && line.find("32-bit_rle_rgbe") == std::string::npos) {
            throw format_error("rgbe: unsupported FORMAT in " + path);
        }
    }
    if (!std::getline(in, line)) throw format_error("rgbe: missing resolution in " + path);
    int h = 0, w = 0;
    if (std::sscanf(line.c_str(), "-Y %d +X %d", &h, &w) != 2 || h < 1 || w < 1) {
        throw format_error("rgbe: unsupported resolution line in " + path);
    }

    ImageBuf img(h, w, 3);
    std::vector<uint8_t> scan(static_cast<size_t>(w) * 4);
    for (int y = 0; y < h; ++y) {
        uint8_t hdr[4];
        in.read(reinterpret_cast<char*>(hdr), 4);
        if (!in) throw format_error("rgbe: truncated file " + path);
        if (hdr[0] == 2 && hdr[1] == 2 && ((hdr[2] << 8) | hdr[3]) == w && w >= 8) {
            // New-style RLE: four component planes per scanline.
            for (int comp = 0; comp < 4; ++comp) {
                int x = 0;
                while (x < w) {
                    const int code = in.get();
                    if (code == EOF) throw format_error("rgbe: truncated RLE in " + path);
                    if (code > 128) {
                        const int count = code - 128;
                        const int value = in.get();
                        if (value == EOF || x + count > w) {
                            throw format_error("rgbe: bad RLE run in " + path);
                        }
                        for (int i = 0; i < count; ++i, ++x) {
                            scan[4 * x + comp] = static_cast<uint8_t>(value);
                        }
                    } else {
                        if (code == 0 || x + code > w) {
                            throw format_error("rgbe: bad RLE literal in " + path);
                        }
                        for (int i = 0; i < code; ++i, ++x) {
                            const int value = in.get();
                            if (value == EOF) throw format_error("rgbe: truncated RLE in " + path);
                            scan[4 * x + comp] = static_cast<uint8_t>(value);
                        }
                    }
                }
            }
        } else {
            rgbe_read_flat_row(in, hdr, scan, w, path);
        }
        double* dst = img.row(y);
        for (int x = 0; x < w; ++x) rgbe_to_rgb(&scan[4 * x], dst + 3 * x);
    }
    return img;
}

}  // namespace

ImageBuf load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path);
    const int b0 = in.get();
    const int b1 = in.get();
    in.seekg(0);
    if (b0 == 0x89 && b1 == 'P') {
        in.close();
        return load_png(path);
    }
    if (b0 == 'P' && (b1 == '5' || b1 == '6')) return load_pnm(in, path);
    throw format_error("unsupported image format: " + path);
}

void save_image(const ImageBuf& img, const std::string& path) {
    if (img.empty()) throw contract_error("save_image: empty image");
    const std::string ext = lower_ext(path);
    if (ext == "png") {
        save_png(img, path);
    } else if (ext == "ppm") {
        save_pnm(img, path, true);
    } else if (ext == "pgm") {
        save_pnm(img, path, false);
    } else {
        throw format_error("save_image: unsupported extension ." + ext);
    }
}

ImageBuf load_hdr(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path);
    const int b0 = in.get();
    const int b1 = in.get();
    in.seekg(0);
    if (b0 == '#' && b1 == '?') return load_rgbe(in, path);
    if (b0 == 'P' && (b1 == 'F' || b1 == 'f')) return load_pfm(in, path);
    throw format_error("unsupported HDR format: " + path);
}

void save_pfm(const ImageBuf& img, const std::string& path) {
    if (img.empty()) throw contract_error("save_pfm: empty image");
    if (img.channels != 1 && img.channels != 3) {
        throw contract_error("save_pfm: channels must be 1 or 3");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << (img.channels == 3 ? "PF" : "Pf") << "\n"
        << img.width << " " << img.height << "\n-1.0\n";
    const size_t row_samples = static_cast<size_t>(img.width) * img.channels;
    std::vector<uint8_t> raw(row_samples * 4);
    for (int y = img.height - 1; y >= 0; --y) {
        const double* src = img.row(y);
        for (size_t i = 0; i < row_samples; ++i) {
            const float v = static_cast<float>(src[i]);
            std::memcpy(raw.data() + 4 * i, &v, 4);
        }
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size()));
    }
    if (!out) throw io_error("write failed: " + path);
}

}  // namespace pyrtex
