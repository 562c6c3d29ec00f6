#include "excitable/netpbm.hpp"

#include <fstream>
#include <string>

#include "excitable/errors.hpp"

namespace excitable {

namespace {

// Header tokens are separated by whitespace; '#' starts a comment running to
// the end of the line.
int next_header_int(std::istream& in, const std::string& file, const char* what) {
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
            continue;
        }
        if (!std::isspace(c)) break;
    }
    if (c == EOF || !std::isdigit(c)) {
        throw ParseError(file + ": expected " + std::string(what) + " in header");
    }
    long value = c - '0';
    while ((c = in.peek()) != EOF && std::isdigit(c)) {
        value = value * 10 + (in.get() - '0');
        if (value > 1000000) throw ParseError(file + ": unreasonable " + what);
    }
    return static_cast<int>(value);
}

DomainMask dark_to_mask(int width, int height, const std::vector<std::uint8_t>& dark,
                        RasterPolarity polarity, const std::string& file) {
    DomainMask mask(width, height);
    const bool street_is_dark = polarity == RasterPolarity::DarkIsStreet;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const bool is_dark = dark[static_cast<std::size_t>(y) * width + x] != 0;
            if (is_dark == street_is_dark) mask.set_excitable(x, y, true);
        }
    }
    if (mask.excitable_count() == 0) {
        throw EmptyMask(file + ": no excitable nodes after thresholding");
    }
    return mask;
}

}  // namespace

DomainMask read_mask(const std::filesystem::path& path, RasterPolarity polarity,
                     int gray_threshold) {
    const std::string file = path.string();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(file + ": cannot open");

    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P') throw ParseError(file + ": not a netpbm file");
    const char format = magic[1];
    if (format != '1' && format != '2' && format != '4' && format != '5') {
        throw ParseError(file + ": unsupported format P" + std::string(1, format));
    }

    const int width = next_header_int(in, file, "width");
    const int height = next_header_int(in, file, "height");
    if (width < 1 || height < 1) throw ParseError(file + ": bad dimensions");
    const std::size_t pixels = static_cast<std::size_t>(width) * height;
    std::vector<std::uint8_t> dark(pixels, 0);

    if (format == '1') {
        // ASCII bits, whitespace optional
        std::size_t i = 0;
        int c;
        while (i < pixels && (c = in.get()) != EOF) {
            if (c == '#') {
                while (c != EOF && c != '\n') c = in.get();
                continue;
            }
            if (c == '0' || c == '1') dark[i++] = (c == '1') ? 1 : 0;
            else if (!std::isspace(c)) throw ParseError(file + ": bad P1 payload");
        }
        if (i < pixels) throw ParseError(file + ": truncated P1 payload");
    } else if (format == '4') {
        // single whitespace after the header, then packed rows, MSB first
        const int sep = in.get();
        if (sep == EOF || !std::isspace(sep)) throw ParseError(file + ": bad P4 header");
        const std::size_t row_bytes = (static_cast<std::size_t>(width) + 7) / 8;
        std::vector<char> row(row_bytes);
        for (int y = 0; y < height; ++y) {
            in.read(row.data(), static_cast<std::streamsize>(row_bytes));
            if (!in) throw ParseError(file + ": truncated P4 payload");
            for (int x = 0; x < width; ++x) {
                const std::uint8_t byte = static_cast<std::uint8_t>(row[x / 8]);
                dark[static_cast<std::size_t>(y) * width + x] =
                    (byte >> (7 - x % 8)) & 1;
            }
        }
    } else {
        const int maxval = next_header_int(in, file, "maxval");
        if (maxval < 1 || maxval > 255) {
            throw ParseError(file + ": unsupported maxval " + std::to_string(maxval));
        }
        if (format == '2') {
            for (std::size_t i = 0; i < pixels; ++i) {
                const int value = next_header_int(in, file, "P2 sample");
                if (value > maxval) throw ParseError(file + ": sample above maxval");
                dark[i] = value <= gray_threshold ? 1 : 0;
            }
        } else {
            const int sep = in.get();
            if (sep == EOF || !std::isspace(sep)) throw ParseError(file + ": bad P5 header");
            std::vector<char> buffer(pixels);
            in.read(buffer.data(), static_cast<std::streamsize>(pixels));
            if (!in) throw ParseError(file + ": truncated P5 payload");
            for (std::size_t i = 0; i < pixels; ++i) {
                dark[i] = static_cast<std::uint8_t>(buffer[i]) <= gray_threshold ? 1 : 0;
            }
        }
    }

    return dark_to_mask(width, height, dark, polarity, file);
}

void write_mask_p4(const std::filesystem::path& path, const DomainMask& mask) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path.string() + ": cannot open for writing");
    out << "P4\n" << mask.width() << " " << mask.height() << "\n";
    const std::size_t row_bytes = (static_cast<std::size_t>(mask.width()) + 7) / 8;
    std::vector<char> row(row_bytes);
    for (int y = 0; y < mask.height(); ++y) {
        std::fill(row.begin(), row.end(), 0);
        for (int x = 0; x < mask.width(); ++x) {
            if (mask.excitable(x, y)) row[x / 8] |= static_cast<char>(1 << (7 - x % 8));
        }
        out.write(row.data(), static_cast<std::streamsize>(row_bytes));
    }
    if (!out) throw ParseError(path.string() + ": write failed");
}

void write_pgm_p5(const std::filesystem::path& path, const GrayImage& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path.string() + ": cannot open for writing");
    out << "P5\n" << image.width << " " << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              static_cast<std::streamsize>(image.pixels.size()));
    if (!out) throw ParseError(path.string() + ": write failed");
}

GrayImage read_pgm_p5(const std::filesystem::path& path) {
    const std::string file = path.string();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(file + ": cannot open");
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5') throw ParseError(file + ": not a P5 file");
    GrayImage image;
    image.width = next_header_int(in, file, "width");
    image.height = next_header_int(in, file, "height");
    const int maxval = next_header_int(in, file, "maxval");
    if (maxval != 255) throw ParseError(file + ": unsupported maxval");
    const int sep = in.get();
    if (sep == EOF || !std::isspace(sep)) throw ParseError(file + ": bad P5 header");
    image.pixels.resize(static_cast<std::size_t>(image.width) * image.height);
    in.read(reinterpret_cast<char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
    if (!in) throw ParseError(file + ": truncated P5 payload");
    return image;
}

}  // namespace excitable
