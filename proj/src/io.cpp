#include "gi/io.hpp"

#include "gi/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#ifdef GI_HAVE_PNG
#include <png.h>
#endif

namespace gi {
namespace {

// Next header token, skipping whitespace and '#' comments.
std::string pnm_token(std::istream& in) {
    std::string token;
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') {
                ch = in.get();
            }
        } else if (std::isspace(ch)) {
            if (!token.empty()) {
                return token;
            }
        } else {
            token.push_back(static_cast<char>(ch));
        }
        ch = in.get();
    }
    return token;
}

std::size_t pnm_number(std::istream& in, const char* what) {
    const std::string token = pnm_token(in);
    if (token.empty() || !std::all_of(token.begin(), token.end(), ::isdigit)) {
        throw FormatError(std::string("PGM: bad ") + what + " '" + token + "'");
    }
    return std::stoul(token);
}

#ifdef GI_HAVE_PNG
GrayImage read_png(const std::filesystem::path& path) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.c_str())) {
        throw FormatError("PNG: " + std::string(png.message));
    }
    const bool colour = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
    png.format = colour ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
        const std::string message = png.message;
        png_image_free(&png);
        throw FormatError("PNG: " + message);
    }
    const std::size_t h = png.height;
    const std::size_t w = png.width;
    std::vector<double> px(h * w);
    for (std::size_t i = 0; i < h * w; ++i) {
        if (colour) {
            px[i] = 0.299 * buffer[3 * i] + 0.587 * buffer[3 * i + 1] + 0.114 * buffer[3 * i + 2];
        } else {
            px[i] = buffer[i];
        }
    }
    return GrayImage(h, w, std::move(px));
}
#endif

} // namespace

GrayImage read_pgm(std::istream& in) {
    const std::string magic = pnm_token(in);
    if (magic != "P5" && magic != "P2") {
        throw FormatError("PGM: unsupported magic '" + magic + "' (expected P5 or P2)");
    }
    const std::size_t width = pnm_number(in, "width");
    const std::size_t height = pnm_number(in, "height");
    const std::size_t maxval = pnm_number(in, "maxval");
    if (width == 0 || height == 0) {
        throw FormatError("PGM: zero image dimension");
    }
    if (maxval == 0 || maxval > 255) {
        throw FormatError("PGM: maxval " + std::to_string(maxval) + " not in 1..255");
    }

    std::vector<double> px(width * height);
    if (magic == "P5") {
        std::vector<char> raw(px.size());
        in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
        if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
            throw FormatError("PGM: truncated pixel data");
        }
        std::transform(raw.begin(), raw.end(), px.begin(),
                       [](char b) { return static_cast<double>(static_cast<unsigned char>(b)); });
    } else {
        for (double& v : px) {
            const std::size_t value = pnm_number(in, "pixel value");
            if (value > maxval) {
                throw FormatError("PGM: pixel value exceeds maxval");
            }
            v = static_cast<double>(value);
        }
    }
    return GrayImage(height, width, std::move(px));
}

void write_pgm(std::ostream& out, const GrayImage& img) {
    out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
    std::vector<char> raw(img.size());
    std::transform(img.pixels().begin(), img.pixels().end(), raw.begin(), [](double v) {
        return static_cast<char>(static_cast<unsigned char>(std::clamp(std::round(v), 0.0, 255.0)));
    });
    out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
}

bool png_supported() noexcept {
#ifdef GI_HAVE_PNG
    return true;
#else
    return false;
#endif
}

GrayImage read_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "'");
    }
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    const auto got = in.gcount();
    constexpr std::array<unsigned char, 8> png_magic{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (got == 8 && std::equal(magic.begin(), magic.end(), png_magic.begin(),
                               [](char a, unsigned char b) { return static_cast<unsigned char>(a) == b; })) {
#ifdef GI_HAVE_PNG
        return read_png(path);
#else
        throw FormatError("'" + path.string() + "' is a PNG but this build lacks PNG support");
#endif
    }
    in.clear();
    in.seekg(0);
    try {
        return read_pgm(in);
    } catch (const FormatError& e) {
        throw FormatError("'" + path.string() + "': " + e.what());
    }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write '" + tmp.string() + "'");
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw Error("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot move output into place at '" + path.string() + "'");
    }
}

void write_pgm_file(const std::filesystem::path& path, const GrayImage& img) {
    std::ostringstream out;
    write_pgm(out, img);
    write_file_atomic(path, out.str());
}

} // namespace gi
