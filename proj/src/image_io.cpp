#include "chartml/image_io.hpp"

#include <zlib.h>

#include <cmath>
#include <cstring>
#include <fstream>

#include "chartml/errors.hpp"

namespace chartml {

namespace {

void put_u32_be(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>((v >> 24) & 0xFF));
    out.push_back(static_cast<char>((v >> 16) & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>(v & 0xFF));
}

void append_chunk(std::string& out, const char type[4], const std::string& payload) {
    put_u32_be(out, static_cast<std::uint32_t>(payload.size()));
    std::string body(type, 4);
    body += payload;
    out += body;
    const auto crc =
        crc32(0, reinterpret_cast<const Bytef*>(body.data()), static_cast<uInt>(body.size()));
    put_u32_be(out, static_cast<std::uint32_t>(crc));
}

std::string zlib_compress(const std::string& raw) {
    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::string out(bound, '\0');
    // Fixed level so identical pixels always produce identical files.
    if (compress2(reinterpret_cast<Bytef*>(out.data()), &bound,
                  reinterpret_cast<const Bytef*>(raw.data()), static_cast<uLong>(raw.size()),
                  6) != Z_OK)
        throw DataError("png: zlib compression failed");
    out.resize(bound);
    return out;
}

void put_u32_le(std::ofstream& out, std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                 static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
    out.write(b, 4);
}

std::uint32_t get_u32_le(std::ifstream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_png_gray8(const RasterImage& image, const std::filesystem::path& path,
                     const std::map<std::string, std::string>& text) {
    if (image.width <= 0 || image.height <= 0) throw DataError("png: empty image");

    std::string file("\x89PNG\r\n\x1a\n", 8);

    std::string ihdr;
    put_u32_be(ihdr, static_cast<std::uint32_t>(image.width));
    put_u32_be(ihdr, static_cast<std::uint32_t>(image.height));
    ihdr.push_back(8);  // bit depth
    ihdr.push_back(0);  // color type: grayscale
    ihdr.push_back(0);  // compression
    ihdr.push_back(0);  // filter
    ihdr.push_back(0);  // interlace
    append_chunk(file, "IHDR", ihdr);

    for (const auto& [key, value] : text) {
        std::string chunk = key;
        chunk.push_back('\0');
        chunk += value;
        append_chunk(file, "tEXt", chunk);
    }

    std::string raw;
    raw.reserve(static_cast<std::size_t>(image.height) *
                (static_cast<std::size_t>(image.width) + 1));
    for (int y = 0; y < image.height; ++y) {
        raw.push_back('\0');  // filter type none
        for (int x = 0; x < image.width; ++x) {
            const float v = std::clamp(image.at(x, y), 0.0f, 1.0f);
            raw.push_back(static_cast<char>(
                static_cast<int>(std::lround(255.0f * (1.0f - v)))));
        }
    }
    append_chunk(file, "IDAT", zlib_compress(raw));
    append_chunk(file, "IEND", "");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out.write(file.data(), static_cast<std::streamsize>(file.size()));
}

void write_rimg(const RasterImage& image, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out.write("RIMG", 4);
    put_u32_le(out, 1);
    put_u32_le(out, static_cast<std::uint32_t>(image.width));
    put_u32_le(out, static_cast<std::uint32_t>(image.height));
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              static_cast<std::streamsize>(image.pixels.size() * sizeof(float)));
}

RasterImage read_rimg(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "RIMG", 4) != 0)
        throw DataError(path.string() + ": not a raw image file");
    const std::uint32_t version = get_u32_le(in);
    if (version != 1)
        throw DataError(path.string() + ": unsupported raw image version " +
                        std::to_string(version));
    RasterImage img;
    img.width = static_cast<int>(get_u32_le(in));
    img.height = static_cast<int>(get_u32_le(in));
    if (img.width <= 0 || img.height <= 0 || img.width > 1 << 16 || img.height > 1 << 16)
        throw DataError(path.string() + ": implausible image dimensions");
    img.pixels.resize(static_cast<std::size_t>(img.width) *
                      static_cast<std::size_t>(img.height));
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size() * sizeof(float)));
    if (!in) throw DataError(path.string() + ": truncated pixel payload");
    return img;
}

}  // namespace chartml
