#include "ospr/field.hpp"

#include <cctype>
#include <fstream>

namespace ospr {

namespace {

// Reads one whitespace/comment-delimited token from a PGM header.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c))
            continue;
        tok.push_back(char(c));
        while ((c = in.get()) != EOF && !std::isspace(c) && c != '#')
            tok.push_back(char(c));
        if (c == '#')
            in.unget();
        return tok;
    }
    return tok;
}

int parse_int(const std::string& tok, const std::string& what) {
    if (tok.empty())
        throw FormatError("PGM header: missing " + what);
    for (char c : tok)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw FormatError("PGM header: bad " + what + " '" + tok + "'");
    return std::stoi(tok);
}

} // namespace

std::vector<unsigned char> read_pgm(const std::string& path, int& width, int& height) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::string magic = next_token(in);
    if (magic != "P5")
        throw FormatError("'" + path + "': unsupported image format (need binary PGM P5)");
    width = parse_int(next_token(in), "width");
    height = parse_int(next_token(in), "height");
    const int maxval = parse_int(next_token(in), "maxval");
    if (maxval <= 0 || maxval > 255)
        throw FormatError("'" + path + "': only 8-bit PGM supported (maxval " +
                          std::to_string(maxval) + ")");
    if (width < 2 || height < 2)
        throw FormatError("'" + path + "': image too small");
    std::vector<unsigned char> pixels(std::size_t(width) * height);
    in.read(reinterpret_cast<char*>(pixels.data()), std::streamsize(pixels.size()));
    if (in.gcount() != std::streamsize(pixels.size()))
        throw IoError("'" + path + "': truncated pixel data");
    return pixels;
}

void write_pgm(const std::string& path, int width, int height,
               const std::vector<unsigned char>& pixels) {
    if (pixels.size() != std::size_t(width) * height)
        throw DimensionError("write_pgm: pixel count does not match dimensions");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << "P5\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()), std::streamsize(pixels.size()));
    if (!out)
        throw IoError("write failed for '" + path + "'");
}

} // namespace ospr
