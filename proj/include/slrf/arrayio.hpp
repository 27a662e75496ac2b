#ifndef SLRF_ARRAYIO_HPP
#define SLRF_ARRAYIO_HPP

#include <Eigen/Core>

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "slrf/field.hpp"
#include "slrf/grid.hpp"

namespace slrf {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

constexpr std::size_t kHeaderBytes = 64;
constexpr const char* kMagic = "SLRF1";

inline char domain_code(Domain d)
{
    return d == Domain::frequency ? 'f' : 's';
}

inline char source_code(FieldSource s)
{
    switch (s)
    {
    case FieldSource::continuous: return 'c';
    case FieldSource::dft: return 'd';
    default: return 'n';
    }
}

/// Fixed 64-byte text header: space separated tokens, padded with spaces,
/// final byte is a newline. dtype is one of c128 / f64 / u8.
inline std::string make_header(const std::string& dtype, int order,
                               const CenteredGrid& grid, char domain,
                               char source)
{
    std::ostringstream os;
    os << kMagic << " t=" << dtype << " o=" << order << " d=" << domain
       << " p=" << source << " n1=" << grid.n1 << " n2=" << grid.n2;
    std::string h = os.str();
    if (h.size() > kHeaderBytes - 1)
    {
        throw io_error("array header overflow");
    }
    h.resize(kHeaderBytes - 1, ' ');
    h.push_back('\n');
    return h;
}

struct ParsedHeader {
    std::string dtype;
    int order = 0;
    CenteredGrid grid;
    char domain = 'f';
    char source = 'n';
};

inline ParsedHeader parse_header(const std::string& raw,
                                 const std::string& path)
{
    std::istringstream is(raw);
    std::string magic;
    is >> magic;
    if (magic != kMagic)
    {
        throw io_error(path + ": not a SLRF array file");
    }
    ParsedHeader h;
    std::string tok;
    while (is >> tok)
    {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
        {
            continue;
        }
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "t") h.dtype = val;
        else if (key == "o") h.order = std::stoi(val);
        else if (key == "d") h.domain = val.empty() ? 'f' : val[0];
        else if (key == "p") h.source = val.empty() ? 'n' : val[0];
        else if (key == "n1") h.grid.n1 = std::stoi(val);
        else if (key == "n2") h.grid.n2 = std::stoi(val);
    }
    if (h.grid.n1 < 1 || h.grid.n2 < 1 || h.dtype.empty())
    {
        throw io_error(path + ": malformed array header");
    }
    return h;
}

inline FieldSource source_from_code(char c)
{
    if (c == 'c') return FieldSource::continuous;
    if (c == 'd') return FieldSource::dft;
    return FieldSource::unknown;
}

} // namespace detail

/// Writes a field as the flat binary array format: 64-byte text header,
/// then components in order, each row-major complex128 little-endian.
inline void write_field(const std::string& path, const SampleField& field)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
    {
        throw io_error("cannot open for writing: " + path);
    }
    os << detail::make_header("c128", field.order(), field.grid(),
                              detail::domain_code(field.domain()),
                              detail::source_code(field.source()));
    for (int c = 0; c < field.components(); ++c)
    {
        const auto& v = field.comp(c);
        os.write(reinterpret_cast<const char*>(v.data()),
                 static_cast<std::streamsize>(sizeof(Complex) * v.size()));
    }
    if (!os)
    {
        throw io_error("write failed: " + path);
    }
}

inline SampleField read_field(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
    {
        throw io_error("cannot open: " + path);
    }
    std::string raw(detail::kHeaderBytes, '\0');
    is.read(raw.data(), detail::kHeaderBytes);
    if (!is)
    {
        throw io_error(path + ": truncated header");
    }
    const auto h = detail::parse_header(raw, path);
    if (h.dtype != "c128")
    {
        throw io_error(path + ": expected dtype c128, got " + h.dtype);
    }
    SampleField field(h.order, h.grid, detail::source_from_code(h.source),
                      h.domain == 's' ? Domain::spatial : Domain::frequency);
    for (int c = 0; c < field.components(); ++c)
    {
        auto& v = field.comp(c);
        is.read(reinterpret_cast<char*>(v.data()),
                static_cast<std::streamsize>(sizeof(Complex) * v.size()));
    }
    if (!is)
    {
        throw io_error(path + ": truncated payload");
    }
    return field;
}

inline void write_image(const std::string& path, const SpatialImage& image)
{
    SampleField f(0, image.grid, FieldSource::unknown, Domain::spatial);
    f.comp(0) = image.values;
    write_field(path, f);
}

inline SpatialImage read_image(const std::string& path)
{
    const SampleField f = read_field(path);
    if (f.order() != 0)
    {
        throw io_error(path + ": expected an order 0 array");
    }
    SpatialImage image(f.grid());
    image.values = f.comp(0);
    return image;
}

/// Mask payload: one byte per grid index, 1 = kept.
inline void write_mask_bytes(const std::string& path, const CenteredGrid& grid,
                             const std::vector<std::uint8_t>& bytes)
{
    if (static_cast<std::int64_t>(bytes.size()) != grid.size())
    {
        throw io_error("mask payload size mismatch");
    }
    std::ofstream os(path, std::ios::binary);
    if (!os)
    {
        throw io_error("cannot open for writing: " + path);
    }
    os << detail::make_header("u8", 0, grid, 'f', 'n');
    os.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
    if (!os)
    {
        throw io_error("write failed: " + path);
    }
}

inline std::vector<std::uint8_t> read_mask_bytes(const std::string& path,
                                                 CenteredGrid& grid_out)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
    {
        throw io_error("cannot open: " + path);
    }
    std::string raw(detail::kHeaderBytes, '\0');
    is.read(raw.data(), detail::kHeaderBytes);
    if (!is)
    {
        throw io_error(path + ": truncated header");
    }
    const auto h = detail::parse_header(raw, path);
    if (h.dtype != "u8")
    {
        throw io_error(path + ": expected dtype u8, got " + h.dtype);
    }
    grid_out = h.grid;
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(h.grid.size()));
    is.read(reinterpret_cast<char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!is)
    {
        throw io_error(path + ": truncated payload");
    }
    return bytes;
}

/// 16-bit binary PGM of the real part, mapped affinely from [lo, hi] to
/// [0, 65535] with clipping. Pass lo == hi to use the image's own range.
inline void write_pgm16(const std::string& path, const SpatialImage& image,
                        double lo = 0.0, double hi = 0.0)
{
    const Eigen::VectorXd re = image.real_part();
    if (lo == hi)
    {
        lo = re.minCoeff();
        hi = re.maxCoeff();
        if (lo == hi)
        {
            hi = lo + 1.0;
        }
    }
    std::ofstream os(path, std::ios::binary);
    if (!os)
    {
        throw io_error("cannot open for writing: " + path);
    }
    os << "P5\n" << image.grid.n2 << " " << image.grid.n1 << "\n65535\n";
    const double scale = 65535.0 / (hi - lo);
    for (std::int64_t i = 0; i < re.size(); ++i)
    {
        double t = (re(i) - lo) * scale;
        t = t < 0.0 ? 0.0 : (t > 65535.0 ? 65535.0 : t);
        const auto v = static_cast<std::uint16_t>(t + 0.5);
        const unsigned char bytes[2] = {
            static_cast<unsigned char>(v >> 8),
            static_cast<unsigned char>(v & 0xff)};
        os.write(reinterpret_cast<const char*>(bytes), 2);
    }
    if (!os)
    {
        throw io_error("write failed: " + path);
    }
}

/// FNV-1a 64-bit, used for config hashes in manifests.
inline std::uint64_t fnv1a64(const std::string& data)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data)
    {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace slrf

#endif // SLRF_ARRAYIO_HPP
