#pragma once

// Shared plumbing: error types, deterministic RNG, hashing, and
// little-endian binary I/O used by every on-disk format in this project.

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace memcap {

// =====================================================================
//  Errors
// =====================================================================

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroVectorError : Error { using Error::Error; };
struct EmptyBlockError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct ZeroKeyError : Error { using Error::Error; };
struct EmptyMemoryError : Error { using Error::Error; };
struct ShapeMismatchError : Error { using Error::Error; };
struct StaleCacheError : Error { using Error::Error; };
struct EmptyCaptionError : Error { using Error::Error; };
struct NonFiniteGradientError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct FormatError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

// =====================================================================
//  Deterministic RNG
//
//  splitmix64 as the single source of pseudo-randomness. All derived
//  values (uniform doubles, uniform floats) are built with fixed bit
//  manipulation only, so streams are identical on every platform.
// =====================================================================

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // [-1, 1) from 24 bits; exact in single precision.
    float unit_float() {
        const auto bits = static_cast<std::uint32_t>(next() >> 40);
        return static_cast<float>(bits) * (1.0f / 16777216.0f) * 2.0f - 1.0f;
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    return mix64(a + 0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2));
}

inline std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::string_view s) {
    return fnv1a64(s.data(), s.size());
}

// =====================================================================
//  Little-endian binary I/O
//
//  All file formats in this project are explicitly little-endian, so the
//  byte shuffling is spelled out instead of relying on host order.
// =====================================================================

namespace binio {

inline void write_u8(std::ostream& out, std::uint8_t v) {
    out.put(static_cast<char>(v));
}

inline void write_u32(std::ostream& out, std::uint32_t v) {
    char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 4);
}

inline void write_u64(std::ostream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

inline void write_f32(std::ostream& out, float v) {
    std::uint32_t bits = 0;
    std::memcpy(&bits, &v, sizeof(bits));
    write_u32(out, bits);
}

inline void write_f64(std::ostream& out, double v) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof(bits));
    write_u64(out, bits);
}

inline void write_string(std::ostream& out, std::string_view s) {
    if (s.size() > 0xffffffffULL) throw IoError("string too long for u32 length prefix");
    write_u32(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

[[noreturn]] inline void fail_truncated(const std::string& what) {
    throw FormatError("truncated file while reading " + what);
}

inline std::uint8_t read_u8(std::istream& in, const std::string& what) {
    int c = in.get();
    if (c == EOF) fail_truncated(what);
    return static_cast<std::uint8_t>(c);
}

inline std::uint32_t read_u32(std::istream& in, const std::string& what) {
    char buf[4];
    if (!in.read(buf, 4)) fail_truncated(what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return v;
}

inline std::uint64_t read_u64(std::istream& in, const std::string& what) {
    char buf[8];
    if (!in.read(buf, 8)) fail_truncated(what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return v;
}

inline float read_f32(std::istream& in, const std::string& what) {
    const std::uint32_t bits = read_u32(in, what);
    float v = 0.0f;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
}

inline double read_f64(std::istream& in, const std::string& what) {
    const std::uint64_t bits = read_u64(in, what);
    double v = 0.0;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
}

inline std::string read_string(std::istream& in, const std::string& what) {
    const std::uint32_t len = read_u32(in, what + " length");
    std::string s(len, '\0');
    if (len > 0 && !in.read(s.data(), len)) fail_truncated(what);
    return s;
}

inline void expect_eof(std::istream& in, const std::string& format_name) {
    if (in.peek() != EOF)
        throw FormatError(format_name + ": trailing bytes after last entry");
}

}  // namespace binio

}  // namespace memcap
