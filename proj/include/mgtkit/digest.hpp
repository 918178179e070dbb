#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mgtkit {

inline constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = kFnvOffset) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= kFnvPrime;
    }
    return h;
}

std::string hex64(std::uint64_t value);

/// Content digest used for artifact provenance, formatted "fnv1a64:<hex>".
std::string digest_string(std::string_view bytes);

/// Digest of a file's bytes. Throws DataError when the file cannot be read.
std::string digest_file(const std::string& path);

}  // namespace mgtkit
