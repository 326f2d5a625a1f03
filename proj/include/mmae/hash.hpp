#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

namespace mmae {

// 128-bit MD5 digest of a byte buffer, hex-encoded. Used as a content
// fingerprint, not for security.
std::string md5_hex(const void* data, std::size_t len);

// FNV-1a 64-bit, used as a cheap payload checksum in artifact files.
std::uint64_t fnv1a64(const void* data, std::size_t len);

}  // namespace mmae
