#include "artifact_format.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mmae/errors.hpp"
#include "mmae/hash.hpp"

namespace mmae::detail {

void encode_payload(const std::vector<double>& payload,
                    std::vector<unsigned char>& out) {
  out.reserve(out.size() + payload.size() * 8);
  for (double d : payload) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, 8);
    for (int i = 0; i < 8; ++i)
      out.push_back(static_cast<unsigned char>(bits >> (8 * i)));
  }
}

std::vector<double> decode_payload(const unsigned char* bytes,
                                   std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i)
      bits |= static_cast<std::uint64_t>(bytes[k * 8 + i]) << (8 * i);
    std::memcpy(&out[k], &bits, 8);
  }
  return out;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

Manifest::Manifest(std::istream& is) {
  std::string line;
  while (std::getline(is, line)) {
    if (line == "DATA") return;
    const auto space = line.find(' ');
    if (space == std::string::npos)
      throw FormatError("artifact manifest: malformed line: " + line);
    entries_.emplace_back(line.substr(0, space), line.substr(space + 1));
  }
}

const std::string& Manifest::get(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  throw FormatError("artifact manifest: missing key '" + key + "'");
}

std::size_t Manifest::get_count(const std::string& key) const {
  return static_cast<std::size_t>(std::stoull(get(key)));
}

std::vector<std::size_t> Manifest::get_counts(const std::string& key) const {
  std::istringstream ls(get(key));
  std::vector<std::size_t> out;
  std::size_t v;
  while (ls >> v) out.push_back(v);
  return out;
}

std::vector<unsigned char> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open file: " + path);
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>());
}

void write_file(const std::string& path,
                const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write file: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("write failed: " + path);
}

ParsedArtifact parse_artifact(const std::vector<unsigned char>& bytes,
                              const std::string& magic, int expected_version) {
  static const std::string kDataMarker = "\nDATA\n";
  const std::string text(reinterpret_cast<const char*>(bytes.data()),
                         std::min<std::size_t>(bytes.size(), 1 << 16));
  const auto marker = text.find(kDataMarker);
  if (marker == std::string::npos)
    throw FormatError("artifact: missing DATA section");
  const std::size_t payload_off = marker + kDataMarker.size();

  std::istringstream is(text.substr(0, payload_off));
  std::string first;
  std::getline(is, first);
  std::istringstream fs(first);
  std::string got_magic;
  int version = -1;
  fs >> got_magic >> version;
  if (got_magic != magic)
    throw FormatError("artifact: expected magic '" + magic + "', got '" +
                      got_magic + "'");
  if (version != expected_version)
    throw FormatError("artifact: unsupported format version " +
                      std::to_string(version) + " (this build reads version " +
                      std::to_string(expected_version) + ")");

  Manifest manifest(is);
  const std::size_t count = manifest.get_count("payload_count");
  if (bytes.size() < payload_off + count * 8)
    throw FormatError("artifact: truncated payload (expected " +
                      std::to_string(count * 8) + " bytes, have " +
                      std::to_string(bytes.size() - payload_off) + ")");
  const std::uint64_t checksum =
      fnv1a64(bytes.data() + payload_off, count * 8);
  if (hex64(checksum) != manifest.get("payload_checksum"))
    throw FormatError("artifact: payload checksum mismatch (corrupt file)");
  return ParsedArtifact{std::move(manifest),
                        decode_payload(bytes.data() + payload_off, count)};
}

std::vector<unsigned char> assemble_artifact(const std::string& manifest_text,
                                             const std::vector<double>& payload) {
  std::vector<unsigned char> payload_bytes;
  encode_payload(payload, payload_bytes);
  std::string head = manifest_text;
  head += "payload_count " + std::to_string(payload.size()) + "\n";
  head += "payload_checksum " +
          hex64(fnv1a64(payload_bytes.data(), payload_bytes.size())) + "\n";
  head += "DATA\n";
  std::vector<unsigned char> out(head.begin(), head.end());
  out.insert(out.end(), payload_bytes.begin(), payload_bytes.end());
  return out;
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace mmae::detail
