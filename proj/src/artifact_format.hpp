// Shared text-manifest + little-endian float64 payload framing used by the
// model (.mmae), code block (.mmz) and dataset container files.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mmae::detail {

void encode_payload(const std::vector<double>& payload,
                    std::vector<unsigned char>& out);
std::vector<double> decode_payload(const unsigned char* bytes,
                                   std::size_t count);

std::string hex64(std::uint64_t v);

class Manifest {
 public:
  // Consumes "key value" lines until the DATA marker.
  explicit Manifest(std::istream& is);

  const std::string& get(const std::string& key) const;
  std::size_t get_count(const std::string& key) const;
  std::vector<std::size_t> get_counts(const std::string& key) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::vector<unsigned char> read_file(const std::string& path);
void write_file(const std::string& path,
                const std::vector<unsigned char>& bytes);

struct ParsedArtifact {
  Manifest manifest;
  std::vector<double> payload;
};

// Validates magic, version, declared payload size and checksum.
ParsedArtifact parse_artifact(const std::vector<unsigned char>& bytes,
                              const std::string& magic, int expected_version);

// manifest_text must end with a newline; payload framing lines are appended.
std::vector<unsigned char> assemble_artifact(const std::string& manifest_text,
                                             const std::vector<double>& payload);

std::vector<std::string> split_words(const std::string& s);

}  // namespace mmae::detail
