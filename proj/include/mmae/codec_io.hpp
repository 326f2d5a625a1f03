#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mmae/multimodal.hpp"

namespace mmae {

// Compressed representation of a batch: the joint-layer activations plus
// provenance tying it to the model that produced it.
struct CodeBlock {
  RealMatrix z;  // joint dim x samples
  std::string model_fingerprint;  // 128-bit hex of the model's bytes
  std::size_t source_eeg_dim = 0;
  std::size_t source_emg_dim = 0;
  std::int64_t created_at_unix = 0;
};

inline constexpr int kModelFormatVersion = 1;
inline constexpr int kCodeFormatVersion = 1;

// Canonical serialization: a text manifest followed by the raw
// little-endian float64 payload in declared order. Identical models
// produce identical bytes.
std::vector<unsigned char> serialize_model(const MultimodalModel& model,
                                           const std::string& config_echo);
MultimodalModel deserialize_model(const std::vector<unsigned char>& bytes,
                                  std::string* config_echo = nullptr);

// MD5 of the canonical serialized bytes.
std::string model_fingerprint(const MultimodalModel& model);

void save_model(const MultimodalModel& model, const std::string& path,
                const std::string& config_echo = "");
MultimodalModel load_model(const std::string& path,
                           std::string* config_echo = nullptr);

// Runs the joint encoder and stamps the result with the model fingerprint.
// Requires a trained model and a nonempty batch.
CodeBlock encode(const MultimodalModel& model, const MultimodalBatch& batch);

// Refuses to decode a CodeBlock whose fingerprint does not match `model`:
// a wrong model would silently corrupt the reconstruction.
std::pair<RealMatrix, RealMatrix> decode(const MultimodalModel& model,
                                         const CodeBlock& code);

void save_codes(const CodeBlock& code, const std::string& path);
CodeBlock load_codes(const std::string& path);

}  // namespace mmae
