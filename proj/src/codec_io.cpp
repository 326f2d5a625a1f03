#include "mmae/codec_io.hpp"

#include <ctime>
#include <sstream>

#include "artifact_format.hpp"
#include "mmae/errors.hpp"
#include "mmae/hash.hpp"

namespace mmae {

using detail::Manifest;
using detail::ParsedArtifact;

namespace {

void append_doubles(std::vector<double>& payload, const RealMatrix& m) {
  payload.insert(payload.end(), m.values().begin(), m.values().end());
}
void append_doubles(std::vector<double>& payload,
                    const std::vector<double>& v) {
  payload.insert(payload.end(), v.begin(), v.end());
}

void append_stack_payload(std::vector<double>& payload,
                          const StackedEncoder& s) {
  for (const auto& l : s.layers) {
    append_doubles(payload, l.W);
    append_doubles(payload, l.b);
    append_doubles(payload, l.b_prime);
  }
}

std::string stack_dims_line(const StackedEncoder& s) {
  std::string out;
  for (std::size_t d : s.dims()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(d);
  }
  return out;
}

std::string stack_activations_line(const StackedEncoder& s) {
  std::string out;
  for (const auto& l : s.layers) {
    if (!out.empty()) out += ' ';
    out += activation_name(l.activation);
  }
  return out;
}

// Payload cursor for deserialization.
class Reader {
 public:
  explicit Reader(const std::vector<double>& payload) : payload_(payload) {}

  RealMatrix matrix(std::size_t rows, std::size_t cols) {
    RealMatrix m(rows, cols);
    for (double& v : m.values()) v = next();
    return m;
  }
  std::vector<double> vector(std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = next();
    return v;
  }
  bool exhausted() const { return pos_ == payload_.size(); }

 private:
  double next() {
    if (pos_ >= payload_.size())
      throw FormatError("artifact: payload shorter than declared shapes");
    return payload_[pos_++];
  }
  const std::vector<double>& payload_;
  std::size_t pos_ = 0;
};

StackedEncoder read_stack(Reader& r, const std::vector<std::size_t>& dims,
                          const std::vector<std::string>& activations,
                          double lambda) {
  if (dims.size() < 2 || activations.size() != dims.size() - 1)
    throw FormatError("artifact: inconsistent stack dims/activations");
  StackedEncoder s;
  for (std::size_t i = 1; i < dims.size(); ++i) {
    TiedAutoencoder ae;
    ae.W = r.matrix(dims[i], dims[i - 1]);
    ae.b = r.vector(dims[i]);
    ae.b_prime = r.vector(dims[i - 1]);
    ae.activation = activation_from_name(activations[i - 1]);
    ae.lambda = lambda;
    s.layers.push_back(std::move(ae));
  }
  return s;
}

}  // namespace

std::vector<unsigned char> serialize_model(const MultimodalModel& model,
                                           const std::string& config_echo) {
  if (config_echo.find('\n') != std::string::npos)
    throw FormatError("config echo must be a single line");

  std::string manifest;
  manifest += "MMAE " + std::to_string(kModelFormatVersion) + "\n";
  manifest += "eeg_dims " + stack_dims_line(model.eeg_stack) + "\n";
  manifest += "emg_dims " + stack_dims_line(model.emg_stack) + "\n";
  manifest += "eeg_activations " + stack_activations_line(model.eeg_stack) + "\n";
  manifest += "emg_activations " + stack_activations_line(model.emg_stack) + "\n";
  manifest += "joint_dim " + std::to_string(model.joint_dim()) + "\n";
  {
    std::ostringstream lam;
    lam.precision(17);
    lam << model.lambda;
    manifest += "lambda " + lam.str() + "\n";
  }
  manifest += "pretrained " + std::to_string(model.pretrained ? 1 : 0) + "\n";
  if (model.head) {
    std::string labels;
    for (const auto& l : model.head->labels) {
      if (!labels.empty()) labels += ' ';
      labels += l;
    }
    manifest += "head " + std::to_string(model.head->num_classes()) + " " +
                labels + "\n";
  } else {
    manifest += "head 0\n";
  }
  manifest += "config " + (config_echo.empty() ? "-" : config_echo) + "\n";

  std::vector<double> payload;
  append_stack_payload(payload, model.eeg_stack);
  append_stack_payload(payload, model.emg_stack);
  append_doubles(payload, model.joint_W_e);
  append_doubles(payload, model.joint_b_e);
  append_doubles(payload, model.joint_bdec_e);
  append_doubles(payload, model.joint_W_m);
  append_doubles(payload, model.joint_b_m);
  append_doubles(payload, model.joint_bdec_m);
  if (model.head) {
    append_doubles(payload, model.head->W);
    append_doubles(payload, model.head->b);
  }
  return detail::assemble_artifact(manifest, payload);
}

MultimodalModel deserialize_model(const std::vector<unsigned char>& bytes,
                                  std::string* config_echo) {
  ParsedArtifact parsed =
      detail::parse_artifact(bytes, "MMAE", kModelFormatVersion);
  const Manifest& m = parsed.manifest;

  const double lambda = std::stod(m.get("lambda"));
  Reader reader(parsed.payload);

  MultimodalModel model;
  model.eeg_stack =
      read_stack(reader, m.get_counts("eeg_dims"),
                 detail::split_words(m.get("eeg_activations")), lambda);
  model.emg_stack =
      read_stack(reader, m.get_counts("emg_dims"),
                 detail::split_words(m.get("emg_activations")), lambda);
  const std::size_t joint = m.get_count("joint_dim");
  model.joint_W_e = reader.matrix(joint, model.eeg_stack.top_dim());
  model.joint_b_e = reader.vector(joint);
  model.joint_bdec_e = reader.vector(model.eeg_stack.top_dim());
  model.joint_W_m = reader.matrix(joint, model.emg_stack.top_dim());
  model.joint_b_m = reader.vector(joint);
  model.joint_bdec_m = reader.vector(model.emg_stack.top_dim());
  model.lambda = lambda;
  model.pretrained = m.get("pretrained") == "1";

  const std::vector<std::string> head_words =
      detail::split_words(m.get("head"));
  const std::size_t classes = std::stoull(head_words.at(0));
  if (classes > 0) {
    if (head_words.size() != classes + 1)
      throw FormatError("artifact: head label count mismatch");
    SoftmaxHead head;
    head.W = reader.matrix(classes, joint);
    head.b = reader.vector(classes);
    head.labels.assign(head_words.begin() + 1, head_words.end());
    model.head = std::move(head);
  }
  if (!reader.exhausted())
    throw FormatError("artifact: payload longer than declared shapes");
  if (config_echo) {
    const std::string& echo = m.get("config");
    *config_echo = (echo == "-") ? "" : echo;
  }
  return model;
}

std::string model_fingerprint(const MultimodalModel& model) {
  const std::vector<unsigned char> bytes = serialize_model(model, "");
  return md5_hex(bytes.data(), bytes.size());
}

void save_model(const MultimodalModel& model, const std::string& path,
                const std::string& config_echo) {
  detail::write_file(path, serialize_model(model, config_echo));
}

MultimodalModel load_model(const std::string& path, std::string* config_echo) {
  return deserialize_model(detail::read_file(path), config_echo);
}

CodeBlock encode(const MultimodalModel& model, const MultimodalBatch& batch) {
  if (!model.pretrained) throw DomainError("encode: model is not trained");
  if (batch.samples() == 0) throw DomainError("encode: empty batch");
  CodeBlock code;
  code.z = joint_forward(model, batch);
  code.model_fingerprint = model_fingerprint(model);
  code.source_eeg_dim = batch.eeg.rows();
  code.source_emg_dim = batch.emg.rows();
  code.created_at_unix = static_cast<std::int64_t>(std::time(nullptr));
  return code;
}

std::pair<RealMatrix, RealMatrix> decode(const MultimodalModel& model,
                                         const CodeBlock& code) {
  const std::string fp = model_fingerprint(model);
  if (fp != code.model_fingerprint)
    throw FormatError("decode: code block fingerprint " +
                      code.model_fingerprint +
                      " does not match model fingerprint " + fp);
  return multimodal_decode(model, code.z);
}

void save_codes(const CodeBlock& code, const std::string& path) {
  std::string manifest;
  manifest += "MMZ " + std::to_string(kCodeFormatVersion) + "\n";
  manifest += "joint_dim " + std::to_string(code.z.rows()) + "\n";
  manifest += "samples " + std::to_string(code.z.cols()) + "\n";
  manifest += "source_dims " + std::to_string(code.source_eeg_dim) + " " +
              std::to_string(code.source_emg_dim) + "\n";
  manifest += "model_fingerprint " + code.model_fingerprint + "\n";
  manifest += "created_at " + std::to_string(code.created_at_unix) + "\n";
  detail::write_file(path, detail::assemble_artifact(manifest, code.z.values()));
}

CodeBlock load_codes(const std::string& path) {
  ParsedArtifact parsed = detail::parse_artifact(detail::read_file(path),
                                                 "MMZ", kCodeFormatVersion);
  const Manifest& m = parsed.manifest;
  const std::size_t joint = m.get_count("joint_dim");
  const std::size_t samples = m.get_count("samples");
  if (joint * samples != parsed.payload.size())
    throw FormatError("code block: payload size disagrees with header (" +
                      std::to_string(joint) + "x" + std::to_string(samples) +
                      " vs " + std::to_string(parsed.payload.size()) + ")");
  CodeBlock code;
  code.z = RealMatrix(joint, samples);
  code.z.values() = parsed.payload;
  const auto dims = m.get_counts("source_dims");
  if (dims.size() != 2) throw FormatError("code block: malformed source_dims");
  code.source_eeg_dim = dims[0];
  code.source_emg_dim = dims[1];
  code.model_fingerprint = m.get("model_fingerprint");
  code.created_at_unix = std::stoll(m.get("created_at"));
  return code;
}

}  // namespace mmae
