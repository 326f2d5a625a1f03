#include "mmae/dwt.hpp"

#include <cmath>
#include <string>

#include "mmae/errors.hpp"
#include "mmae/metrics.hpp"

namespace mmae {

namespace {

// Orthonormal Daubechies scaling filters (sum of squares 1, sum sqrt(2)).
const std::vector<double>& scaling_filter(int order) {
  static const std::vector<double> db1 = {0.7071067811865476,
                                          0.7071067811865476};
  static const std::vector<double> db2 = {
      0.48296291314469025, 0.8365163037378079, 0.22414386804185735,
      -0.12940952255092145};
  static const std::vector<double> db3 = {
      0.3326705529509569,  0.8068915093133388,  0.4598775021193313,
      -0.13501102001039084, -0.08544127388224149, 0.035226291882100656};
  static const std::vector<double> db4 = {
      0.23037781330885523,  0.7148465705525415,   0.6308807679295904,
      -0.02798376941698385, -0.18703481171888114, 0.030841381835986965,
      0.032883011666982945, -0.010597401784997278};
  static const std::vector<double> db5 = {
      0.160102397974125,   0.6038292697974729,  0.7243085284385744,
      0.13842814590110342, -0.24229488706619015, -0.03224486958502952,
      0.07757149384006515, -0.006241490213011705, -0.012580751999015526,
      0.003335725285001549};
  static const std::vector<double> db6 = {
      0.11154074335008017,  0.4946238903983854,   0.7511339080215775,
      0.3152503517092432,   -0.22626469396516913, -0.12976686756709563,
      0.09750160558707936,  0.02752286553001629,  -0.031582039318031156,
      0.0005538422009938016, 0.004777257511010651, -0.001077301085308479};
  switch (order) {
    case 1: return db1;
    case 2: return db2;
    case 3: return db3;
    case 4: return db4;
    case 5: return db5;
    case 6: return db6;
    default:
      throw DomainError("WaveletConfig: unsupported Daubechies order " +
                        std::to_string(order));
  }
}

// Quadrature mirror: g[n] = (-1)^n h[L-1-n].
std::vector<double> wavelet_filter(const std::vector<double>& h) {
  std::vector<double> g(h.size());
  for (std::size_t n = 0; n < h.size(); ++n)
    g[n] = ((n % 2) ? -1.0 : 1.0) * h[h.size() - 1 - n];
  return g;
}

// One periodic analysis step: even-length input -> (approx, detail).
void analysis_step(const std::vector<double>& x, const std::vector<double>& h,
                   const std::vector<double>& g, std::vector<double>& approx,
                   std::vector<double>& detail) {
  const std::size_t n = x.size();
  const std::size_t half = n / 2;
  approx.assign(half, 0.0);
  detail.assign(half, 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    double a = 0.0, d = 0.0;
    for (std::size_t t = 0; t < h.size(); ++t) {
      const double v = x[(2 * k + t) % n];
      a += h[t] * v;
      d += g[t] * v;
    }
    approx[k] = a;
    detail[k] = d;
  }
}

// Periodic synthesis, exact inverse of analysis_step.
std::vector<double> synthesis_step(const std::vector<double>& approx,
                                   const std::vector<double>& detail,
                                   const std::vector<double>& h,
                                   const std::vector<double>& g) {
  const std::size_t half = approx.size();
  const std::size_t n = 2 * half;
  std::vector<double> x(n, 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    for (std::size_t t = 0; t < h.size(); ++t) {
      const std::size_t m = (2 * k + t) % n;
      x[m] += h[t] * approx[k] + g[t] * detail[k];
    }
  }
  return x;
}

std::size_t padded_length_for(std::size_t len, int levels) {
  const std::size_t block = std::size_t{1} << levels;
  return ((len + block - 1) / block) * block;
}

}  // namespace

void WaveletConfig::validate() const {
  if (levels < 1) throw DomainError("WaveletConfig: levels must be >= 1");
  if (threshold < 0.0)
    throw DomainError("WaveletConfig: threshold must be >= 0");
  scaling_filter(order);  // throws on unsupported order
}

std::size_t DwtCoeffs::total_count() const {
  std::size_t n = approx.size();
  for (const auto& d : details) n += d.size();
  return n;
}

std::vector<double> DwtCoeffs::flattened() const {
  std::vector<double> out = approx;
  // coarse-to-fine detail order
  for (auto it = details.rbegin(); it != details.rend(); ++it)
    out.insert(out.end(), it->begin(), it->end());
  return out;
}

DwtCoeffs dwt_forward(const std::vector<double>& signal,
                      const WaveletConfig& cfg) {
  cfg.validate();
  const auto& h = scaling_filter(cfg.order);
  if (signal.size() < h.size())
    throw DomainError("dwt_forward: signal length " +
                      std::to_string(signal.size()) +
                      " shorter than filter length " +
                      std::to_string(h.size()));
  for (double v : signal)
    if (!std::isfinite(v)) throw DomainError("dwt_forward: non-finite sample");

  DwtCoeffs out;
  out.original_length = signal.size();
  out.padded_length = padded_length_for(signal.size(), cfg.levels);

  std::vector<double> current = signal;
  current.resize(out.padded_length, signal.back());  // edge replication

  const std::vector<double> g = wavelet_filter(h);
  for (int level = 0; level < cfg.levels; ++level) {
    std::vector<double> approx, detail;
    analysis_step(current, h, g, approx, detail);
    out.details.push_back(std::move(detail));
    current = std::move(approx);
  }
  out.approx = std::move(current);
  return out;
}

std::vector<double> dwt_inverse(const DwtCoeffs& coeffs,
                                const WaveletConfig& cfg) {
  cfg.validate();
  if (static_cast<int>(coeffs.details.size()) != cfg.levels)
    throw FormatError("dwt_inverse: coefficient set has " +
                      std::to_string(coeffs.details.size()) +
                      " detail levels, config expects " +
                      std::to_string(cfg.levels));
  const auto& h = scaling_filter(cfg.order);
  const std::vector<double> g = wavelet_filter(h);

  std::vector<double> current = coeffs.approx;
  for (auto it = coeffs.details.rbegin(); it != coeffs.details.rend(); ++it) {
    if (it->size() != current.size())
      throw FormatError("dwt_inverse: malformed level sizes");
    current = synthesis_step(current, *it, h, g);
  }
  if (current.size() != coeffs.padded_length)
    throw FormatError("dwt_inverse: reconstructed length mismatch");
  current.resize(coeffs.original_length);
  return current;
}

ThresholdResult threshold_compress(const std::vector<double>& signal,
                                   const WaveletConfig& cfg) {
  const DwtCoeffs full = dwt_forward(signal, cfg);
  const std::vector<double> flat = full.flattened();

  ThresholdResult out;
  out.coeffs.total_count = flat.size();
  out.coeffs.original_length = full.original_length;
  out.coeffs.padded_length = full.padded_length;
  out.coeffs.level_sizes.push_back(full.approx.size());
  for (auto it = full.details.rbegin(); it != full.details.rend(); ++it)
    out.coeffs.level_sizes.push_back(it->size());

  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (std::abs(flat[i]) >= cfg.threshold && flat[i] != 0.0) {
      out.coeffs.retained_values.push_back(flat[i]);
      out.coeffs.retained_indices.push_back(i);
    }
  }
  out.cr_percent = compression_ratio(out.coeffs.retained_values.size(),
                                     out.coeffs.total_count);
  return out;
}

std::vector<double> sparse_reconstruct(const SparseCoeffs& sparse,
                                       const WaveletConfig& cfg) {
  std::vector<double> flat(sparse.total_count, 0.0);
  for (std::size_t i = 0; i < sparse.retained_values.size(); ++i) {
    if (sparse.retained_indices[i] >= flat.size())
      throw FormatError("sparse_reconstruct: retained index out of range");
    flat[sparse.retained_indices[i]] = sparse.retained_values[i];
  }

  DwtCoeffs coeffs;
  coeffs.original_length = sparse.original_length;
  coeffs.padded_length = sparse.padded_length;
  std::size_t pos = sparse.level_sizes.front();
  coeffs.approx.assign(flat.begin(), flat.begin() + pos);
  // level_sizes after approx are coarse-to-fine; details wants fine-first.
  std::vector<std::vector<double>> coarse_first;
  for (std::size_t l = 1; l < sparse.level_sizes.size(); ++l) {
    coarse_first.emplace_back(flat.begin() + pos,
                              flat.begin() + pos + sparse.level_sizes[l]);
    pos += sparse.level_sizes[l];
  }
  coeffs.details.assign(coarse_first.rbegin(), coarse_first.rend());
  return dwt_inverse(coeffs, cfg);
}

EvalReport dwt_codec_eval(const RealMatrix& signals, const WaveletConfig& cfg) {
  if (signals.cols() == 0) throw DomainError("dwt_codec_eval: empty batch");
  RealMatrix recon(signals.rows(), signals.cols());
  double cr_sum = 0.0;
  for (std::size_t j = 0; j < signals.cols(); ++j) {
    std::vector<double> sig(signals.rows());
    for (std::size_t i = 0; i < signals.rows(); ++i) sig[i] = signals(i, j);
    const ThresholdResult t = threshold_compress(sig, cfg);
    const std::vector<double> rec = sparse_reconstruct(t.coeffs, cfg);
    for (std::size_t i = 0; i < signals.rows(); ++i) recon(i, j) = rec[i];
    cr_sum += t.cr_percent;
  }
  EvalReport report;
  report.method = "dwt";
  report.cr_percent = cr_sum / static_cast<double>(signals.cols());
  report.prd_eeg = distortion_prd(signals, recon);
  report.prd_emg = report.prd_eeg;  // single-signal batch: same number
  report.config_echo = "dwt order=" + std::to_string(cfg.order) +
                       " levels=" + std::to_string(cfg.levels) +
                       " threshold=" + std::to_string(cfg.threshold);
  return report;
}

}  // namespace mmae
