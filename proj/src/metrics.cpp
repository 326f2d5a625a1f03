#include "mmae/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mmae/dwt.hpp"
#include "mmae/errors.hpp"

namespace mmae {

double compression_ratio(std::size_t m, std::size_t n) {
  if (n == 0) throw DomainError("compression_ratio: original length is zero");
  if (m > n)
    throw DomainError("compression_ratio: compressed length " +
                      std::to_string(m) + " exceeds original " +
                      std::to_string(n));
  return (1.0 - static_cast<double>(m) / static_cast<double>(n)) * 100.0;
}

double distortion_prd(const RealMatrix& x, const RealMatrix& r) {
  if (!x.same_shape(r))
    throw ShapeError("distortion_prd: shape mismatch " + shape_str(x) +
                     " vs " + shape_str(r));
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = r.values()[i] - x.values()[i];
    num += d * d;
    den += x.values()[i] * x.values()[i];
  }
  if (den == 0.0)
    throw DomainError("distortion_prd: original signal has zero norm");
  return std::sqrt(num / den) * 100.0;
}

std::vector<double> distortion_prd_per_sample(const RealMatrix& x,
                                              const RealMatrix& r) {
  if (!x.same_shape(r))
    throw ShapeError("distortion_prd_per_sample: shape mismatch " +
                     shape_str(x) + " vs " + shape_str(r));
  std::vector<double> out(x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      const double d = r(i, j) - x(i, j);
      num += d * d;
      den += x(i, j) * x(i, j);
    }
    if (den == 0.0)
      throw DomainError("distortion_prd_per_sample: zero-norm sample " +
                        std::to_string(j));
    out[j] = std::sqrt(num / den) * 100.0;
  }
  return out;
}

double accuracy(const std::vector<int>& predicted,
                const std::vector<int>& truth) {
  if (predicted.size() != truth.size())
    throw ShapeError("accuracy: " + std::to_string(predicted.size()) +
                     " predictions vs " + std::to_string(truth.size()) +
                     " labels");
  if (predicted.empty()) throw DomainError("accuracy: empty input");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i)
    if (predicted[i] == truth[i]) ++correct;
  return 100.0 * static_cast<double>(correct) /
         static_cast<double>(predicted.size());
}

std::vector<Curve> build_ae_curve(const std::vector<ArchRow>& rows,
                                  const MultimodalBatch& train,
                                  const MultimodalBatch& test,
                                  const TrainConfig& cfg) {
  if (rows.empty()) throw DomainError("build_ae_curve: no architecture rows");
  Curve eeg_curve{"mmae", "eeg", {}, {}};
  Curve emg_curve{"mmae", "emg", {}, {}};

  struct Point {
    double cr;
    double prd_eeg;
    double prd_emg;
    EvalReport report;
  };
  std::vector<Point> points;

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ArchRow& row = rows[i];
    TrainConfig row_cfg = cfg;
    row_cfg.seed = cfg.seed + i;  // independent derived seed per config
    try {
      const std::vector<std::size_t> dims_e = {train.eeg.rows(),
                                               row.pathway_hidden};
      const std::vector<std::size_t> dims_m = {train.emg.rows(),
                                               row.pathway_hidden};
      StackedEncoder se = greedy_pretrain(dims_e, train.eeg, row_cfg);
      StackedEncoder sm = greedy_pretrain(dims_m, train.emg, row_cfg);
      Rng rng = Rng(row_cfg.seed).derive("curve.joint");
      MultimodalModel model = make_multimodal(std::move(se), std::move(sm),
                                              row.joint_dim, row_cfg.lambda,
                                              rng);
      model.pretrained = true;
      train_multimodal(model, train, row_cfg);

      const RealMatrix z = joint_forward(model, test);
      const auto [re, rm] = multimodal_decode(model, z);

      Point p;
      p.cr = compression_ratio(row.joint_dim, train.eeg.rows());
      p.prd_eeg = distortion_prd(test.eeg, re);
      p.prd_emg = distortion_prd(test.emg, rm);
      p.report.method = "mmae";
      p.report.cr_percent = p.cr;
      p.report.prd_eeg = p.prd_eeg;
      p.report.prd_emg = p.prd_emg;
      p.report.config_echo = "arch=" + std::to_string(row.pathway_hidden) +
                             "-" + std::to_string(row.joint_dim) +
                             " seed=" + std::to_string(row_cfg.seed);
      points.push_back(std::move(p));
    } catch (const TrainingError& e) {
      throw TrainingError("build_ae_curve: config " +
                          std::to_string(row.pathway_hidden) + "-" +
                          std::to_string(row.joint_dim) + ": " + e.what());
    }
  }

  std::sort(points.begin(), points.end(),
            [](const Point& a, const Point& b) { return a.cr < b.cr; });
  for (const auto& p : points) {
    eeg_curve.points.push_back({p.cr, p.prd_eeg});
    emg_curve.points.push_back({p.cr, p.prd_emg});
    eeg_curve.reports.push_back(p.report);
    emg_curve.reports.push_back(p.report);
  }
  return {eeg_curve, emg_curve};
}

std::vector<Curve> build_dwt_curve(const std::vector<double>& thresholds,
                                   const MultimodalBatch& test, int order,
                                   int levels) {
  Curve eeg_curve{"dwt", "eeg", {}, {}};
  Curve emg_curve{"dwt", "emg", {}, {}};

  struct Point {
    double cr;
    double prd;
    EvalReport report;
  };
  auto sweep = [&](const RealMatrix& data) {
    std::vector<Point> pts;
    for (double th : thresholds) {
      WaveletConfig cfg{order, levels, th};
      EvalReport rep = dwt_codec_eval(data, cfg);
      pts.push_back({rep.cr_percent, rep.prd_eeg, rep});
    }
    std::sort(pts.begin(), pts.end(),
              [](const Point& a, const Point& b) { return a.cr < b.cr; });
    return pts;
  };

  for (const auto& p : sweep(test.eeg)) {
    eeg_curve.points.push_back({p.cr, p.prd});
    eeg_curve.reports.push_back(p.report);
  }
  for (const auto& p : sweep(test.emg)) {
    emg_curve.points.push_back({p.cr, p.prd});
    emg_curve.reports.push_back(p.report);
  }
  return {eeg_curve, emg_curve};
}

std::string curves_to_tsv(const std::vector<Curve>& curves) {
  std::ostringstream os;
  os.precision(17);
  os << "method\tmodality\tcr\tprd\n";
  for (const auto& c : curves)
    for (const auto& p : c.points)
      os << c.method << '\t' << c.modality << '\t' << p.cr << '\t' << p.prd
         << '\n';
  return os.str();
}

std::vector<Curve> curves_from_tsv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "method\tmodality\tcr\tprd")
    throw FormatError("curves_from_tsv: bad header");
  std::vector<Curve> curves;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string method, modality, cr_s, prd_s;
    if (!std::getline(ls, method, '\t') || !std::getline(ls, modality, '\t') ||
        !std::getline(ls, cr_s, '\t') || !std::getline(ls, prd_s))
      throw FormatError("curves_from_tsv: malformed row: " + line);
    Curve* curve = nullptr;
    for (auto& c : curves)
      if (c.method == method && c.modality == modality) curve = &c;
    if (!curve) {
      curves.push_back({method, modality, {}, {}});
      curve = &curves.back();
    }
    curve->points.push_back({std::stod(cr_s), std::stod(prd_s)});
  }
  return curves;
}

}  // namespace mmae
