// Command-line front end: train / compress / decompress / eval / classify /
// gradcheck / synth. Every run is driven by a declarative key=value config
// (CLI11 config file) with command-line flags taking precedence, and every
// output artifact embeds the configuration that produced it.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "mmae/codec_io.hpp"
#include "mmae/data_io.hpp"
#include "mmae/dwt.hpp"
#include "mmae/errors.hpp"
#include "mmae/metrics.hpp"
#include "mmae/multimodal.hpp"
#include "mmae/nn_core.hpp"

namespace fs = std::filesystem;
using namespace mmae;

namespace {

// Exit codes: 0 success, 2 config, 3 data, 4 training, 5 format.
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitTraining = 4;
constexpr int kExitFormat = 5;

// ---------------------------------------------------------------------------
// Shared option bundles

struct DataOpts {
  std::string source = "synth";  // "synth" or "deap"
  std::string deap_dir;
  std::size_t eeg_channel = 0;
  std::size_t emg_channel = 1;
  std::size_t segment_dim = 896;
  // synth source
  std::size_t synth_samples = 1000;
  std::size_t synth_latent = 4;
  double synth_noise = 0.1;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--data", source, "Data source: synth or deap")
        ->check(CLI::IsMember({"synth", "deap"}))
        ->capture_default_str();
    cmd.add_option("--deap-dir", deap_dir,
                   "Directory of .deapc containers (data=deap)");
    cmd.add_option("--eeg-channel", eeg_channel, "EEG channel index")
        ->capture_default_str();
    cmd.add_option("--emg-channel", emg_channel, "EMG channel index")
        ->capture_default_str();
    cmd.add_option("--segment-dim", segment_dim, "Samples per segment")
        ->capture_default_str();
    cmd.add_option("--synth-samples", synth_samples,
                   "Synthetic dataset size (data=synth)")
        ->capture_default_str();
    cmd.add_option("--synth-latent", synth_latent,
                   "Synthetic latent dimension")
        ->capture_default_str();
    cmd.add_option("--synth-noise", synth_noise, "Synthetic noise level")
        ->capture_default_str();
  }

  SegmentedDataset load(std::uint64_t seed) const {
    if (source == "synth") {
      SynthSpec spec;
      spec.latent_dim = synth_latent;
      spec.noise = synth_noise;
      spec.samples = synth_samples;
      spec.seed = seed;
      spec.segment_dim = segment_dim;
      return synth_multimodal(spec);
    }
    if (deap_dir.empty())
      throw DomainError("data=deap requires --deap-dir");
    const std::vector<TrialRecord> records = load_deap(deap_dir);
    return segment_normalize(records, eeg_channel, emg_channel, segment_dim);
  }
};

struct TrainOpts {
  double lr = 0.01;
  std::size_t epochs = 100;
  std::size_t pretrain_epochs = 50;
  std::size_t batch = 64;
  double lambda = 1e-4;
  double train_fraction = 0.75;
  std::uint64_t seed = 0;
  bool seed_set = false;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--lr", lr, "Learning rate")->capture_default_str();
    cmd.add_option("--epochs", epochs, "Joint/fine-tune training epochs")
        ->capture_default_str();
    cmd.add_option("--pretrain-epochs", pretrain_epochs,
                   "Greedy layer-wise pretraining epochs")
        ->capture_default_str();
    cmd.add_option("--batch", batch, "Mini-batch size")->capture_default_str();
    cmd.add_option("--lambda", lambda, "Weight decay strength")
        ->capture_default_str();
    cmd.add_option("--train-frac", train_fraction,
                   "Training fraction of the split")
        ->capture_default_str();
    cmd.add_option("--seed", seed, "Root random seed (mandatory)")
        ->required();
  }

  TrainConfig config(std::size_t n_epochs) const {
    TrainConfig cfg;
    cfg.lr = lr;
    cfg.epochs = n_epochs;
    cfg.batch_size = batch;
    cfg.lambda = lambda;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
  }
};

int criterion_index(const std::string& name) {
  if (name == "valence") return 0;
  if (name == "arousal") return 1;
  if (name == "dominance") return 2;
  if (name == "liking") return 3;
  throw DomainError("unknown criterion '" + name +
                    "' (valence|arousal|dominance|liking)");
}

// ---------------------------------------------------------------------------
// Run-directory lock: at most one command writes a given output dir at once.

class RunLock {
 public:
  explicit RunLock(const fs::path& dir) : lock_path_(dir / ".mmae.lock") {
    fs::create_directories(dir);
    std::ofstream probe(lock_path_, std::ios::out | std::ios::app);
    if (fs::exists(lock_path_) && fs::file_size(lock_path_) > 0)
      throw DomainError("output dir " + dir.string() +
                        " is locked by another run (" + lock_path_.string() +
                        "); remove the lock if that run is dead");
    std::ofstream out(lock_path_, std::ios::trunc);
    out << "pid " << ::getpid() << "\n";
    held_ = true;
  }
  ~RunLock() {
    if (held_) {
      std::error_code ec;
      fs::remove(lock_path_, ec);
    }
  }
  RunLock(const RunLock&) = delete;
  RunLock& operator=(const RunLock&) = delete;

 private:
  fs::path lock_path_;
  bool held_ = false;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
  if (!out) throw FormatError("write failed: " + path.string());
}

std::string matrix_to_tsv(const RealMatrix& m) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << '\t';
      os << m(i, j);
    }
    os << '\n';
  }
  return os.str();
}

MultimodalBatch zero_modality(const MultimodalBatch& batch, bool zero_eeg) {
  MultimodalBatch out = batch;
  auto& block = zero_eeg ? out.eeg : out.emg;
  for (double& v : block.values()) v = 0.0;
  out.presence.assign(batch.samples(), Presence{!zero_eeg, zero_eeg});
  return out;
}

// Pretrains both pathways, fuses them, and trains the joint model on the
// modality-dropout augmented data. The shared pipeline behind train,
// classify and the unimodal baselines.
MultimodalModel train_pipeline(const SegmentedDataset& train,
                               std::size_t hidden, std::size_t joint,
                               const TrainOpts& topts,
                               std::vector<double>* losses = nullptr) {
  const TrainConfig pre_cfg = topts.config(topts.pretrain_epochs);
  const TrainConfig cfg = topts.config(topts.epochs);

  if (joint > hidden)
    std::cerr << "warning: joint dim " << joint << " > pathway hidden dim "
              << hidden << " (expansion, not compression)\n";

  const std::vector<std::size_t> dims_e = {train.eeg.rows(), hidden};
  const std::vector<std::size_t> dims_m = {train.emg.rows(), hidden};
  StackedEncoder se = greedy_pretrain(dims_e, train.eeg, pre_cfg);
  StackedEncoder sm = greedy_pretrain(dims_m, train.emg, pre_cfg);
  Rng joint_rng = Rng(cfg.seed).derive("cli.joint");
  MultimodalModel model = make_multimodal(std::move(se), std::move(sm), joint,
                                          cfg.lambda, joint_rng);
  model.pretrained = true;
  std::vector<double> history = train_multimodal(model, train.batch(), cfg);
  if (losses) *losses = std::move(history);
  return model;
}

std::string echo_common(const std::string& cmd, const DataOpts& dopts,
                        const TrainOpts& topts, std::size_t hidden,
                        std::size_t joint) {
  std::ostringstream os;
  os << "cmd=" << cmd << " data=" << dopts.source;
  if (dopts.source == "deap") os << " deap_dir=" << dopts.deap_dir;
  os << " segment_dim=" << dopts.segment_dim << " hidden=" << hidden
     << " joint=" << joint << " lr=" << topts.lr << " epochs=" << topts.epochs
     << " pretrain_epochs=" << topts.pretrain_epochs
     << " batch=" << topts.batch << " lambda=" << topts.lambda
     << " train_frac=" << topts.train_fraction << " seed=" << topts.seed;
  return os.str();
}

// ---------------------------------------------------------------------------
// train

int cmd_train(const DataOpts& dopts, const TrainOpts& topts,
              std::size_t hidden, std::size_t joint, bool do_fine_tune,
              const std::string& criterion, const std::string& out_dir) {
  RunLock lock{out_dir};
  const SegmentedDataset ds = dopts.load(topts.seed);
  const SplitDataset split =
      train_test_split(ds, topts.train_fraction, topts.seed);

  std::vector<double> losses;
  MultimodalModel model =
      train_pipeline(split.train, hidden, joint, topts, &losses);

  std::vector<double> ft_losses;
  if (do_fine_tune) {
    attach_head(model, {"low", "high"});
    const int crit = criterion_index(criterion);
    ft_losses = fine_tune(model, split.train.batch(),
                          split.train.labels[crit], topts.config(topts.epochs));
  }

  const std::string echo =
      echo_common("train", dopts, topts, hidden, joint) +
      (do_fine_tune ? " fine_tune=1 criterion=" + criterion : " fine_tune=0");
  const fs::path model_path = fs::path(out_dir) / "model.mmae";
  save_model(model, model_path.string(), echo);

  std::ostringstream log;
  log.precision(17);
  log << "phase\tepoch\tobjective\n";
  for (std::size_t e = 0; e < losses.size(); ++e)
    log << "joint\t" << e + 1 << '\t' << losses[e] << '\n';
  for (std::size_t e = 0; e < ft_losses.size(); ++e)
    log << "fine_tune\t" << e + 1 << '\t' << ft_losses[e] << '\n';
  write_text(fs::path(out_dir) / "train_log.tsv", log.str());

  // Held-out report.
  const MultimodalBatch test = split.test.batch();
  const RealMatrix z = joint_forward(model, test);
  const auto [re, rm] = multimodal_decode(model, z);
  std::cout.precision(10);
  std::cout << "model " << model_path.string() << "\n"
            << "fingerprint " << model_fingerprint(model) << "\n"
            << "cr " << compression_ratio(joint, ds.eeg.rows()) << "\n"
            << "test_prd_eeg " << distortion_prd(test.eeg, re) << "\n"
            << "test_prd_emg " << distortion_prd(test.emg, rm) << "\n";
  if (do_fine_tune) {
    const ClassifyResult res = classify(model, test);
    const int crit = criterion_index(criterion);
    std::cout << "test_accuracy "
              << accuracy(res.labels, split.test.labels[crit]) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// compress / decompress

int cmd_compress(const std::string& model_path, const DataOpts& dopts,
                 std::uint64_t seed, const std::string& out_file) {
  const MultimodalModel model = load_model(model_path);
  const SegmentedDataset ds = dopts.load(seed);
  const CodeBlock code = encode(model, ds.batch());
  save_codes(code, out_file);
  std::cout.precision(10);
  std::cout << "codes " << out_file << "\n"
            << "samples " << code.z.cols() << "\n"
            << "cr " << compression_ratio(model.joint_dim(), ds.eeg.rows())
            << "\n";
  return 0;
}

int cmd_decompress(const std::string& model_path, const std::string& codes_path,
                   const std::optional<DataOpts>& reference, std::uint64_t seed,
                   const std::string& out_dir) {
  RunLock lock{out_dir};
  const MultimodalModel model = load_model(model_path);
  const CodeBlock code = load_codes(codes_path);
  const auto [re, rm] = decode(model, code);
  write_text(fs::path(out_dir) / "recon_eeg.tsv", matrix_to_tsv(re));
  write_text(fs::path(out_dir) / "recon_emg.tsv", matrix_to_tsv(rm));
  std::cout << "recon_eeg " << (fs::path(out_dir) / "recon_eeg.tsv").string()
            << " (" << re.rows() << "x" << re.cols() << ")\n"
            << "recon_emg " << (fs::path(out_dir) / "recon_emg.tsv").string()
            << " (" << rm.rows() << "x" << rm.cols() << ")\n";
  if (reference) {
    const SegmentedDataset ds = reference->load(seed);
    std::cout.precision(10);
    std::cout << "prd_eeg " << distortion_prd(ds.eeg, re) << "\n"
              << "prd_emg " << distortion_prd(ds.emg, rm) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// eval

std::vector<ArchRow> parse_rows(const std::vector<std::string>& row_specs) {
  std::vector<ArchRow> rows;
  for (const std::string& spec : row_specs) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
      throw DomainError("row spec '" + spec + "' must be hidden:joint");
    ArchRow row;
    row.pathway_hidden = std::stoull(spec.substr(0, colon));
    row.joint_dim = std::stoull(spec.substr(colon + 1));
    rows.push_back(row);
  }
  return rows;
}

int cmd_eval(const DataOpts& dopts, const TrainOpts& topts,
             const std::vector<std::string>& row_specs,
             const std::vector<double>& thresholds,
             const std::vector<double>& fractions, int dwt_order,
             int dwt_levels, const std::string& out_dir) {
  RunLock lock{out_dir};
  const SegmentedDataset ds = dopts.load(topts.seed);
  const SplitDataset split =
      train_test_split(ds, topts.train_fraction, topts.seed);

  std::vector<Curve> curves;
  if (!row_specs.empty()) {
    const std::vector<ArchRow> rows = parse_rows(row_specs);
    const TrainConfig cfg = topts.config(topts.epochs);
    std::vector<Curve> ae = build_ae_curve(rows, split.train.batch(),
                                           split.test.batch(), cfg);
    curves.insert(curves.end(), ae.begin(), ae.end());
  }
  if (!thresholds.empty()) {
    std::vector<Curve> dwt =
        build_dwt_curve(thresholds, split.test.batch(), dwt_order, dwt_levels);
    curves.insert(curves.end(), dwt.begin(), dwt.end());
  }
  if (curves.empty())
    throw DomainError("eval: need at least one --row or --threshold");

  write_text(fs::path(out_dir) / "curves.tsv", curves_to_tsv(curves));

  std::ostringstream reports;
  reports.precision(17);
  reports << "method\tmodality\tcr\tprd\tconfig\n";
  for (const Curve& c : curves)
    for (std::size_t i = 0; i < c.points.size(); ++i)
      reports << c.method << '\t' << c.modality << '\t' << c.points[i].cr
              << '\t' << c.points[i].prd << '\t'
              << (i < c.reports.size() ? c.reports[i].config_echo : "-")
              << '\n';
  write_text(fs::path(out_dir) / "reports.tsv", reports.str());

  // Partition sweep: per-sample PRD distribution per training fraction.
  if (!fractions.empty()) {
    if (row_specs.empty())
      throw DomainError("eval: partition sweep needs at least one --row");
    const std::vector<ArchRow> rows = parse_rows(row_specs);
    std::ostringstream sweep;
    sweep.precision(17);
    sweep << "fraction\tmodality\tsample\tprd\n";
    for (double frac : fractions) {
      const SplitDataset part = train_test_split(ds, frac, topts.seed);
      TrainOpts sweep_opts = topts;
      sweep_opts.train_fraction = frac;
      MultimodalModel model = train_pipeline(
          part.train, rows[0].pathway_hidden, rows[0].joint_dim, sweep_opts);
      const MultimodalBatch test = part.test.batch();
      const auto [re, rm] = multimodal_decode(model, joint_forward(model, test));
      const std::vector<double> prd_e = distortion_prd_per_sample(test.eeg, re);
      const std::vector<double> prd_m = distortion_prd_per_sample(test.emg, rm);
      for (std::size_t j = 0; j < prd_e.size(); ++j)
        sweep << frac << "\teeg\t" << j << '\t' << prd_e[j] << '\n';
      for (std::size_t j = 0; j < prd_m.size(); ++j)
        sweep << frac << "\temg\t" << j << '\t' << prd_m[j] << '\n';
    }
    write_text(fs::path(out_dir) / "partition_sweep.tsv", sweep.str());
  }

  std::cout << "curves " << (fs::path(out_dir) / "curves.tsv").string() << "\n"
            << "reports " << (fs::path(out_dir) / "reports.tsv").string()
            << "\n";
  if (!fractions.empty())
    std::cout << "partition_sweep "
              << (fs::path(out_dir) / "partition_sweep.tsv").string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// classify

double run_classifier(const SplitDataset& split, std::size_t hidden,
                      std::size_t joint, const TrainOpts& topts, int crit,
                      const std::string& mode) {
  // mode: "multimodal", "eeg" (EMG zeroed), or "emg" (EEG zeroed). The
  // unimodal baselines run through the identical pipeline and budget with
  // the other modality blanked, so the comparison is architecture-fair.
  SegmentedDataset train = split.train;
  MultimodalBatch test = split.test.batch();
  if (mode == "eeg") {
    for (double& v : train.emg.values()) v = 0.0;
    test = zero_modality(test, /*zero_eeg=*/false);
  } else if (mode == "emg") {
    for (double& v : train.eeg.values()) v = 0.0;
    test = zero_modality(test, /*zero_eeg=*/true);
  }
  MultimodalModel model = train_pipeline(train, hidden, joint, topts);
  attach_head(model, {"low", "high"});
  fine_tune(model, train.batch(), train.labels[crit],
            topts.config(topts.epochs));
  const ClassifyResult res = classify(model, test);
  return accuracy(res.labels, split.test.labels[crit]);
}

int cmd_classify(const DataOpts& dopts, const TrainOpts& topts,
                 std::size_t hidden, std::size_t joint,
                 const std::vector<std::string>& criteria, bool baselines,
                 const std::string& out_dir) {
  RunLock lock{out_dir};
  const SegmentedDataset ds = dopts.load(topts.seed);
  const SplitDataset split =
      train_test_split(ds, topts.train_fraction, topts.seed);

  std::ostringstream report;
  report.precision(10);
  report << "criterion\tmodel\taccuracy\n";
  for (const std::string& criterion : criteria) {
    const int crit = criterion_index(criterion);
    const double multi =
        run_classifier(split, hidden, joint, topts, crit, "multimodal");
    report << criterion << "\tmultimodal\t" << multi << '\n';
    std::cout << criterion << " multimodal " << multi << "\n";
    if (baselines) {
      for (const std::string mode : {"eeg", "emg"}) {
        const double acc =
            run_classifier(split, hidden, joint, topts, crit, mode);
        report << criterion << "\tunimodal_" << mode << '\t' << acc << '\n';
        std::cout << criterion << " unimodal_" << mode << " " << acc << "\n";
      }
    }
  }
  write_text(fs::path(out_dir) / "accuracy.tsv", report.str());
  return 0;
}

// ---------------------------------------------------------------------------
// gradcheck

int cmd_gradcheck(std::size_t num_seeds, bool perturb) {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= num_seeds; ++seed) {
    Rng rng(seed);
    Rng re = rng.derive("gc.e");
    Rng rm = rng.derive("gc.m");
    StackedEncoder se, sm;
    se.layers.push_back(make_autoencoder(4, 3, Activation::Sigmoid, 0.01, re));
    se.layers.push_back(make_autoencoder(3, 3, Activation::Tanh, 0.01, re));
    sm.layers.push_back(make_autoencoder(5, 3, Activation::Sigmoid, 0.01, rm));
    Rng rj = rng.derive("gc.j");
    MultimodalModel model =
        make_multimodal(std::move(se), std::move(sm), 2, 0.01, rj);
    attach_head(model, {"low", "high"});
    Rng rh = rng.derive("gc.h");
    for (double& v : model.head->W.values()) v = rh.next_uniform(-0.5, 0.5);

    MultimodalBatch batch;
    batch.eeg = RealMatrix(4, 3);
    batch.emg = RealMatrix(5, 3);
    Rng rd = rng.derive("gc.data");
    for (double& v : batch.eeg.values()) v = rd.next_uniform(0.0, 1.0);
    for (double& v : batch.emg.values()) v = rd.next_uniform(0.0, 1.0);
    const std::vector<int> labels = {0, 1, 0};

    std::vector<double> analytic = flatten_gradient(
        model,
        multimodal_gradient(model, batch, batch.eeg, batch.emg, &labels));
    if (perturb && !analytic.empty()) analytic[0] += 0.5;  // test hook
    auto obj = [&] {
      return multimodal_objective(model, batch, batch.eeg, batch.emg, &labels);
    };
    const std::vector<double> fd =
        finite_difference_grad(obj, parameter_views(model), 1e-5);

    double max_rel = 0.0;
    for (std::size_t i = 0; i < fd.size(); ++i) {
      // The floor absorbs finite-difference round-off (~1e-11 absolute at
      // h=1e-5) on coordinates whose true gradient is essentially zero.
      const double scale =
          std::max({std::abs(analytic[i]), std::abs(fd[i]), 1e-4});
      max_rel = std::max(max_rel, std::abs(analytic[i] - fd[i]) / scale);
    }
    worst = std::max(worst, max_rel);
    std::printf("seed %llu: max rel error %.3e\n",
                static_cast<unsigned long long>(seed), max_rel);
  }
  std::printf("worst: %.3e (tolerance 1e-6)\n", worst);
  if (worst > 1e-6) {
    std::fprintf(stderr, "gradcheck FAILED\n");
    return kExitTraining;
  }
  std::printf("gradcheck passed\n");
  return 0;
}

// ---------------------------------------------------------------------------
// synth

int cmd_synth(std::size_t participants, std::size_t videos, std::uint64_t seed,
              const std::string& out_dir) {
  RunLock lock{out_dir};
  const std::vector<TrialRecord> records =
      synth_trials(participants, videos, seed);
  write_deap_container(records, out_dir);
  std::cout << "wrote " << participants << " containers ("
            << records.size() << " trials) to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multimodal autoencoder codec for two-modality biosignals"};
  app.set_config("--config", "",
                 "key=value config file with one [subcommand] section; "
                 "command-line flags override config values");
  app.require_subcommand(1);

  // --- train ---------------------------------------------------------------
  auto* train = app.add_subcommand("train", "Pretrain, fuse and train a model");
  DataOpts train_data;
  TrainOpts train_topts;
  std::size_t hidden = 380, joint = 89;
  bool do_fine_tune = false;
  std::string criterion = "dominance";
  std::string train_out = "run";
  train_data.add_to(*train);
  train_topts.add_to(*train);
  train->add_option("--hidden", hidden, "Pathway hidden dimension")
      ->capture_default_str();
  train->add_option("--joint", joint, "Joint (code) dimension")
      ->capture_default_str();
  train->add_flag("--fine-tune", do_fine_tune,
                  "Attach a softmax head and fine-tune");
  train->add_option("--criterion", criterion,
                    "Label criterion for fine-tuning")
      ->capture_default_str();
  train->add_option("--out", train_out, "Output directory")
      ->capture_default_str();

  // --- compress ------------------------------------------------------------
  auto* compress = app.add_subcommand("compress", "Encode data to a .mmz file");
  DataOpts comp_data;
  std::string comp_model, comp_out = "codes.mmz";
  std::uint64_t comp_seed = 0;
  comp_data.add_to(*compress);
  compress->add_option("--model", comp_model, "Trained .mmae artifact")
      ->required();
  compress->add_option("--seed", comp_seed, "Data seed (synth source)")
      ->required();
  compress->add_option("--out", comp_out, "Output .mmz path")
      ->capture_default_str();

  // --- decompress ----------------------------------------------------------
  auto* decompress =
      app.add_subcommand("decompress", "Reconstruct signals from a .mmz file");
  DataOpts dec_data;
  std::string dec_model, dec_codes, dec_out = "recon";
  std::uint64_t dec_seed = 0;
  bool dec_have_ref = false;
  dec_data.add_to(*decompress);
  decompress->add_option("--model", dec_model, "Trained .mmae artifact")
      ->required();
  decompress->add_option("--codes", dec_codes, "Input .mmz path")->required();
  decompress->add_option("--seed", dec_seed, "Reference data seed")
      ->capture_default_str();
  decompress->add_flag("--reference", dec_have_ref,
                       "Reload the data options as reference and print PRD");
  decompress->add_option("--out", dec_out, "Output directory")
      ->capture_default_str();

  // --- eval ----------------------------------------------------------------
  auto* eval = app.add_subcommand(
      "eval", "CR/PRD curves for the autoencoder and the DWT baseline");
  DataOpts eval_data;
  TrainOpts eval_topts;
  std::vector<std::string> eval_rows;
  std::vector<double> eval_thresholds, eval_fractions;
  int dwt_order = 4, dwt_levels = 5;
  std::string eval_out = "eval";
  eval_data.add_to(*eval);
  eval_topts.add_to(*eval);
  eval->add_option("--row", eval_rows,
                   "Architecture row hidden:joint (repeatable)");
  eval->add_option("--threshold", eval_thresholds,
                   "DWT hard threshold (repeatable)");
  eval->add_option("--fraction", eval_fractions,
                   "Partition-sweep training fraction (repeatable)");
  eval->add_option("--dwt-order", dwt_order, "Daubechies order (1-6)")
      ->capture_default_str();
  eval->add_option("--dwt-levels", dwt_levels, "DWT decomposition levels")
      ->capture_default_str();
  eval->add_option("--out", eval_out, "Output directory")
      ->capture_default_str();

  // --- classify --------------------------------------------------------------
  auto* classify_cmd = app.add_subcommand(
      "classify", "Fine-tuned classification accuracy report");
  DataOpts cls_data;
  TrainOpts cls_topts;
  std::size_t cls_hidden = 380, cls_joint = 89;
  std::vector<std::string> cls_criteria = {"dominance"};
  bool cls_baselines = false;
  std::string cls_out = "classify";
  cls_data.add_to(*classify_cmd);
  cls_topts.add_to(*classify_cmd);
  classify_cmd->add_option("--hidden", cls_hidden, "Pathway hidden dimension")
      ->capture_default_str();
  classify_cmd->add_option("--joint", cls_joint, "Joint (code) dimension")
      ->capture_default_str();
  classify_cmd->add_option("--criterion", cls_criteria,
                           "Label criterion (repeatable)");
  classify_cmd->add_flag("--baselines", cls_baselines,
                         "Also train unimodal baselines (same budget)");
  classify_cmd->add_option("--out", cls_out, "Output directory")
      ->capture_default_str();

  // --- gradcheck -------------------------------------------------------------
  auto* gradcheck =
      app.add_subcommand("gradcheck", "Finite-difference gradient diagnostic");
  std::size_t gc_seeds = 20;
  bool gc_perturb = false;
  gradcheck->add_option("--seeds", gc_seeds, "Number of seeded configurations")
      ->capture_default_str();
  gradcheck
      ->add_flag("--perturb", gc_perturb,
                 "Deliberately corrupt one gradient entry (harness sanity)")
      ->group("");  // hidden test hook

  // --- synth -------------------------------------------------------------
  auto* synth = app.add_subcommand(
      "synth", "Write a synthetic dataset in the container layout");
  std::size_t sy_participants = 2, sy_videos = 5;
  std::uint64_t sy_seed = 0;
  std::string sy_out = "synth_data";
  synth->add_option("--participants", sy_participants, "Participant count")
      ->capture_default_str();
  synth->add_option("--videos", sy_videos, "Videos (trials) per participant")
      ->capture_default_str();
  synth->add_option("--seed", sy_seed, "Root seed")->required();
  synth->add_option("--out", sy_out, "Output directory")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (*train)
      return cmd_train(train_data, train_topts, hidden, joint, do_fine_tune,
                       criterion, train_out);
    if (*compress) return cmd_compress(comp_model, comp_data, comp_seed, comp_out);
    if (*decompress)
      return cmd_decompress(
          dec_model, dec_codes,
          dec_have_ref ? std::optional<DataOpts>(dec_data) : std::nullopt,
          dec_seed, dec_out);
    if (*eval)
      return cmd_eval(eval_data, eval_topts, eval_rows, eval_thresholds,
                      eval_fractions, dwt_order, dwt_levels, eval_out);
    if (*classify_cmd)
      return cmd_classify(cls_data, cls_topts, cls_hidden, cls_joint,
                          cls_criteria, cls_baselines, cls_out);
    if (*gradcheck) return cmd_gradcheck(gc_seeds, gc_perturb);
    if (*synth) return cmd_synth(sy_participants, sy_videos, sy_seed, sy_out);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const TrainingError& e) {
    std::cerr << "training error: " << e.what() << "\n";
    return kExitTraining;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const std::exception& e) {  // Domain/Shape/config errors
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
