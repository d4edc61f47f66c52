// esn_affect: batch CLI for utterance-level valence/arousal estimation with
// an echo state network. Subcommands: synth, train, evaluate, cross-validate,
// predict. Every command is deterministic given its flags.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "esn/errors.hpp"
#include "esn/evaluation.hpp"
#include "esn/model_io.hpp"
#include "esn/text.hpp"

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  esn::EsnConfig esn;
  esn::SmoothingConfig smoothing;
  std::size_t folds = 5;
  std::string features_dir;
  std::string labels_path;
  std::string out_dir;
  std::string model_path;

  // synth
  std::size_t utterances = 100;
  std::size_t frames_min = 60;
  std::size_t frames_max = 120;
  double noise_sigma = 0.05;
};

void add_hyper_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--seed", cfg.esn.seed, "Random seed (reservoir and fold split)")
      ->capture_default_str();
  cmd->add_option("--reservoir-size", cfg.esn.reservoir_size, "Number of internal units")
      ->capture_default_str();
  cmd->add_option("--spectral-radius", cfg.esn.spectral_radius,
                  "Spectral radius of the recurrent matrix")
      ->capture_default_str();
  cmd->add_option("--ridge", cfg.esn.ridge_beta, "Ridge regression constant")
      ->capture_default_str();
  cmd->add_option("--leak", cfg.esn.leak_rate, "Leak rate in (0, 1]")
      ->capture_default_str();
  cmd->add_option("--input-scaling", cfg.esn.input_scaling, "Input weight scale")
      ->capture_default_str();
  cmd->add_option("--connectivity", cfg.esn.connectivity,
                  "Fraction of nonzero recurrent weights")
      ->capture_default_str();
  cmd->add_option("--washout", cfg.esn.washout,
                  "Frames discarded before harvesting (clamped per utterance)")
      ->capture_default_str();
  cmd->add_option("--smooth-window", cfg.smoothing.window,
                  "Moving-average window in frames")
      ->capture_default_str();
}

esn::LabeledCorpus load_corpus_checked(const RunConfig& cfg) {
  return esn::load_labeled_corpus(cfg.features_dir, cfg.labels_path);
}

void print_outcome(const char* what, const esn::EvalOutcome& o) {
  std::printf("%s n=%zu\n", what, o.n);
  std::printf("  arousal ccc=%s mse=%s\n", esn::fmt_double(o.arousal.ccc).c_str(),
              esn::fmt_double(o.arousal.mse).c_str());
  std::printf("  valence ccc=%s mse=%s\n", esn::fmt_double(o.valence.ccc).c_str(),
              esn::fmt_double(o.valence.mse).c_str());
}

// eval reports share the cross-validation format with k = 1 and the whole
// eval set as fold 0
esn::EvalReport single_eval_report(const esn::TrainedModel& model,
                                   const esn::LabeledCorpus& eval_set,
                                   const esn::EvalOutcome& outcome) {
  esn::EvalReport report;
  report.config = model.config;
  report.smoothing = model.smoothing;
  report.k = 1;
  report.split_seed = model.config.seed;
  report.input_dim = esn::kNumChannels;
  esn::FoldResult fold;
  fold.fold = 0;
  fold.n_utterances = outcome.n;
  fold.arousal = outcome.arousal;
  fold.valence = outcome.valence;
  for (const auto& u : eval_set) fold.members.push_back(u.series.id);
  fold.norm_fitted_on = model.normalization.fitted_on;
  report.per_fold.push_back(std::move(fold));
  report.aggregate = outcome;
  return report;
}

int cmd_synth(const RunConfig& cfg) {
  auto corpus = esn::generate_synthetic_corpus(cfg.utterances, cfg.frames_min,
                                               cfg.frames_max, cfg.esn.seed,
                                               cfg.noise_sigma);
  const fs::path out(cfg.out_dir);
  const fs::path features = out / "features";
  for (const auto& s : corpus.series) {
    esn::write_utterance(features / (s.id + ".csv"), s);
  }
  esn::write_labels(out / "labels.csv", corpus.labels);
  std::printf("wrote %zu utterances to %s\n", corpus.series.size(),
              features.string().c_str());
  std::printf("wrote labels to %s\n", (out / "labels.csv").string().c_str());
  return 0;
}

int cmd_train(const RunConfig& cfg) {
  const auto corpus = load_corpus_checked(cfg);
  const auto model = esn::train_pipeline(corpus, cfg.esn, cfg.smoothing);
  const fs::path model_path = fs::path(cfg.out_dir) / "model.esn";
  esn::save_model(model_path, model);

  const auto outcome = esn::evaluate_pipeline(model, corpus);
  print_outcome("train", outcome);
  std::printf("wrote model to %s\n", model_path.string().c_str());
  return 0;
}

int cmd_evaluate(const RunConfig& cfg) {
  const auto model = esn::load_model(cfg.model_path);
  const auto corpus = load_corpus_checked(cfg);
  const auto outcome = esn::evaluate_pipeline(model, corpus);

  const auto report = single_eval_report(model, corpus, outcome);
  const fs::path report_path = fs::path(cfg.out_dir) / "eval_report.txt";
  esn::write_file_atomic(report_path, esn::report_to_string(report));

  print_outcome("eval", outcome);
  std::printf("wrote report to %s\n", report_path.string().c_str());
  return 0;
}

int cmd_cross_validate(const RunConfig& cfg) {
  const auto corpus = load_corpus_checked(cfg);
  const auto report =
      esn::cross_validate(corpus, cfg.esn, cfg.smoothing, cfg.folds, cfg.esn.seed);

  const fs::path report_path = fs::path(cfg.out_dir) / "cv_report.txt";
  esn::write_file_atomic(report_path, esn::report_to_string(report));

  for (const auto& fold : report.per_fold) {
    std::printf("fold %zu n=%zu ccc_arousal=%s ccc_valence=%s\n", fold.fold,
                fold.n_utterances, esn::fmt_double(fold.arousal.ccc).c_str(),
                esn::fmt_double(fold.valence.ccc).c_str());
  }
  print_outcome("aggregate", report.aggregate);
  std::printf("wrote report to %s\n", report_path.string().c_str());
  return 0;
}

int cmd_predict(const RunConfig& cfg) {
  const auto model = esn::load_model(cfg.model_path);
  const auto corpus = esn::load_corpus(cfg.features_dir);

  std::vector<esn::LabelRecord> predictions;
  predictions.reserve(corpus.size());
  for (const auto& s : corpus) {
    const auto out = esn::predict_utterance(model, s);
    predictions.push_back({s.id, out[0], out[1]});
  }
  const fs::path pred_path = fs::path(cfg.out_dir) / "predictions.csv";
  esn::write_labels(pred_path, predictions);
  std::printf("wrote %zu predictions to %s\n", predictions.size(),
              pred_path.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Echo-state-network toolkit for utterance-level valence/arousal "
               "regression on facial action unit time series"};
  app.require_subcommand(1);
  // options come from an INI file's [<subcommand>] section unless given on
  // the command line; flags always win
  app.set_config("--config", "", "Read options from an INI file (flags win)");

  RunConfig cfg;

  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic benchmark corpus");
  synth->add_option("--out", cfg.out_dir, "Output directory")->required();
  synth->add_option("--utterances", cfg.utterances, "Number of utterances")
      ->capture_default_str();
  synth->add_option("--frames-min", cfg.frames_min, "Minimum frames per utterance")
      ->capture_default_str();
  synth->add_option("--frames-max", cfg.frames_max, "Maximum frames per utterance")
      ->capture_default_str();
  synth->add_option("--noise-sigma", cfg.noise_sigma, "Per-frame noise level")
      ->capture_default_str();
  synth->add_option("--seed", cfg.esn.seed, "Random seed")->capture_default_str();

  CLI::App* train = app.add_subcommand("train", "Train a model on a labeled corpus");
  train->add_option("--features", cfg.features_dir, "Directory of <id>.csv feature files")
      ->required();
  train->add_option("--labels", cfg.labels_path, "labels.csv path")->required();
  train->add_option("--out", cfg.out_dir, "Output directory for model.esn")->required();
  add_hyper_options(train, cfg);

  CLI::App* evaluate = app.add_subcommand("evaluate", "Evaluate a model on a labeled corpus");
  evaluate->add_option("--model", cfg.model_path, "model.esn path")->required();
  evaluate->add_option("--features", cfg.features_dir, "Directory of feature files")
      ->required();
  evaluate->add_option("--labels", cfg.labels_path, "labels.csv path")->required();
  evaluate->add_option("--out", cfg.out_dir, "Output directory for eval_report.txt")
      ->required();

  CLI::App* cv = app.add_subcommand("cross-validate", "k-fold cross-validation");
  cv->add_option("--features", cfg.features_dir, "Directory of feature files")->required();
  cv->add_option("--labels", cfg.labels_path, "labels.csv path")->required();
  cv->add_option("--out", cfg.out_dir, "Output directory for cv_report.txt")->required();
  cv->add_option("--folds", cfg.folds, "Number of folds")->capture_default_str();
  add_hyper_options(cv, cfg);

  CLI::App* predict = app.add_subcommand("predict", "Predict labels for unlabeled features");
  predict->add_option("--model", cfg.model_path, "model.esn path")->required();
  predict->add_option("--features", cfg.features_dir, "Directory of feature files")
      ->required();
  predict->add_option("--out", cfg.out_dir, "Output directory for predictions.csv")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return cmd_synth(cfg);
    if (train->parsed()) return cmd_train(cfg);
    if (evaluate->parsed()) return cmd_evaluate(cfg);
    if (cv->parsed()) return cmd_cross_validate(cfg);
    if (predict->parsed()) return cmd_predict(cfg);
  } catch (const esn::EsnError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;  // unreachable with require_subcommand(1)
}
