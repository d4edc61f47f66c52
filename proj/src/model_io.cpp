#include "esn/model_io.hpp"

#include <cstdio>
#include <sstream>
#include <string_view>
#include <vector>

#include "esn/errors.hpp"
#include "esn/text.hpp"

namespace esn {

namespace {

constexpr std::string_view kMagic = "esn-affect-model v1";

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::string checksum_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

void save_model(const std::filesystem::path& path, const TrainedModel& model) {
  std::ostringstream os;
  const EsnConfig& c = model.config;
  os << kMagic << "\n";
  os << "seed " << c.seed << "\n";
  os << "reservoir_size " << c.reservoir_size << "\n";
  os << "spectral_radius " << fmt_double(c.spectral_radius) << "\n";
  os << "ridge_beta " << fmt_double(c.ridge_beta) << "\n";
  os << "leak_rate " << fmt_double(c.leak_rate) << "\n";
  os << "input_scaling " << fmt_double(c.input_scaling) << "\n";
  os << "connectivity " << fmt_double(c.connectivity) << "\n";
  os << "washout " << c.washout << "\n";
  os << "smooth_window " << model.smoothing.window << "\n";
  os << "input_dim " << model.reservoir->input_dim << "\n";
  os << "reservoir_checksum " << checksum_hex(reservoir_checksum(*model.reservoir)) << "\n";

  os << "norm_min";
  for (double v : model.normalization.per_channel_min) os << " " << fmt_double(v);
  os << "\nnorm_max";
  for (double v : model.normalization.per_channel_max) os << " " << fmt_double(v);
  os << "\nfitted_on";
  for (const auto& id : model.normalization.fitted_on) os << " " << id;
  os << "\n";

  const Matrix& w = model.readout.w_out;
  os << "w_out_rows " << w.rows() << "\n";
  os << "w_out_cols " << w.cols() << "\n";
  for (std::size_t r = 0; r < w.rows(); ++r) {
    os << "w_out";
    for (std::size_t col = 0; col < w.cols(); ++col) os << " " << fmt_double(w(r, col));
    os << "\n";
  }
  write_file_atomic(path, os.str());
}

TrainedModel load_model(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  std::istringstream is(content);
  std::string line;

  auto fail = [&](const std::string& why) -> EsnError {
    return EsnError("model file " + path.string() + ": " + why);
  };

  if (!std::getline(is, line) || line != kMagic) {
    throw fail("missing or unexpected magic line (want '" + std::string(kMagic) + "')");
  }

  auto next_tokens = [&](const std::string& key, std::size_t count) {
    if (!std::getline(is, line)) throw fail("truncated, expected '" + key + "'");
    auto toks = tokens_of(line);
    if (toks.empty() || toks[0] != key) {
      throw fail("expected field '" + key + "', got '" + line + "'");
    }
    if (count != 0 && toks.size() != count + 1) {
      throw fail("field '" + key + "' has " + std::to_string(toks.size() - 1) +
                 " values, expected " + std::to_string(count));
    }
    return toks;
  };

  TrainedModel model;
  EsnConfig c;
  c.seed = parse_u64(next_tokens("seed", 1)[1], "model seed");
  c.reservoir_size = parse_size(next_tokens("reservoir_size", 1)[1], "model reservoir_size");
  c.spectral_radius =
      parse_double(next_tokens("spectral_radius", 1)[1], "model spectral_radius");
  c.ridge_beta = parse_double(next_tokens("ridge_beta", 1)[1], "model ridge_beta");
  c.leak_rate = parse_double(next_tokens("leak_rate", 1)[1], "model leak_rate");
  c.input_scaling = parse_double(next_tokens("input_scaling", 1)[1], "model input_scaling");
  c.connectivity = parse_double(next_tokens("connectivity", 1)[1], "model connectivity");
  c.washout = parse_size(next_tokens("washout", 1)[1], "model washout");
  model.smoothing.window = parse_size(next_tokens("smooth_window", 1)[1], "model smooth_window");
  const std::size_t input_dim =
      parse_size(next_tokens("input_dim", 1)[1], "model input_dim");
  if (input_dim != kNumChannels) {
    throw fail("input_dim " + std::to_string(input_dim) + " does not match the " +
               std::to_string(kNumChannels) + "-channel schema");
  }
  const std::string stored_checksum = next_tokens("reservoir_checksum", 1)[1];

  model.config = c;
  model.config.validate();

  {
    auto toks = next_tokens("norm_min", kNumChannels);
    model.normalization.per_channel_min.resize(kNumChannels);
    for (std::size_t i = 0; i < kNumChannels; ++i) {
      model.normalization.per_channel_min[i] = parse_double(toks[i + 1], "model norm_min");
    }
  }
  {
    auto toks = next_tokens("norm_max", kNumChannels);
    model.normalization.per_channel_max.resize(kNumChannels);
    for (std::size_t i = 0; i < kNumChannels; ++i) {
      model.normalization.per_channel_max[i] = parse_double(toks[i + 1], "model norm_max");
    }
  }
  for (std::size_t i = 0; i < kNumChannels; ++i) {
    if (model.normalization.per_channel_min[i] > model.normalization.per_channel_max[i]) {
      throw fail("norm_min exceeds norm_max on channel " + std::to_string(i + 1));
    }
  }
  {
    auto toks = next_tokens("fitted_on", 0);
    model.normalization.fitted_on.assign(toks.begin() + 1, toks.end());
  }

  const std::size_t rows = parse_size(next_tokens("w_out_rows", 1)[1], "model w_out_rows");
  const std::size_t cols = parse_size(next_tokens("w_out_cols", 1)[1], "model w_out_cols");
  if (rows != 2) throw fail("w_out_rows must be 2 (arousal, valence)");
  if (cols != c.reservoir_size + kNumChannels + 1) {
    throw fail("w_out_cols " + std::to_string(cols) + " does not match reservoir_size " +
               std::to_string(c.reservoir_size) + " + " + std::to_string(kNumChannels) +
               " + 1");
  }
  model.readout.w_out = Matrix(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto toks = next_tokens("w_out", cols);
    for (std::size_t col = 0; col < cols; ++col) {
      model.readout.w_out(r, col) = parse_double(toks[col + 1], "model w_out");
    }
  }

  model.reservoir =
      std::make_shared<const Reservoir>(build_reservoir(model.config, kNumChannels));
  const std::string rebuilt_checksum = checksum_hex(reservoir_checksum(*model.reservoir));
  if (rebuilt_checksum != stored_checksum) {
    throw fail("reservoir checksum mismatch: stored " + stored_checksum + ", rebuilt " +
               rebuilt_checksum);
  }
  return model;
}

}  // namespace esn
