#pragma once

#include <filesystem>

#include "esn/evaluation.hpp"

namespace esn {

/// Model files store the reservoir seed + config (matrices are rebuilt from
/// them), the normalization stats, the smoothing window, the readout weights,
/// and an FNV-1a checksum of the rebuilt matrices. Text, 17-significant-digit
/// values, byte-deterministic.
void save_model(const std::filesystem::path& path, const TrainedModel& model);

/// Rebuilds the reservoir from the stored seed/config and verifies the stored
/// checksum. Rejects files whose input_dim does not match the 23-channel
/// schema.
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace esn
