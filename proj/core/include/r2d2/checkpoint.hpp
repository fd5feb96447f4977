#pragma once

#include <filesystem>
#include <vector>

#include "r2d2/unet.hpp"

namespace r2d2 {

struct Checkpoint {
  UNet network;
  int stage = 0;  // 1-based position in the series
  std::vector<double> loss_history;
};

// One JSON header line (architecture, stage, normalization recipe, loss
// history, tensor table) followed by every tensor as little-endian f32 in
// the declared order.
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace r2d2
