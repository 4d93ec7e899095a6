#pragma once

#include <filesystem>

#include "lindiff/diffusion.hpp"

namespace lindiff {

/// Writes `U_{t}.ldmx`, `eig_{t}.csv` per denoiser and `chain.json` describing
/// the schedule, r, seed, d and n.
void saveChain(const DenoiserChain& chain, const std::filesystem::path& dir);

/// Inverse of saveChain; checks shapes against the manifest.
DenoiserChain loadChain(const std::filesystem::path& dir);

}  // namespace lindiff
