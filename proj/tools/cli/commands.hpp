// SPDX-License-Identifier: Apache-2.0

#ifndef GDN_CLI_COMMANDS_HPP
#define GDN_CLI_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gdn/noise_estimation.hpp"
#include "gdn/pipeline.hpp"
#include "gdn/ply.hpp"
#include "gdn/synthetic.hpp"
#include "manifest.hpp"

namespace gdn::cli {

namespace fs = std::filesystem;

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitPipeline = 3,
  kExitIo = 4,
};

/// Loads a PLY and, if it holds floating point positions, quantizes it to
/// `bits`. Float inputs without `bits` are rejected.
PointCloud load_cloud(const fs::path& path, std::optional<int> bits);
PointCloud prepare_cloud(const PointCloud& pc, std::optional<int> bits, const fs::path& origin);

/// PLY files in `dir`, ordered by file name.
std::vector<fs::path> list_frames(const fs::path& dir);

struct DenoiseOptions {
  fs::path input;
  fs::path output;
  std::optional<fs::path> ground_truth;
  std::optional<fs::path> manifest;
  FilterConfig filter;
  std::optional<int> bits;
  std::uint64_t seed = 0;
  bool parallel = false;
  PlyFormat format = PlyFormat::BinaryLittleEndian;
};

/// Denoises a file or a directory of frames. In a sequence, frame f runs the
/// full estimate when f % interval == 0 and otherwise reuses the last q.
RunManifest cmd_denoise(const DenoiseOptions& opts);

struct AddNoiseOptions {
  fs::path input;
  fs::path output;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::optional<int> bits;
  std::optional<fs::path> manifest;
  PlyFormat format = PlyFormat::BinaryLittleEndian;
};

RunManifest cmd_add_noise(const AddNoiseOptions& opts);

struct EstimateNoiseOptions {
  fs::path input;
  std::size_t patch_size = kDefaultPatchSize;
  std::optional<int> bits;
  std::optional<double> actual_sigma;
  NoiseEstimatorOptions noise;
};

struct EstimateNoiseResult {
  NoiseEstimate estimate;
  std::optional<double> error;
};

/// Prints the estimate, per-channel eigenvalues and the tail choice.
EstimateNoiseResult cmd_estimate_noise(const EstimateNoiseOptions& opts, std::ostream& out);

double cmd_psnr(const fs::path& reference, const fs::path& test, std::optional<int> bits, std::ostream& out);

struct BenchGraphOptions {
  std::vector<std::size_t> sizes{1000, 10000, 100000};
  std::size_t k = 6;
  int bits = 10;
  std::uint64_t seed = 0;
  std::optional<fs::path> csv;
};

struct BenchGraphRow {
  std::size_t n = 0;
  double slg_s = 0.0;
  double bf_knn_s = 0.0;
  double mean_degree = 0.0;
  /// Fraction of exact k-NN edges that the scan-line graph also contains.
  double overlap = 0.0;
};

inline constexpr const char* kBenchCsvHeader = "n,slg_s,bf_knn_s,mean_degree,overlap";

/// Times scan-line and brute-force graph construction on random voxel clouds
/// and prints CSV (also written to `csv` when set).
std::vector<BenchGraphRow> cmd_bench_graph(const BenchGraphOptions& opts, std::ostream& out);

struct GenSyntheticOptions {
  SyntheticKind kind = SyntheticKind::Constant;
  std::size_t n = 0;
  int bits = 10;
  fs::path output;
  PlyFormat format = PlyFormat::BinaryLittleEndian;
};

/// Writes the cloud; two-tone clouds also get "<output>.labels" with one
/// 0/1 side label per line.
void cmd_gen_synthetic(const GenSyntheticOptions& opts);

}  // namespace gdn::cli

#endif  // GDN_CLI_COMMANDS_HPP
