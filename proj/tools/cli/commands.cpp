// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <set>
#include <stdexcept>

#include "gdn/metrics.hpp"
#include "gdn/scanline_graph.hpp"

namespace gdn::cli {
namespace {

const char* format_name(PlyFormat f) { return f == PlyFormat::Ascii ? "ascii" : "binary_little_endian"; }

fs::path sibling(const fs::path& p, const std::string& suffix) {
  fs::path out = p;
  out += suffix;
  return out;
}

// Colors as they will be stored: rounded half-up to 8 bits.
Signal stored_colors(const Signal& s) {
  Signal out = s;
  for (auto& rgb : out)
    for (auto& v : rgb) v = std::clamp(std::floor(v + 0.5), 0.0, 255.0);
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct FrameJob {
  fs::path input;
  fs::path output;
  std::optional<fs::path> ground_truth;
};

FrameRecord run_frame(const FrameJob& job, const DenoiseOptions& opts, std::size_t index,
                      std::optional<std::size_t> cached_q) {
  const PointCloud original = load_ply(job.input);
  const PointCloud working = prepare_cloud(original, opts.bits, job.input);
  DenoiseResult result = denoise(working, opts.filter, cached_q);

  PointCloud out = original;
  out.colors = std::move(result.cloud.colors);
  save_ply(job.output, out, opts.format);

  FrameRecord rec;
  rec.frame = index;
  rec.input = job.input.string();
  rec.output = job.output.string();
  if (job.ground_truth) {
    const PointCloud truth = load_ply(*job.ground_truth);
    PointCloud stored = out;
    stored.colors = stored_colors(out.colors);
    rec.psnr_db = psnr(truth, stored);
    result.report.psnr_db = rec.psnr_db;
  }
  rec.report = std::move(result.report);
  return rec;
}

}  // namespace

PointCloud prepare_cloud(const PointCloud& pc, std::optional<int> bits, const fs::path& origin) {
  if (bits) return quantize_coordinates(pc, *bits);
  if (auto voxels = integral_voxels(pc)) return *std::move(voxels);
  throw std::invalid_argument(origin.string() +
                              " has non-integer coordinates; pass --bits to quantize them");
}

PointCloud load_cloud(const fs::path& path, std::optional<int> bits) {
  return prepare_cloud(load_ply(path), bits, path);
}

std::vector<fs::path> list_frames(const fs::path& dir) {
  std::vector<fs::path> frames;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".ply") frames.push_back(entry.path());
  }
  std::sort(frames.begin(), frames.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
  return frames;
}

RunManifest cmd_denoise(const DenoiseOptions& opts) {
  if (opts.filter.noise_reestimate_interval == 0) throw std::invalid_argument("--interval must be at least 1");

  std::vector<FrameJob> jobs;
  fs::path manifest_path;
  if (fs::is_directory(opts.input)) {
    fs::create_directories(opts.output);
    for (const auto& in : list_frames(opts.input)) {
      FrameJob job{in, opts.output / in.filename(), std::nullopt};
      if (opts.ground_truth) {
        if (!fs::is_directory(*opts.ground_truth))
          throw std::invalid_argument("--ground-truth must be a directory for sequence input");
        job.ground_truth = *opts.ground_truth / in.filename();
      }
      jobs.push_back(std::move(job));
    }
    if (jobs.empty()) throw std::invalid_argument("no .ply files in " + opts.input.string());
    manifest_path = opts.manifest.value_or(opts.output / "manifest.jsonl");
  } else {
    if (!fs::exists(opts.input)) throw std::ios_base::failure("cannot open " + opts.input.string());
    jobs.push_back({opts.input, opts.output, opts.ground_truth});
    manifest_path = opts.manifest.value_or(sibling(opts.output, ".manifest.jsonl"));
  }

  RunManifest manifest;
  manifest.command = "denoise";
  manifest.config = to_json(opts.filter);
  manifest.config["bits"] = opts.bits ? nlohmann::json(*opts.bits) : nlohmann::json(nullptr);
  manifest.config["seed"] = opts.seed;
  manifest.config["parallel"] = opts.parallel;
  manifest.config["format"] = format_name(opts.format);
  manifest.frames.resize(jobs.size());

  // Frames are grouped in blocks of `interval`: the first frame of a block
  // estimates q, the rest reuse it and are independent of each other.
  const std::size_t interval = opts.filter.noise_reestimate_interval;
  for (std::size_t head = 0; head < jobs.size(); head += interval) {
    manifest.frames[head] = run_frame(jobs[head], opts, head, std::nullopt);
    const std::size_t q = manifest.frames[head].report->selected_q;
    const std::size_t end = std::min(jobs.size(), head + interval);
    if (opts.parallel) {
      std::vector<std::future<FrameRecord>> pending;
      for (std::size_t f = head + 1; f < end; ++f)
        pending.push_back(std::async(std::launch::async, run_frame, std::cref(jobs[f]), std::cref(opts), f, q));
      for (std::size_t f = head + 1; f < end; ++f) manifest.frames[f] = pending[f - head - 1].get();
    } else {
      for (std::size_t f = head + 1; f < end; ++f) manifest.frames[f] = run_frame(jobs[f], opts, f, q);
    }
  }

  manifest.write(manifest_path);
  return manifest;
}

RunManifest cmd_add_noise(const AddNoiseOptions& opts) {
  PointCloud pc = load_ply(opts.input);
  if (opts.bits) pc = quantize_coordinates(pc, *opts.bits);
  const PointCloud noisy = add_gaussian_noise(pc, opts.sigma, opts.seed);
  save_ply(opts.output, noisy, opts.format);

  RunManifest manifest;
  manifest.command = "add-noise";
  manifest.config["sigma"] = opts.sigma;
  manifest.config["seed"] = opts.seed;
  manifest.config["bits"] = opts.bits ? nlohmann::json(*opts.bits) : nlohmann::json(nullptr);
  manifest.config["format"] = format_name(opts.format);
  manifest.frames.push_back({0, opts.input.string(), opts.output.string(), std::nullopt, std::nullopt});
  manifest.write(opts.manifest.value_or(sibling(opts.output, ".manifest.jsonl")));
  return manifest;
}

EstimateNoiseResult cmd_estimate_noise(const EstimateNoiseOptions& opts, std::ostream& out) {
  const PointCloud pc = load_cloud(opts.input, opts.bits);
  if (pc.size() < 2) throw PipelineError("noise estimation needs at least 2 points");
  const Graph g = build_weighted_slg(pc);
  EstimateNoiseResult result;
  result.estimate = estimate_noise(pc, g, opts.patch_size, opts.noise);
  const auto& est = result.estimate;

  const char* names[] = {"R", "G", "B"};
  out << std::setprecision(6) << std::fixed;
  out << "points: " << pc.size() << '\n'
      << "patch_size: " << opts.patch_size << '\n'
      << "eligible_patches: " << est.eligible_count << '\n'
      << "sigma_est: " << est.sigma_est << '\n';
  for (int c = 0; c < 3; ++c) {
    out << "channel " << names[c] << ": sigma=" << est.per_channel_sigma[c] << " m=" << est.tail[c].m
        << " tau=" << est.tail[c].tau << (est.tail[c].fallback ? " fallback" : "") << " eigenvalues=";
    for (std::size_t k = 0; k < est.eigenvalues[c].size(); ++k)
      out << (k ? "," : "") << est.eigenvalues[c][k];
    out << '\n';
  }
  if (opts.actual_sigma) {
    result.error = std::abs(est.sigma_est - *opts.actual_sigma);
    out << "E_ne: " << *result.error << '\n';
  }
  return result;
}

double cmd_psnr(const fs::path& reference, const fs::path& test, std::optional<int> bits, std::ostream& out) {
  PointCloud ref = load_ply(reference);
  PointCloud tst = load_ply(test);
  if (bits) {
    ref = quantize_coordinates(ref, *bits);
    tst = quantize_coordinates(tst, *bits);
  }
  const double value = psnr(ref, tst);
  out << std::setprecision(4) << std::fixed << value << '\n';
  return value;
}

std::vector<BenchGraphRow> cmd_bench_graph(const BenchGraphOptions& opts, std::ostream& out) {
  std::vector<BenchGraphRow> rows;
  for (std::size_t n : opts.sizes) {
    if (n <= opts.k) throw std::invalid_argument("benchmark sizes must exceed k");
    const PointCloud pc = random_voxel_cloud(n, opts.bits, opts.seed);
    BenchGraphRow row;
    row.n = n;

    auto start = std::chrono::steady_clock::now();
    const Graph slg = build_slg(pc);
    row.slg_s = seconds_since(start);

    start = std::chrono::steady_clock::now();
    const Graph knn = build_knn_brute(pc, opts.k);
    row.bf_knn_s = seconds_since(start);

    row.mean_degree = 2.0 * double(slg.num_edges()) / double(n);
    const auto slg_edges = edge_list(slg);
    const std::set<Edge> slg_set(slg_edges.begin(), slg_edges.end());
    std::size_t shared = 0;
    const auto knn_edges = edge_list(knn);
    for (const auto& e : knn_edges) shared += slg_set.count(e);
    row.overlap = knn_edges.empty() ? 0.0 : double(shared) / double(knn_edges.size());
    rows.push_back(row);
  }

  auto emit = [&](std::ostream& os) {
    os << kBenchCsvHeader << '\n' << std::setprecision(6);
    for (const auto& r : rows)
      os << r.n << ',' << r.slg_s << ',' << r.bf_knn_s << ',' << r.mean_degree << ',' << r.overlap << '\n';
  };
  emit(out);
  if (opts.csv) {
    std::ofstream file(*opts.csv);
    if (!file) throw std::ios_base::failure("cannot create " + opts.csv->string());
    emit(file);
  }
  return rows;
}

void cmd_gen_synthetic(const GenSyntheticOptions& opts) {
  const SyntheticCloud sc = make_synthetic(opts.kind, opts.n, opts.bits);
  save_ply(opts.output, sc.cloud, opts.format);
  if (opts.kind == SyntheticKind::TwoTone) {
    std::ofstream labels(sibling(opts.output, ".labels"));
    if (!labels) throw std::ios_base::failure("cannot create label sidecar for " + opts.output.string());
    for (auto l : sc.labels) labels << int{l} << '\n';
  }
}

}  // namespace gdn::cli
