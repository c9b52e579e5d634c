// SPDX-License-Identifier: Apache-2.0

#include "manifest.hpp"

#include <fstream>
#include <ostream>

namespace gdn::cli {

nlohmann::json to_json(const DenoiseReport& r, bool include_timings) {
  nlohmann::json j;
  j["num_points"] = r.num_points;
  j["q"] = r.selected_q;
  j["sigma_est"] = r.sigma_est;
  j["sigma_channels"] = r.per_channel_sigma;
  j["sigma_cached"] = r.sigma_cached;
  j["masked_fraction"] = r.masked_fraction;
  j["fslr_fallback"] = r.fslr_fallback;
  j["criterion"] = r.criterion;
  j["converged"] = r.converged;
  j["sigma_g"] = r.sigma_g;
  j["num_edges"] = r.num_edges;
  if (include_timings) j["timings_s"] = r.stage_timings;
  return j;
}

nlohmann::json to_json(const FilterConfig& cfg) {
  nlohmann::json j;
  j["q_max"] = cfg.q_max;
  j["epsilon"] = cfg.epsilon ? nlohmann::json(*cfg.epsilon) : nlohmann::json(nullptr);
  j["fslr"] = cfg.fslr_enabled;
  j["patch_size"] = cfg.patch_size;
  j["interval"] = cfg.noise_reestimate_interval;
  j["fslr_sigma_floor"] = cfg.fslr_sigma_floor;
  j["criterion"] = cfg.criterion == CriterionMode::Pooled ? "pooled" : "per-channel";
  j["tail_rule"] = cfg.noise.rule == TailRule::FirstBalanced ? "first-balanced" : "first-skewed";
  j["tail_divisor"] = cfg.noise.divisor == TailDivisor::TailLength ? "tail-length" : "plus-one";
  j["exhaustive"] = cfg.exhaustive;
  return j;
}

void RunManifest::write(std::ostream& out, bool include_timings) const {
  nlohmann::json header;
  header["schema"] = kManifestSchema;
  header["command"] = command;
  header["config"] = config;
  header["frames"] = frames.size();
  out << header.dump() << '\n';
  for (const auto& f : frames) {
    nlohmann::json line;
    line["frame"] = f.frame;
    line["input"] = f.input;
    line["output"] = f.output;
    if (f.report) line["report"] = to_json(*f.report, include_timings);
    if (f.psnr_db) line["psnr_db"] = *f.psnr_db;
    out << line.dump() << '\n';
  }
}

void RunManifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot create manifest " + path.string());
  write(out);
  if (!out) throw std::ios_base::failure("failed writing manifest " + path.string());
}

}  // namespace gdn::cli
