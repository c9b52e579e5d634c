// SPDX-License-Identifier: Apache-2.0

#ifndef GDN_CLI_MANIFEST_HPP
#define GDN_CLI_MANIFEST_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gdn/pipeline.hpp"

namespace gdn::cli {

inline constexpr const char* kManifestSchema = "gdn.run-manifest/1";

struct FrameRecord {
  std::size_t frame = 0;
  std::string input;
  std::string output;
  std::optional<DenoiseReport> report;
  std::optional<double> psnr_db;
};

/// Record of one CLI run, written as JSON lines: a header object followed by
/// one object per frame. Keys are emitted sorted.
struct RunManifest {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::vector<FrameRecord> frames;

  void write(std::ostream& out, bool include_timings = true) const;
  void write(const std::filesystem::path& path) const;
};

nlohmann::json to_json(const DenoiseReport& report, bool include_timings = true);
nlohmann::json to_json(const FilterConfig& cfg);

}  // namespace gdn::cli

#endif  // GDN_CLI_MANIFEST_HPP
