// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace {

using namespace gdn;
using namespace gdn::cli;

void add_format_flag(CLI::App& cmd, PlyFormat& format) {
  cmd.add_flag_callback("--ascii", [&format] { format = PlyFormat::Ascii; }, "Write ASCII PLY instead of binary");
}

void add_noise_model_options(CLI::App& cmd, NoiseEstimatorOptions& noise) {
  static const std::map<std::string, TailRule> rules{{"first-balanced", TailRule::FirstBalanced},
                                                     {"first-skewed", TailRule::FirstSkewed}};
  static const std::map<std::string, TailDivisor> divisors{{"tail-length", TailDivisor::TailLength},
                                                           {"plus-one", TailDivisor::TailLengthPlusOne}};
  cmd.add_option("--tail-rule", noise.rule, "Eigenvalue tail search")
      ->transform(CLI::CheckedTransformer(rules, CLI::ignore_case));
  cmd.add_option("--tail-divisor", noise.divisor, "Tail mean divisor: D-m or D-m+1")
      ->transform(CLI::CheckedTransformer(divisors, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-based color denoising for voxelized point clouds"};
  app.require_subcommand(1);

  DenoiseOptions den;
  std::optional<std::string> gt_dir;
  auto* denoise_cmd = app.add_subcommand("denoise", "Denoise a PLY file or a directory of frames");
  denoise_cmd->add_option("input", den.input, "Input PLY or directory")->required();
  denoise_cmd->add_option("-o,--output", den.output, "Output PLY or directory")->required();
  denoise_cmd->add_option("--bits", den.bits, "Quantize coordinates to this many bits")->check(CLI::Range(1, 21));
  denoise_cmd->add_option("--patch-size", den.filter.patch_size, "Patch length D")->check(CLI::Range(3, 7));
  denoise_cmd->add_option("--qmax", den.filter.q_max, "Largest filter order considered");
  denoise_cmd->add_option("--interval", den.filter.noise_reestimate_interval, "Frames between noise estimates")
      ->check(CLI::PositiveNumber);
  denoise_cmd->add_flag_callback("--no-fslr", [&den] { den.filter.fslr_enabled = false; },
                                 "Use every point for filter selection");
  denoise_cmd->add_option("--ground-truth", den.ground_truth, "Clean PLY (or directory) for PSNR");
  denoise_cmd->add_option("--manifest", den.manifest, "Manifest path");
  denoise_cmd->add_option("--seed", den.seed, "Seed recorded in the manifest");
  denoise_cmd->add_flag("--parallel", den.parallel, "Process frames that reuse q concurrently");
  denoise_cmd->add_flag("--exhaustive", den.filter.exhaustive, "Evaluate every q up to --qmax");
  {
    static const std::map<std::string, CriterionMode> modes{{"pooled", CriterionMode::Pooled},
                                                            {"per-channel", CriterionMode::PerChannel}};
    denoise_cmd->add_option("--criterion", den.filter.criterion, "Channel pooling of the selection criterion")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  }
  add_noise_model_options(*denoise_cmd, den.filter.noise);
  add_format_flag(*denoise_cmd, den.format);

  AddNoiseOptions noise;
  auto* noise_cmd = app.add_subcommand("add-noise", "Add clipped Gaussian noise to colors");
  noise_cmd->add_option("input", noise.input)->required();
  noise_cmd->add_option("-o,--output", noise.output)->required();
  noise_cmd->add_option("--sigma", noise.sigma, "Noise standard deviation")->required()->check(CLI::NonNegativeNumber);
  noise_cmd->add_option("--seed", noise.seed, "Random seed");
  noise_cmd->add_option("--bits", noise.bits)->check(CLI::Range(1, 21));
  noise_cmd->add_option("--manifest", noise.manifest);
  add_format_flag(*noise_cmd, noise.format);

  EstimateNoiseOptions est;
  auto* est_cmd = app.add_subcommand("estimate-noise", "Estimate the color noise level");
  est_cmd->add_option("input", est.input)->required();
  est_cmd->add_option("--bits", est.bits)->check(CLI::Range(1, 21));
  est_cmd->add_option("--patch-size", est.patch_size)->check(CLI::Range(3, 7));
  est_cmd->add_option("--actual-sigma", est.actual_sigma, "Known noise level; prints E_ne");
  add_noise_model_options(*est_cmd, est.noise);

  std::filesystem::path psnr_ref, psnr_test;
  std::optional<int> psnr_bits;
  auto* psnr_cmd = app.add_subcommand("psnr", "Color PSNR between two clouds with matching point order");
  psnr_cmd->add_option("reference", psnr_ref)->required();
  psnr_cmd->add_option("test", psnr_test)->required();
  psnr_cmd->add_option("--bits", psnr_bits)->check(CLI::Range(1, 21));

  GenSyntheticOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-synthetic", "Write a synthetic test cloud");
  std::string kind_name;
  gen_cmd->add_option("--kind", kind_name, "constant | ramp | two-tone | grid")
      ->required()
      ->check(CLI::IsMember({"constant", "ramp", "two-tone", "grid"}, CLI::ignore_case));
  gen_cmd->add_option("-n,--points", gen.n, "Number of points")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--bits", gen.bits)->check(CLI::Range(1, 21));
  gen_cmd->add_option("-o,--output", gen.output)->required();
  add_format_flag(*gen_cmd, gen.format);

  BenchGraphOptions bench;
  auto* bench_cmd = app.add_subcommand("bench-graph", "Time scan-line vs brute-force graph construction");
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated point counts")->delimiter(',');
  bench_cmd->add_option("--k", bench.k, "Neighbors for the brute-force graph")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--bits", bench.bits)->check(CLI::Range(1, 21));
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--csv", bench.csv, "Also write the table to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*denoise_cmd) {
      const auto manifest = cmd_denoise(den);
      for (const auto& f : manifest.frames) {
        std::cout << f.output << ": q=" << f.report->selected_q << " sigma_est=" << f.report->sigma_est
                  << (f.report->sigma_cached ? " (cached)" : "");
        if (f.psnr_db) std::cout << " psnr=" << *f.psnr_db;
        std::cout << '\n';
      }
    } else if (*noise_cmd) {
      cmd_add_noise(noise);
    } else if (*est_cmd) {
      cmd_estimate_noise(est, std::cout);
    } else if (*psnr_cmd) {
      cmd_psnr(psnr_ref, psnr_test, psnr_bits, std::cout);
    } else if (*gen_cmd) {
      gen.kind = parse_synthetic_kind(kind_name).value();
      cmd_gen_synthetic(gen);
    } else if (*bench_cmd) {
      cmd_bench_graph(bench, std::cout);
    }
  } catch (const gdn::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPipeline;
  }
  return kExitOk;
}
