// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The tdscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// tdscope command-line front end.

#include <omp.h>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tdscope/config.hpp"
#include "tdscope/workflows.hpp"

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string data;
  std::optional<std::uint64_t> seed;
  int threads = 0;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config, "Experiment configuration (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", opt.out, "Output directory")->required();
  cmd->add_option("--seed", opt.seed, "Override noise.seed");
  cmd->add_option("--threads", opt.threads, "OpenMP thread count (0 keeps the runtime default)")
      ->check(CLI::NonNegativeNumber);
}

tdscope::ExperimentConfig effective_config(const Options& opt) {
  auto config = tdscope::load_config(opt.config);
  if (opt.seed) config.noise.seed = *opt.seed;
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topological-derivative imaging of small electromagnetic inclusions"};
  app.require_subcommand(1);
  Options opt;
  auto* synth = app.add_subcommand("synthesize", "Write synthetic far-field data files and a manifest");
  auto* image = app.add_subcommand("image", "Image far-field data on the configured grid");
  auto* noise = app.add_subcommand("noise-study", "Monte-Carlo noise statistics of the multi-incidence image");
  auto* validate = app.add_subcommand("validate", "Run the kernel identity checks");
  for (auto* cmd : {synth, image, noise, validate}) add_common(cmd, opt);
  image->add_option("--data", opt.data, "Directory holding manifest.json (defaults to --out)");

  CLI11_PARSE(app, argc, argv);
  if (opt.threads > 0) omp_set_num_threads(opt.threads);

  try {
    const auto config = effective_config(opt);
    const tdscope::fs::path out = opt.out;
    if (synth->parsed()) {
      const auto result = tdscope::run_synthesize(config, out);
      std::cout << "wrote " << result.files.size() << " data files and " << result.manifest.string() << '\n';
    } else if (image->parsed()) {
      const auto result = tdscope::run_image(config, opt.data.empty() ? out : tdscope::fs::path(opt.data), out);
      const auto& p = result.peak.location;
      std::cout << (result.multi ? "multi" : "single") << " image: peak " << result.peak.value << " at ("
                << p.x() << ", " << p.y() << ", " << p.z() << "), fwhm " << result.peak.fwhm << '\n';
    } else if (noise->parsed()) {
      const auto result = tdscope::run_noise_study(config, out);
      std::cout << "noise study " << (result.report.at("passed").get<bool>() ? "passed" : "failed")
                << ", report " << result.path.string() << '\n';
    } else {
      const auto report = tdscope::run_validate(config, out);
      for (const auto& c : report.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " residual " << c.residual << " tolerance "
                  << c.tolerance << '\n';
      }
      return report.passed() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "tdscope: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
