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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include "tdscope/config.hpp"
#include "tdscope/workflows.hpp"

using namespace tdscope;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("tdscope_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.acquisition.n_directions = 4;
  c.acquisition.quadrature_count = 300;
  c.grid.dims = {13, 13, 13};
  c.grid.spacing_lambda = 0.1;
  c.noise.trials = 20;
  c.noise.lattice_side = 2;
  c.noise.separations_lambda = {0.25};
  c.validation.multi_directions = 20;
  c.validation.grid_dims = 5;
  return c;
}

}  // namespace

TEST_CASE("config round trip") {
  ExperimentConfig c = small_config();
  c.noise.sigma = 0.125;
  c.inclusion.polarization = 2.0 * Mat3::Identity();
  c.acquisition.quadrature_scheme = QuadratureScheme::FibonacciEqual;
  const ExperimentConfig back = config_from_json(config_to_json(c));
  CHECK(back == c);
  CHECK(config_hash(back) == config_hash(c));
  CHECK(config_hash(c).size() == 16);
  CHECK(config_hash(c) != config_hash(ExperimentConfig{}));

  const fs::path dir = scratch("config");
  save_config(c, (dir / "c.json").string());
  CHECK(load_config((dir / "c.json").string()) == c);
}

TEST_CASE("config parsing errors name the field") {
  CHECK(config_from_json(json::object()) == ExperimentConfig{});
  auto message = [](const json& j) {
    try {
      config_from_json(j);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(json{{"grid", {{"spacing", 0.1}}}}).find("grid.spacing") != std::string::npos);
  CHECK(message(json{{"noise", {{"trials", "many"}}}}).find("noise.trials") != std::string::npos);
  CHECK(message(json{{"acquisition", {{"mode", "both"}}}}).find("acquisition.mode") != std::string::npos);
  CHECK(message(json{{"bogus", 1}}).find("bogus") != std::string::npos);

  const auto kappa = config_from_json(json{{"medium", {{"kappa", 4.0 * kPi}}}});
  CHECK(kappa.medium.wavelength == doctest::Approx(0.5));
}

TEST_CASE("derived objects follow the config") {
  ExperimentConfig c;
  c.medium.wavelength = 2.0;
  CHECK(c.make_medium().kappa == doctest::Approx(kPi));
  CHECK((c.make_inclusion().center - 2.0 * Vec3(0.234, -0.167, 0.113)).norm() < 1e-15);
  CHECK(c.make_inclusion().rho == doctest::Approx(0.1));
  CHECK(c.make_grid().spacing == doctest::Approx(0.2));
  CHECK(c.make_grid().size() == 41u * 41u * 41u);
  const NoiseModel model = c.make_noise_model();
  CHECK(theoretical_snr(c.make_medium(), c.make_inclusion(), model, c.acquisition.n_directions) ==
        doctest::Approx(c.noise.target_snr).epsilon(1e-12));
}

TEST_CASE("far-field data files round trip") {
  const fs::path dir = scratch("datafile");
  const auto result = run_synthesize(small_config(), dir);
  CHECK(result.files.size() == 8);
  const auto loaded = read_far_field_file(result.files[3]);
  CHECK(loaded.direction_index == 2);
  CHECK(loaded.data.incidence.pol_index == 2);
  CHECK(loaded.config_hash == config_hash(small_config()));
  CHECK(loaded.data.quad->count() == 300);

  auto config = small_config();
  auto quad = std::make_shared<const SphereQuadrature>(build_quadrature(300));
  CHECK(read_far_field_file(result.files[0], quad).data.quad == quad);
  CHECK_THROWS(read_far_field_file(dir / "absent.dat"));
  std::ofstream(dir / "broken.dat") << "config_hash x\nnodes 4\n# wx\n1 0 0 1\n";
  CHECK_THROWS(read_far_field_file(dir / "broken.dat"));
}

TEST_CASE("synthesize writes one file per incidence and is reproducible") {
  ExperimentConfig one = small_config();
  one.acquisition.n_directions = 1;
  CHECK(run_synthesize(one, scratch("syn1")).files.size() == 2);

  ExperimentConfig twenty = small_config();
  twenty.acquisition.n_directions = 20;
  twenty.acquisition.add_noise = true;
  const fs::path a = scratch("syn20a"), b = scratch("syn20b");
  const auto ra = run_synthesize(twenty, a);
  run_synthesize(twenty, b);
  CHECK(ra.files.size() == 40);
  CHECK(read_json(ra.manifest).at("files").size() == 40);
  for (const auto& f : ra.files) CHECK(slurp(f) == slurp(b / f.filename()));
  CHECK(slurp(a / "manifest.json") == slurp(b / "manifest.json"));
  CHECK(read_far_field_file(ra.files[0]).data.corrupted);
}

TEST_CASE("image workflow") {
  const ExperimentConfig config = small_config();
  const fs::path dir = scratch("image");
  run_synthesize(config, dir);
  const auto image = run_image(config, dir, dir / "out");
  CHECK(image.multi);
  const json summary = read_json(image.summary_json);
  CHECK(summary.at("mode") == "multi");
  CHECK(summary.at("config_hash") == config_hash(config));
  const auto z_d = config.make_inclusion().center;
  const auto loc = summary.at("peak").at("location").get<std::vector<double>>();
  for (int a = 0; a < 3; ++a) CHECK(std::abs(loc[static_cast<std::size_t>(a)] - z_d(a)) <= 0.1 * config.medium.wavelength);
  CHECK(image.slices.size() == 3);
  const std::string pgm = slurp(dir / "out" / "slice_xz.pgm");
  CHECK(pgm.rfind("P5\n13 13\n255\n", 0) == 0);
  CHECK(pgm.size() == std::string("P5\n13 13\n255\n").size() + 169);

  std::istringstream csv(slurp(image.map_csv));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "x,y,z,value");
  std::size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 13u * 13u * 13u);

  ExperimentConfig single = config;
  single.acquisition.mode = "single";
  const fs::path sdir = scratch("image_single");
  CHECK(run_synthesize(single, sdir).files.size() == 1);
  CHECK_FALSE(run_image(single, sdir, sdir).multi);

  ExperimentConfig other = config;
  other.trial.eps_r = 2.0;
  CHECK_THROWS_WITH_AS(run_image(other, dir, dir / "x"), doctest::Contains("hash"), std::runtime_error);
  fs::remove(dir / "farfield_d0002_p1.dat");
  CHECK_THROWS(run_image(config, dir, dir / "x"));
}

TEST_CASE("noise-study workflow") {
  ExperimentConfig config = small_config();
  config.noise.sigma = 0.0;
  const auto degenerate = run_noise_study(config, scratch("noise0"));
  CHECK(degenerate.report.at("degenerate") == true);
  CHECK(degenerate.report.at("variance").at("empirical") == 0.0);
  CHECK(degenerate.report.at("scaling").at("variance_n") == 0.0);
  CHECK(degenerate.report.at("empirical_mean") == degenerate.report.at("clean_value"));

  config.noise.sigma.reset();
  const fs::path a = scratch("noise_a"), b = scratch("noise_b");
  const auto ra = run_noise_study(config, a);
  run_noise_study(config, b);
  CHECK(slurp(ra.path) == slurp(b / "noise_study.json"));
  const json& scaling = ra.report.at("scaling");
  CHECK(scaling.at("n") == 4);
  CHECK(scaling.at("n_scaled") == 16);
  CHECK(scaling.contains("passed"));
  CHECK(ra.report.at("covariance").size() == 2);
  CHECK(ra.report.at("snr").at("theoretical").get<double>() == doctest::Approx(config.noise.target_snr));
}

TEST_CASE("validate workflow") {
  ExperimentConfig config = small_config();
  config.acquisition.quadrature_count = 2000;
  const fs::path dir = scratch("validate");
  const auto report = run_validate(config, dir);
  CHECK(report.passed());
  const json j = read_json(dir / "validation.json");
  CHECK(j.at("checks").size() == report.checks.size());
  CHECK(j.at("checks").size() == 7);
  for (const auto& c : j.at("checks")) CHECK(c.contains("residual"));

  ExperimentConfig coarse = config;
  coarse.acquisition.quadrature_count = 50;
  const auto degraded = run_validate(coarse, {});
  CHECK_FALSE(degraded.passed());
  for (const auto& c : degraded.checks) {
    if (c.name == "quadrature_j0_identity") CHECK_FALSE(c.passed);
    if (c.name == "imag_green_dual_formula" || c.name == "green_reciprocity") CHECK(c.passed);
  }
}

TEST_CASE("pgm writer") {
  const fs::path dir = scratch("pgm");
  write_pgm(dir / "a.pgm", 2, 1, {0, 255});
  CHECK(slurp(dir / "a.pgm") == std::string("P5\n2 1\n255\n\x00\xff", 13));
  CHECK_THROWS_AS(write_pgm(dir / "b.pgm", 2, 2, {0}), std::invalid_argument);
}

TEST_CASE("command-line front end") {
  const fs::path dir = scratch("cli");
  save_config(small_config(), (dir / "config.json").string());
  const std::string cli = TDSCOPE_CLI_PATH;
  auto run = [&](const std::string& args) {
    const int status = std::system((cli + " " + args + " > " + (dir / "log.txt").string() + " 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  const std::string common = "--config " + (dir / "config.json").string() + " --out " + (dir / "run").string();
  CHECK(run("synthesize " + common + " --threads 2") == 0);
  CHECK(run("image " + common) == 0);
  CHECK(fs::exists(dir / "run" / "summary.json"));
  CHECK(run("image " + common + " --seed 99") == 2);
  // 300 nodes cannot resolve the quadrature check, so validate reports failure.
  CHECK(run("validate " + common) == 1);
  CHECK(run("frobnicate " + common) != 0);
  CHECK(run("image --out " + (dir / "run").string()) != 0);
}
