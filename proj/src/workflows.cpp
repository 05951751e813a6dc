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

#include "tdscope/workflows.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "tdscope/em_kernels.hpp"
#include "tdscope/image_kernels.hpp"
#include "tdscope/noise.hpp"

namespace tdscope {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

std::string data_file_name(int direction, int pol) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "farfield_d%04d_p%d.dat", direction, pol);
  return buf;
}

std::vector<Incidence> configured_incidences(const ExperimentConfig& config) {
  const auto directions = fibonacci_directions(config.acquisition.n_directions);
  auto incidences = make_incidences(directions);
  if (config.acquisition.mode == "single") incidences.resize(1);
  return incidences;
}

double relative_error(double empirical, double theoretical) {
  return std::abs(empirical - theoretical) / std::abs(theoretical);
}

Vec3 random_unit(RngStream& rng) {
  return UnitVec3(Vec3(rng.normal(), rng.normal(), rng.normal())).vec();
}

// Central-difference column-wise curl of f at x.
template <typename F>
CMat3 curl_fd(F&& f, const Vec3& x, double h) {
  std::array<CMat3, 3> d;
  for (int b = 0; b < 3; ++b) {
    const Vec3 e = h * Vec3::Unit(b);
    d[static_cast<std::size_t>(b)] = (f(x + e) - f(x - e)) / (2.0 * h);
  }
  CMat3 out;
  for (int col = 0; col < 3; ++col) {
    out(0, col) = d[1](2, col) - d[2](1, col);
    out(1, col) = d[2](0, col) - d[0](2, col);
    out(2, col) = d[0](1, col) - d[1](0, col);
  }
  return out;
}

}  // namespace

void write_far_field_file(const fs::path& path, const FarFieldData& data, const std::string& hash,
                          int direction_index) {
  if (!data.quad) throw std::invalid_argument("write_far_field_file: data has no quadrature");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  const auto& t = data.incidence.triad;
  out << "# tdscope far-field data v1\n";
  out << "config_hash " << hash << '\n';
  out << "direction " << direction_index << '\n';
  out << "polarization " << data.incidence.pol_index << '\n';
  out << "corrupted " << (data.corrupted ? 1 : 0) << '\n';
  out << "scheme " << to_string(data.quad->scheme()) << ' ' << data.quad->exact_degree() << '\n';
  out << "nodes " << data.quad->count() << '\n';
  out << "theta " << fmt(t.theta.x()) << ' ' << fmt(t.theta.y()) << ' ' << fmt(t.theta.z()) << '\n';
  out << "perp1 " << fmt(t.perp1.x()) << ' ' << fmt(t.perp1.y()) << ' ' << fmt(t.perp1.z()) << '\n';
  out << "perp2 " << fmt(t.perp2.x()) << ' ' << fmt(t.perp2.y()) << ' ' << fmt(t.perp2.z()) << '\n';
  out << "# wx wy wz weight re_e1 im_e1 re_e2 im_e2 re_e3 im_e3\n";
  const auto& nodes = data.quad->nodes();
  const auto& weights = data.quad->weights();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& s = data.samples[i];
    out << fmt(nodes[i].x()) << ' ' << fmt(nodes[i].y()) << ' ' << fmt(nodes[i].z()) << ' '
        << fmt(weights[i]);
    for (int c = 0; c < 3; ++c) out << ' ' << fmt(s(c).real()) << ' ' << fmt(s(c).imag());
    out << '\n';
  }
}

LoadedFarField read_far_field_file(const fs::path& path, std::shared_ptr<const SphereQuadrature> shared) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing data file '" + path.string() + "'");
  LoadedFarField loaded;
  std::size_t count = 0;
  std::string scheme_name = "fibonacci_equal";
  int exact_degree = 0;
  Vec3 theta, perp1, perp2;
  int corrupted = 0;
  std::string line;
  auto bad = [&](const std::string& what) {
    return std::runtime_error("malformed data file '" + path.string() + "': " + what);
  };
  // Header lines until the column comment.
  while (std::getline(in, line)) {
    if (line.rfind("# wx", 0) == 0) break;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "config_hash") ls >> loaded.config_hash;
    else if (key == "direction") ls >> loaded.direction_index;
    else if (key == "polarization") ls >> loaded.data.incidence.pol_index;
    else if (key == "corrupted") ls >> corrupted;
    else if (key == "scheme") ls >> scheme_name >> exact_degree;
    else if (key == "nodes") ls >> count;
    else if (key == "theta") ls >> theta.x() >> theta.y() >> theta.z();
    else if (key == "perp1") ls >> perp1.x() >> perp1.y() >> perp1.z();
    else if (key == "perp2") ls >> perp2.x() >> perp2.y() >> perp2.z();
    else throw bad("unknown header key '" + key + "'");
    if (ls.fail()) throw bad("cannot parse header line '" + line + "'");
  }
  if (count == 0) throw bad("missing node count");
  std::vector<Vec3> raw_nodes;
  std::vector<double> weights;
  raw_nodes.reserve(count);
  weights.reserve(count);
  loaded.data.samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double x, y, z, w, v[6];
    if (!(in >> x >> y >> z >> w >> v[0] >> v[1] >> v[2] >> v[3] >> v[4] >> v[5])) {
      throw bad("expected " + std::to_string(count) + " rows");
    }
    raw_nodes.emplace_back(x, y, z);
    weights.push_back(w);
    loaded.data.samples.emplace_back(cdouble(v[0], v[1]), cdouble(v[2], v[3]), cdouble(v[4], v[5]));
  }
  std::vector<UnitVec3> nodes(raw_nodes.begin(), raw_nodes.end());
  bool reuse = shared && shared->count() == count && shared->weights() == weights;
  for (std::size_t i = 0; i < count && reuse; ++i) {
    reuse = shared->nodes()[i].vec() == raw_nodes[i] || shared->nodes()[i] == nodes[i];
  }
  loaded.data.quad = reuse ? shared
                           : std::make_shared<const SphereQuadrature>(
                                 std::move(nodes), std::move(weights),
                                 quadrature_scheme_from_string(scheme_name), exact_degree);
  loaded.data.incidence.triad = Triad{UnitVec3(theta), UnitVec3(perp1), UnitVec3(perp2)};
  loaded.data.corrupted = corrupted != 0;
  return loaded;
}

void write_map_csv(const fs::path& path, const ImageMap& map) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "x,y,z,value\n";
  for (std::size_t i = 0; i < map.values.size(); ++i) {
    const Vec3 p = map.grid.point(i);
    out << fmt(p.x()) << ',' << fmt(p.y()) << ',' << fmt(p.z()) << ',' << fmt(map.values[i]) << '\n';
  }
}

void write_pgm(const fs::path& path, int width, int height, const std::vector<unsigned char>& pixels) {
  if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("write_pgm: pixel count does not match dimensions");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
}

SynthesizeResult run_synthesize(const ExperimentConfig& config, const fs::path& out_dir) {
  config.validate();
  fs::create_directories(out_dir);
  const std::string hash = config_hash(config);
  const Medium medium = config.make_medium();
  const InclusionSpec inclusion = config.make_inclusion();
  auto quad = std::make_shared<const SphereQuadrature>(
      build_quadrature(config.acquisition.quadrature_count, config.acquisition.quadrature_scheme));
  const auto incidences = configured_incidences(config);
  auto data = synthesize_far_field(medium, inclusion, incidences, quad);
  if (config.acquisition.add_noise) {
    const NoiseModel model = config.make_noise_model();
    data = corrupt(data, model, RngStream(model.seed));
  }

  SynthesizeResult result;
  json files = json::array();
  for (std::size_t k = 0; k < data.size(); ++k) {
    const int direction = static_cast<int>(k / 2) + 1;
    const int pol = data[k].incidence.pol_index;
    const std::string name = data_file_name(direction, pol);
    write_far_field_file(out_dir / name, data[k], hash, direction);
    result.files.push_back(out_dir / name);
    files.push_back({{"file", name}, {"direction", direction}, {"polarization", pol}});
  }
  json manifest;
  manifest["config_hash"] = hash;
  manifest["config"] = config_to_json(config);
  manifest["mode"] = config.acquisition.mode;
  manifest["quadrature"] = {{"count", quad->count()},
                            {"scheme", std::string(to_string(quad->scheme()))},
                            {"exact_degree", quad->exact_degree()}};
  manifest["files"] = files;
  result.manifest = out_dir / "manifest.json";
  write_json(result.manifest, manifest);
  return result;
}

ImageResult run_image(const ExperimentConfig& config, const fs::path& data_dir, const fs::path& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  const std::string hash = config_hash(config);
  const fs::path manifest_path = data_dir / "manifest.json";
  std::ifstream manifest_in(manifest_path);
  if (!manifest_in) throw std::runtime_error("missing manifest '" + manifest_path.string() + "'");
  json manifest;
  manifest_in >> manifest;
  if (manifest.value("config_hash", std::string()) != hash) {
    throw std::runtime_error("config hash mismatch: data was synthesized with " +
                             manifest.value("config_hash", std::string("<none>")) + ", config is " + hash);
  }

  std::vector<FarFieldData> datasets;
  std::shared_ptr<const SphereQuadrature> quad;
  for (const auto& entry : manifest.at("files")) {
    auto loaded = read_far_field_file(data_dir / entry.at("file").get<std::string>(), quad);
    if (loaded.config_hash != hash) {
      throw std::runtime_error("config hash mismatch in data file " + entry.at("file").get<std::string>());
    }
    if (!quad) quad = loaded.data.quad;
    if (loaded.data.quad != quad) {
      throw std::runtime_error("data files do not share one quadrature");
    }
    datasets.push_back(std::move(loaded.data));
  }
  if (datasets.empty()) throw std::runtime_error("manifest lists no data files");

  const Medium medium = config.make_medium();
  const TrialSpec trial = config.make_trial();
  const TopologicalResponse response(datasets, medium, trial);
  ImageResult result;
  result.multi = response.multi();
  result.map = image_grid(response, medium, config.make_grid());
  result.peak = locate_peak(result.map);
  result.map.peak = result.peak;

  fs::create_directories(out_dir);
  result.map_csv = out_dir / "map.csv";
  write_map_csv(result.map_csv, result.map);

  const double lambda = medium.wavelength();
  const auto& grid = result.map.grid;
  json slices = json::array();
  if (config.output.pgm_slices) {
    // (name, horizontal axis, vertical axis, fixed axis)
    const std::array<std::tuple<const char*, int, int, int>, 3> planes{
        {{"slice_xy.pgm", 0, 1, 2}, {"slice_xz.pgm", 0, 2, 1}, {"slice_yz.pgm", 1, 2, 0}}};
    for (const auto& [name, ha, va, fa] : planes) {
      const int w = grid.dims[static_cast<std::size_t>(ha)];
      const int h = grid.dims[static_cast<std::size_t>(va)];
      std::vector<double> values;
      values.reserve(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
      for (int r = 0; r < h; ++r) {
        for (int col = 0; col < w; ++col) {
          std::array<int, 3> idx{};
          idx[static_cast<std::size_t>(ha)] = col;
          idx[static_cast<std::size_t>(va)] = r;
          idx[static_cast<std::size_t>(fa)] = result.peak.index[static_cast<std::size_t>(fa)];
          values.push_back(result.map.values[grid.linear(idx[0], idx[1], idx[2])]);
        }
      }
      const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
      const double range = *hi - *lo;
      std::vector<unsigned char> pixels(values.size(), 0);
      for (std::size_t i = 0; i < values.size(); ++i) {
        pixels[i] = range > 0.0 ? static_cast<unsigned char>(std::lround(255.0 * (values[i] - *lo) / range)) : 0;
      }
      write_pgm(out_dir / name, w, h, pixels);
      result.slices.push_back(out_dir / name);
      slices.push_back({{"file", name}, {"min", *lo}, {"max", *hi}});
    }
  }

  const Vec3 z_d = config.make_inclusion().center;
  json summary;
  summary["config_hash"] = hash;
  summary["mode"] = result.multi ? "multi" : "single";
  summary["datasets"] = datasets.size();
  summary["kappa"] = medium.kappa;
  summary["wavelength"] = lambda;
  summary["grid"] = {{"origin", vec_json(grid.origin)}, {"spacing", grid.spacing}, {"dims", grid.dims}};
  summary["peak"] = {{"location", vec_json(result.peak.location)},
                     {"location_lambda", vec_json(result.peak.location / lambda)},
                     {"index", result.peak.index},
                     {"value", result.peak.value},
                     {"distance_to_inclusion_lambda", (result.peak.location - z_d).norm() / lambda}};
  summary["fwhm"] = result.peak.fwhm;
  summary["fwhm_lambda"] = result.peak.fwhm / lambda;
  summary["axis_fwhm_lambda"] = {result.peak.axis_fwhm[0] / lambda, result.peak.axis_fwhm[1] / lambda,
                                 result.peak.axis_fwhm[2] / lambda};
  summary["map_file"] = "map.csv";
  summary["map_scan_order"] = "x fastest, then y, then z";
  summary["runtime_file"] = "runtime.txt";
  if (config.output.pgm_slices) {
    summary["slices"] = {{"normalization", "per-slice min-max mapped linearly to 0..255"},
                         {"through", "peak grid point"},
                         {"files", slices}};
  }
  result.summary_json = out_dir / "summary.json";
  write_json(result.summary_json, summary);

  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ofstream(out_dir / "runtime.txt") << "runtime_seconds " << result.runtime_seconds << '\n';
  return result;
}

NoiseStudyResult run_noise_study(const ExperimentConfig& config, const fs::path& out_dir) {
  config.validate();
  const NoiseModel model = config.make_noise_model();
  const int n = config.acquisition.n_directions;
  const int n_scaled = n * config.noise.scaling_factor;
  const RngStream root(model.seed);
  const auto& tol = config.noise;

  const NoiseStudyReport main_study =
      monte_carlo_image_stats(config.make_noise_study(n), model, config.noise.trials, root.substream(0));
  NoiseStudyConfig scaled_config = config.make_noise_study(n_scaled);
  scaled_config.separations.clear();
  scaled_config.lattice_side = 0;
  const NoiseStudyReport scaled_study =
      monte_carlo_image_stats(scaled_config, model, config.noise.trials, root.substream(1));

  const bool degenerate = model.sigma == 0.0;
  bool all_passed = !degenerate;
  auto check = [&](double empirical, double theoretical, double tolerance) {
    const double err = relative_error(empirical, theoretical);
    const bool ok = std::isfinite(err) && err < tolerance;
    all_passed = all_passed && ok;
    return json{{"empirical", finite_or_null(empirical)},
                {"theoretical", finite_or_null(theoretical)},
                {"relative_error", finite_or_null(err)},
                {"tolerance", tolerance},
                {"passed", ok}};
  };

  json report;
  report["config_hash"] = config_hash(config);
  report["degenerate"] = degenerate;
  report["sigma"] = model.sigma;
  report["seed"] = model.seed;
  report["trials"] = config.noise.trials;
  report["n_directions"] = n;
  report["clean_value"] = main_study.clean_value;
  report["theoretical_mean"] = main_study.theoretical_mean;
  report["empirical_mean"] = main_study.empirical_mean;
  report["variance"] = check(main_study.empirical_variance, main_study.theoretical_variance,
                             tol.variance_tolerance);
  json curve = json::array();
  curve.push_back(json{{"separation_lambda", 0.0}, {"empirical", main_study.empirical_variance},
                       {"theoretical", main_study.theoretical_variance}});
  for (const auto& s : main_study.covariance_samples) {
    json entry = check(s.empirical, s.theoretical, tol.covariance_tolerance);
    entry["separation_lambda"] = s.separation / config.medium.wavelength;
    curve.push_back(entry);
  }
  report["covariance"] = curve;
  report["covariance_estimator"] = {
      {"axis", "z"},
      {"base_points", config.noise.lattice_side == 0 ? 1 : config.noise.lattice_side * config.noise.lattice_side},
      {"lattice_spacing_lambda", config.noise.lattice_spacing_lambda}};
  report["snr"] = check(main_study.empirical_snr, main_study.theoretical_snr, tol.snr_tolerance);
  const double ratio = main_study.empirical_variance / scaled_study.empirical_variance;
  json scaling = check(ratio, static_cast<double>(config.noise.scaling_factor), tol.scaling_tolerance);
  scaling["n"] = n;
  scaling["n_scaled"] = n_scaled;
  scaling["variance_n"] = main_study.empirical_variance;
  scaling["variance_n_scaled"] = scaled_study.empirical_variance;
  report["scaling"] = scaling;
  report["passed"] = all_passed;

  fs::create_directories(out_dir);
  NoiseStudyResult result{report, out_dir / "noise_study.json"};
  write_json(result.path, report);
  return result;
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

json ValidationReport::to_json() const {
  json list = json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name},
                    {"residual", finite_or_null(c.residual)},
                    {"tolerance", c.tolerance},
                    {"passed", c.passed}});
  }
  return json{{"config_hash", config_hash}, {"passed", passed()}, {"checks", list}};
}

ValidationReport run_validate(const ExperimentConfig& config, const fs::path& out_dir) {
  config.validate();
  const Medium medium = config.make_medium();
  const InclusionSpec inclusion = config.make_inclusion();
  const TrialSpec trial = config.make_trial();
  const double k = medium.kappa;
  const double lambda = medium.wavelength();
  RngStream rng(config.validation.seed);
  auto quad = std::make_shared<const SphereQuadrature>(
      build_quadrature(config.acquisition.quadrature_count, config.acquisition.quadrature_scheme));

  ValidationReport report;
  report.config_hash = config_hash(config);
  auto add = [&](std::string name, double residual, double tolerance) {
    report.checks.push_back({std::move(name), residual, tolerance, std::isfinite(residual) && residual < tolerance});
  };

  {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const Vec3 d = random_unit(rng) * (20.0 * rng.uniform() / k);
      cdouble sum = 0.0;
      for (std::size_t i = 0; i < quad->count(); ++i) {
        sum += quad->weights()[i] * std::exp(cdouble(0.0, k * quad->nodes()[i].dot(d)));
      }
      worst = std::max(worst, std::abs(sum - kFourPi * spherical_bessel_j(0, k * d.norm())) / kFourPi);
    }
    add("quadrature_j0_identity", worst, 1e-6);
  }

  std::vector<std::pair<Vec3, Vec3>> pairs;
  while (pairs.size() < 100) {
    const Vec3 x = lambda * Vec3(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    const Vec3 y = lambda * Vec3(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    if ((x - y).norm() > 0.05 * lambda) pairs.emplace_back(x, y);
  }
  {
    double dual = 0.0;
    double recip = 0.0;
    for (const auto& [x, y] : pairs) {
      const CMat3 g = green_dyad(medium, x, y);
      const Mat3 im = imag_green_dyad(medium, x, y);
      dual = std::max(dual, (g.imag() - im).norm() / im.norm());
      recip = std::max(recip, (g - green_dyad(medium, y, x).transpose()).norm() / g.norm());
    }
    add("imag_green_dual_formula", dual, 1e-10);
    add("green_reciprocity", recip, 1e-10);
  }
  {
    const double h = 1e-5 / k;
    double worst = 0.0;
    for (std::size_t p = 0; p < 20; ++p) {
      const auto& [x, y] = pairs[p];
      const CMat3 lhs = curl_fd([&](const Vec3& a) { return green_dyad(medium, a, y); }, x, h);
      const CMat3 rhs = curl_fd([&](const Vec3& a) { return green_dyad(medium, a, x); }, y, h).transpose();
      worst = std::max(worst, (lhs - rhs).norm() / lhs.norm());
    }
    add("curl_reciprocity_finite_difference", worst, 1e-4);
  }

  const Incidence probe = make_incidences(fibonacci_directions(7))[5];
  const std::array<Incidence, 1> single_inc{probe};
  const auto single = synthesize_far_field(medium, inclusion, single_inc, quad);
  {
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const Vec3 z = inclusion.center + random_unit(rng) * (2.0 * lambda * std::cbrt(rng.uniform()));
      const CVec3 closed = herglotz_closed_form(medium, inclusion, probe, z);
      const CVec3 numeric = herglotz(single.front().samples, *quad, medium, z);
      worst = std::max(worst, (numeric - closed).norm() / closed.norm());
    }
    add("herglotz_dual_path", worst, 1e-6);
  }

  const SearchGrid grid = SearchGrid::centered(
      inclusion.center, config.validation.grid_spacing_lambda * lambda, config.validation.grid_dims);
  const auto points = grid.points();
  {
    const TopologicalResponse response(single, medium, trial);
    const auto numeric = evaluate_points(response, medium, points);
    double peak = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double closed = td_single_closed_form(medium, inclusion, trial, probe, points[i]);
      peak = std::max(peak, std::abs(closed));
      worst = std::max(worst, std::abs(numeric[i] - closed));
    }
    add("td_single_oracle", worst / peak, 1e-6);
  }
  {
    const auto incidences = make_incidences(fibonacci_directions(config.validation.multi_directions));
    const auto multi = synthesize_far_field(medium, inclusion, incidences, quad);
    const TopologicalResponse response(multi, medium, trial);
    const auto numeric = evaluate_points(response, medium, points);
    double peak = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double closed = td_multi_closed_form(medium, inclusion, trial, points[i]);
      peak = std::max(peak, std::abs(closed));
      worst = std::max(worst, std::abs(numeric[i] - closed));
    }
    add("td_multi_oracle", worst / peak, 2e-2);
  }

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_json(out_dir / "validation.json", report.to_json());
  }
  return report;
}

}  // namespace tdscope
