// igeo: mesh generation, integral-geometry estimators and consistency checks.
//
// Exit codes: 0 ok, 1 check failed, 2 usage, 3 I/O, 4 invalid mesh, 5 budget.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "igeo/convergence.hpp"
#include "igeo/estimators.hpp"
#include "igeo/measures.hpp"
#include "igeo/mesh.hpp"
#include "igeo/mesh_io.hpp"
#include "igeo/shapes.hpp"

using nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kIoFailure = 3, kInvalidMesh = 4, kBudget = 5 };

int exit_code_for(igeo::ErrorCode code) {
  switch (code) {
    case igeo::ErrorCode::kIo: return kIoFailure;
    case igeo::ErrorCode::kParse:
    case igeo::ErrorCode::kNotClosed:
    case igeo::ErrorCode::kDegenerateFacet: return kInvalidMesh;
    case igeo::ErrorCode::kInsufficientBudget: return kBudget;
    case igeo::ErrorCode::kInvalidArgument:
    case igeo::ErrorCode::kUnsupportedDimension:
    case igeo::ErrorCode::kInvalidFlag: return kUsage;
    default: return kCheckFailed;
  }
}

struct LoadedMesh {
  std::string path;
  std::string hash;
  igeo::SimplicialMesh mesh;
};

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

LoadedMesh load_mesh(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw igeo::Error(igeo::ErrorCode::kIo, "cannot open '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::istringstream text(bytes);
  return {path, fnv1a64(bytes), igeo::read_noff(text)};
}

ordered_json validation_json(const igeo::ValidationReport& report) {
  return {{"ok", report.ok()},
          {"closed", report.closed()},
          {"consistently_oriented", report.consistently_oriented()},
          {"outward", report.outward()},
          {"boundary_ridges", report.boundary_ridges.size()},
          {"nonmanifold_ridges", report.nonmanifold_ridges.size()},
          {"inconsistent_ridges", report.inconsistent_ridges.size()},
          {"degenerate_facets", report.degenerate_facets.size()},
          {"signed_volume", report.signed_volume},
          {"summary", report.summary()}};
}

ordered_json mesh_json(const LoadedMesh& m) {
  return {{"path", m.path},
          {"hash", m.hash},
          {"dim", m.mesh.dim()},
          {"vertices", m.mesh.num_vertices()},
          {"facets", m.mesh.num_facets()}};
}

ordered_json estimate_json(const igeo::Estimate& e) {
  return {{"value", e.value},
          {"std_error", e.std_error},
          {"samples", e.samples},
          {"discarded", e.discarded},
          {"seed", e.seed}};
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out || !(out << text << '\n')) throw igeo::Error(igeo::ErrorCode::kIo, "cannot write '" + out_path + "'");
}

// Wall time and worker count live outside "config" so reports are identical
// across --workers values apart from this block.
void add_runtime(ordered_json& report, unsigned workers, std::chrono::steady_clock::time_point start) {
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report["runtime"] = {{"workers", workers}, {"wall_time_s", seconds}};
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw igeo::Error(igeo::ErrorCode::kInvalidArgument, "cannot parse number '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string shape;
  int n = 3;
  int refine = -1;  // -1: per-shape default
  double radius = 1.0;
  std::string half = "0.5";
  int spikes = 6;
  double r_in = 0.6;
  double r_out = 1.0;
  double width = 1.0;
  double major = 2.0;
  double minor = 0.5;
  std::string out;
};

int run_gen(GenArgs a) {
  // A planar star defaults to the classic 2k-gon; everything else to level 3.
  if (a.refine < 0) a.refine = (a.shape == "star" && a.n == 2) ? 0 : 3;
  igeo::SimplicialMesh mesh = [&] {
    if (a.shape == "sphere") return igeo::shapes::make_sphere(a.n, a.refine, a.radius);
    if (a.shape == "box") {
      std::vector<double> half = parse_reals(a.half);
      if (half.size() == 1) half.assign(static_cast<std::size_t>(a.n), half[0]);
      return igeo::shapes::make_box(a.n, half);
    }
    if (a.shape == "star") return igeo::shapes::make_star(a.n, a.spikes, a.r_in, a.r_out, a.refine);
    if (a.shape == "reuleaux") return igeo::shapes::make_reuleaux(a.width, a.refine);
    return igeo::shapes::make_torus(a.major, a.minor, a.refine);
  }();
  igeo::write_noff_file(a.out, mesh);
  const igeo::ValidationReport report = igeo::validate_mesh(mesh);
  std::cout << "wrote " << a.out << ": n=" << mesh.dim() << " vertices=" << mesh.num_vertices()
            << " facets=" << mesh.num_facets() << "\n"
            << report.summary() << '\n';
  return report.ok() ? kOk : kInvalidMesh;
}

// ---------------------------------------------------------------------------

struct RunArgs {
  std::string mesh;
  std::uint64_t seed = 0;
  std::uint64_t samples = 10000;
  unsigned workers = 0;
  std::string out;
};

// Loads and validates the mesh; emits the validation report and returns
// nullopt when the mesh is unusable.
std::optional<LoadedMesh> load_valid(const RunArgs& a, const std::string& command) {
  LoadedMesh loaded = load_mesh(a.mesh);
  const igeo::ValidationReport report = igeo::validate_mesh(loaded.mesh);
  if (report.ok()) return loaded;
  ordered_json j;
  j["command"] = command;
  j["mesh"] = mesh_json(loaded);
  j["error"] = "InvalidMesh";
  j["validation"] = validation_json(report);
  emit(j.dump(2), a.out);
  return std::nullopt;
}

struct EstimateArgs : RunArgs {
  std::string method;
  double epsilon = 0.0;
  std::string dir;
  bool halton = false;
};

int run_estimate(const EstimateArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const std::optional<LoadedMesh> maybe = load_valid(a, "estimate");
  if (!maybe) return kInvalidMesh;
  const LoadedMesh& loaded = *maybe;
  const igeo::SimplicialMesh& mesh = loaded.mesh;
  const int n = mesh.dim();
  const igeo::ExecPolicy exec{a.workers};
  const igeo::RandomStream rs(a.seed);

  ordered_json config = {{"method", a.method}, {"mesh", a.mesh}, {"seed", a.seed}, {"samples", a.samples}};
  ordered_json result;
  if (a.method == "exact") {
    result = {{"value", igeo::exact_surface_area(mesh)}, {"std_error", 0.0}, {"samples", 0}, {"discarded", 0}};
    result["enclosed_volume"] = igeo::enclosed_volume(mesh);
  } else if (a.method == "cauchy") {
    config["halton"] = a.halton;
    igeo::CauchyOptions opts;
    opts.halton = a.halton;
    result = estimate_json(igeo::cauchy_area(mesh, a.samples, rs, opts, exec));
  } else if (a.method == "crofton") {
    result = estimate_json(igeo::crofton_area(mesh, a.samples, rs, exec));
  } else if (a.method == "tube") {
    config["epsilon"] = a.epsilon;
    result = estimate_json(igeo::tube_area(mesh, a.epsilon, a.samples, rs, exec));
  } else {
    igeo::Vector d = igeo::Vector::Zero(n);
    if (a.dir.empty()) {
      d[n - 1] = 1.0;
    } else {
      const std::vector<double> v = parse_reals(a.dir);
      if (static_cast<int>(v.size()) != n) {
        throw igeo::Error(igeo::ErrorCode::kInvalidArgument, "--dir needs " + std::to_string(n) + " components");
      }
      for (int k = 0; k < n; ++k) d[k] = v[static_cast<std::size_t>(k)];
    }
    const igeo::UnitDirection dir(d);
    config["dir"] = std::vector<double>(dir.coords().data(), dir.coords().data() + n);
    if (a.method == "project") {
      result = {{"value", igeo::projected_area_exact(mesh, dir)}, {"std_error", 0.0}, {"samples", 0}, {"discarded", 0}};
    } else {
      result = estimate_json(igeo::projected_area_raycast(mesh, dir, a.samples, rs, exec));
    }
  }
  ordered_json report = {{"command", "estimate"}, {"config", config}, {"mesh", mesh_json(loaded)}, {"result", result}};
  add_runtime(report, exec.resolved(), start);
  emit(report.dump(2), a.out);
  return kOk;
}

// ---------------------------------------------------------------------------

struct VolumeArgs : RunArgs {
  int r = 1;
  std::string mode = "body-shadow";
  std::uint64_t outer = 256;
  std::uint64_t inner = 4096;
};

void check_r(const igeo::SimplicialMesh& mesh, int r) {
  if (r < 1 || r > mesh.dim() - 1) {
    throw igeo::Error(igeo::ErrorCode::kInvalidArgument,
                      "--r must satisfy 1 <= r <= n-1 (n=" + std::to_string(mesh.dim()) + ")");
  }
}

int run_rvolume(const VolumeArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const std::optional<LoadedMesh> maybe = load_valid(a, "rvolume");
  if (!maybe) return kInvalidMesh;
  const LoadedMesh& loaded = *maybe;
  check_r(loaded.mesh, a.r);
  std::vector<igeo::RVolumeMode> modes;
  if (a.mode == "both") {
    modes = {igeo::RVolumeMode::kComponents, igeo::RVolumeMode::kBodyShadow};
  } else {
    modes = {igeo::parse_rvolume_mode(a.mode)};
  }
  const igeo::ExecPolicy exec{a.workers};
  ordered_json results = ordered_json::array();
  for (const igeo::RVolumeMode mode : modes) {
    const igeo::MeanVolume mv =
        igeo::mean_rvolume(loaded.mesh, a.r, mode, a.outer, a.inner, igeo::RandomStream(a.seed), exec);
    results.push_back({{"mode", igeo::to_string(mode)},
                       {"grassmannian_volume", mv.grassmannian_volume},
                       {"I", estimate_json(mv.integral)},
                       {"E", estimate_json(mv.mean)}});
  }
  ordered_json report = {
      {"command", "rvolume"},
      {"config", {{"mesh", a.mesh}, {"r", a.r}, {"mode", a.mode}, {"seed", a.seed}, {"outer", a.outer}, {"inner", a.inner}}},
      {"mesh", mesh_json(loaded)},
      {"results", results}};
  add_runtime(report, exec.resolved(), start);
  emit(report.dump(2), a.out);
  return kOk;
}

int run_recursion(const VolumeArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const std::optional<LoadedMesh> maybe = load_valid(a, "recursion");
  if (!maybe) return kInvalidMesh;
  const LoadedMesh& loaded = *maybe;
  check_r(loaded.mesh, a.r);
  const igeo::RVolumeMode mode = igeo::parse_rvolume_mode(a.mode);
  const igeo::ExecPolicy exec{a.workers};
  const igeo::RecursionResult res =
      igeo::recursion_check(loaded.mesh, a.r, mode, {a.outer, a.inner}, igeo::RandomStream(a.seed), exec);
  ordered_json report = {
      {"command", "recursion"},
      {"config",
       {{"mesh", a.mesh}, {"r", a.r}, {"mode", igeo::to_string(mode)}, {"seed", a.seed}, {"outer", a.outer}, {"inner", a.inner}}},
      {"mesh", mesh_json(loaded)},
      {"lhs", estimate_json(res.lhs)},
      {"rhs", estimate_json(res.rhs)},
      {"rel_gap", res.rel_gap},
      {"combined_rel_std_error", res.combined_rel_std_error},
      {"agrees", res.agrees()}};
  add_runtime(report, exec.resolved(), start);
  emit(report.dump(2), a.out);
  return res.agrees() ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------

int run_constants(int n, bool check, const std::string& out) {
  const igeo::measures::ConstantsTable table = igeo::measures::constants_table(n);
  const auto rows = [](const std::vector<igeo::measures::MeasureValue>& values) {
    ordered_json arr = ordered_json::array();
    for (std::size_t k = 0; k < values.size(); ++k) {
      arr.push_back({{"index", k}, {"value", values[k].value}, {"formula", values[k].formula_id}});
    }
    return arr;
  };
  ordered_json report = {{"command", "constants"},
                         {"config", {{"n", n}, {"check_recursion", check}}},
                         {"sphere_areas", rows(table.sphere_areas)},
                         {"ball_volumes", rows(table.ball_volumes)},
                         {"grassmannian_volumes", rows(table.grassmannian_volumes)}};
  bool ok = true;
  if (check) {
    constexpr double kTol = 1e-10;
    ordered_json checks = ordered_json::array();
    for (int r = 1; r <= n - 1; ++r) {
      const igeo::measures::BallRecursion b = igeo::measures::ball_recursion(n, r);
      const bool pass = b.rel_gap() < kTol;
      ok = ok && pass;
      checks.push_back({{"r", r}, {"lhs", b.lhs}, {"rhs", b.rhs}, {"rel_gap", b.rel_gap()}, {"pass", pass}});
    }
    report["ball_recursion"] = {{"tolerance", kTol}, {"rows", checks}, {"pass", ok}};
  }
  emit(report.dump(2), out);
  return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------

struct ConvergenceArgs : RunArgs {
  std::string estimator;
  std::string ladder = "100,1000,10000,100000,1000000";
  int replicates = 16;
};

int run_convergence(const ConvergenceArgs& a) {
  const std::optional<LoadedMesh> maybe = load_valid(a, "convergence");
  if (!maybe) return kInvalidMesh;
  const LoadedMesh& loaded = *maybe;
  const igeo::ConvergenceEstimator est = igeo::parse_convergence_estimator(a.estimator);
  std::vector<std::uint64_t> ladder;
  for (const double v : parse_reals(a.ladder)) {
    if (!(v >= 2.0) || v != std::floor(v)) {
      throw igeo::Error(igeo::ErrorCode::kInvalidArgument, "ladder entries must be integers >= 2");
    }
    ladder.push_back(static_cast<std::uint64_t>(v));
  }
  const auto rows =
      igeo::convergence_sweep(loaded.mesh, est, ladder, a.replicates, a.seed, igeo::ExecPolicy{a.workers});
  std::ostringstream csv;
  csv.precision(17);
  csv << "N,value,std_error,abs_error";
  std::vector<double> x, y;
  for (const auto& row : rows) {
    csv << '\n' << row.n << ',' << row.value << ',' << row.std_error << ',' << row.abs_error;
    x.push_back(static_cast<double>(row.n));
    y.push_back(row.abs_error);
  }
  emit(csv.str(), a.out);
  bool positive = x.size() >= 2;
  for (const double v : y) positive = positive && v > 0.0;
  if (positive) std::cerr << "loglog slope of abs_error: " << igeo::loglog_slope(x, y) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

int run_validate(const std::string& path) {
  const LoadedMesh loaded = load_mesh(path);
  const igeo::ValidationReport report = igeo::validate_mesh(loaded.mesh);
  ordered_json j = {{"command", "validate"}, {"mesh", mesh_json(loaded)}, {"validation", validation_json(report)}};
  std::cout << j.dump(2) << '\n';
  return report.ok() ? kOk : kInvalidMesh;
}

void add_run_flags(CLI::App* cmd, RunArgs& a) {
  cmd->add_option("mesh", a.mesh, "nOFF mesh file")->required();
  cmd->add_option("--seed", a.seed, "RNG seed");
  cmd->add_option("--workers", a.workers, "worker threads (0 = hardware concurrency)");
  cmd->add_option("-o,--output", a.out, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral-geometry estimators on closed simplicial meshes"};
  app.require_subcommand(1);
  int code = kOk;

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a test mesh");
  gen_cmd->add_option("shape", gen.shape, "sphere|box|star|reuleaux|torus")
      ->required()
      ->check(CLI::IsMember({"sphere", "box", "star", "reuleaux", "torus"}));
  gen_cmd->add_option("--n", gen.n, "ambient dimension");
  gen_cmd->add_option("--refine", gen.refine, "refinement level (default 3; 0 for a planar star)");
  gen_cmd->add_option("--radius", gen.radius, "sphere radius");
  gen_cmd->add_option("--half", gen.half, "box half extents, comma separated (one value = cube)");
  gen_cmd->add_option("--spikes", gen.spikes, "star spikes");
  gen_cmd->add_option("--r-in", gen.r_in, "star inner radius");
  gen_cmd->add_option("--r-out", gen.r_out, "star outer radius");
  gen_cmd->add_option("--width", gen.width, "Reuleaux width");
  gen_cmd->add_option("--major", gen.major, "torus major radius");
  gen_cmd->add_option("--minor", gen.minor, "torus minor radius");
  gen_cmd->add_option("-o,--output", gen.out, "output nOFF path")->required();
  gen_cmd->callback([&] { code = run_gen(gen); });

  EstimateArgs est;
  auto* est_cmd = app.add_subcommand("estimate", "surface area or projected area of a mesh");
  est_cmd->add_option("method", est.method, "exact|cauchy|crofton|tube|project|project-raycast")
      ->required()
      ->check(CLI::IsMember({"exact", "cauchy", "crofton", "tube", "project", "project-raycast"}));
  add_run_flags(est_cmd, est);
  est_cmd->add_option("--samples", est.samples, "sample budget");
  est_cmd->add_option("--epsilon", est.epsilon, "tube half width");
  est_cmd->add_option("--dir", est.dir, "projection direction, comma separated (default: last axis)");
  est_cmd->add_flag("--halton", est.halton, "Halton directions for cauchy (n = 2, 3)");
  est_cmd->callback([&] { code = run_estimate(est); });

  VolumeArgs vol;
  auto* vol_cmd = app.add_subcommand("rvolume", "mean projected (n-r)-volume I_r and E = I_r / m(G)");
  add_run_flags(vol_cmd, vol);
  vol_cmd->add_option("--r", vol.r, "codimension r, 1 <= r <= n-1");
  vol_cmd->add_option("--mode", vol.mode, "components|body-shadow|both")
      ->check(CLI::IsMember({"components", "body-shadow", "body_shadow", "both"}));
  vol_cmd->add_option("--outer", vol.outer, "sampled flats");
  vol_cmd->add_option("--inner", vol.inner, "points per flat");
  vol_cmd->callback([&] { code = run_rvolume(vol); });

  VolumeArgs rec;
  auto* rec_cmd = app.add_subcommand("recursion", "Monte Carlo check of the mean-volume recursion");
  add_run_flags(rec_cmd, rec);
  rec_cmd->add_option("--r", rec.r, "codimension r, 1 <= r <= n-1");
  rec_cmd->add_option("--mode", rec.mode, "components|body-shadow")
      ->check(CLI::IsMember({"components", "body-shadow", "body_shadow"}));
  rec_cmd->add_option("--outer", rec.outer, "outer samples per side");
  rec_cmd->add_option("--inner", rec.inner, "inner samples per outer sample");
  rec_cmd->callback([&] { code = run_recursion(rec); });

  int const_n = 3;
  bool const_check = false;
  std::string const_out;
  auto* const_cmd = app.add_subcommand("constants", "sphere, ball and Grassmannian measures");
  const_cmd->add_option("--n", const_n, "dimension")->check(CLI::Range(1, 64));
  const_cmd->add_flag("--check-recursion", const_check, "verify the closed-form ball recursion");
  const_cmd->add_option("-o,--output", const_out, "output path");
  const_cmd->callback([&] { code = run_constants(const_n, const_check, const_out); });

  ConvergenceArgs conv;
  auto* conv_cmd = app.add_subcommand("convergence", "error-versus-budget CSV");
  conv_cmd->add_option("estimator", conv.estimator, "cauchy|crofton")
      ->required()
      ->check(CLI::IsMember({"cauchy", "crofton"}));
  add_run_flags(conv_cmd, conv);
  conv_cmd->add_option("--ladder", conv.ladder, "comma-separated budgets");
  conv_cmd->add_option("--replicates", conv.replicates, "independent runs per budget")->check(CLI::PositiveNumber);
  conv_cmd->callback([&] { code = run_convergence(conv); });

  std::string validate_path;
  auto* val_cmd = app.add_subcommand("validate", "check closure, orientation and degeneracy");
  val_cmd->add_option("mesh", validate_path, "nOFF mesh file")->required();
  val_cmd->callback([&] { code = run_validate(validate_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const igeo::Error& e) {
    std::cerr << "igeo: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "igeo: " << e.what() << '\n';
    return kCheckFailed;
  }
  return code;
}
