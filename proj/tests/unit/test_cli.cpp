#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run igeo(const std::string& args) {
  const std::string cmd = std::string(IGEO_BINARY) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("igeo_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string at(const std::string& name) { return (workdir() / name).string(); }

json without_runtime(json j) {
  j.erase("runtime");
  return j;
}

}  // namespace

TEST_CASE("gen writes meshes with the expected facet counts") {
  Run r = igeo("gen sphere --n 3 --refine 4 -o " + at("s.noff"));
  CHECK(r.code == 0);
  CHECK(r.out.find("facets=5120") != std::string::npos);

  r = igeo("gen star --n 2 --spikes 5 --r-in 0.5 --r-out 1 -o " + at("star.noff"));
  CHECK(r.code == 0);
  CHECK(r.out.find("facets=10") != std::string::npos);

  r = igeo("gen box --n 4 --half 0.5,0.5,0.5,0.5 -o " + at("b4.noff"));
  CHECK(r.code == 0);
  CHECK(r.out.find("valid") != std::string::npos);

  CHECK(igeo("gen box --n 3 --half 0.5 -o " + at("b3.noff")).code == 0);
  CHECK(igeo("gen torus --refine 3 -o " + at("torus.noff")).code == 0);

  CHECK(igeo("gen sphere --n 7 -o " + at("bad.noff")).code == 2);
  CHECK(igeo("gen star --spikes 2 -o " + at("bad.noff")).code == 2);
  CHECK(igeo("gen blob -o " + at("bad.noff")).code == 2);
  CHECK(igeo("gen sphere -o /nonexistent_dir/x.noff").code == 3);
}

TEST_CASE("estimate reports agree with the exact area") {
  igeo("gen sphere --n 3 --refine 4 -o " + at("s.noff"));
  igeo("gen star --n 2 --spikes 5 --r-in 0.5 --r-out 1 -o " + at("star.noff"));

  const json exact = json::parse(igeo("estimate exact " + at("s.noff")).out);
  const json cauchy = json::parse(igeo("estimate cauchy " + at("s.noff") + " --samples 10000 --seed 7").out);
  CHECK(cauchy["config"]["seed"] == 7);
  CHECK(cauchy["mesh"]["hash"].get<std::string>().rfind("fnv1a64:", 0) == 0);
  CHECK(std::abs(cauchy["result"]["value"].get<double>() - exact["result"]["value"].get<double>()) <=
        3 * cauchy["result"]["std_error"].get<double>() + 1e-12);

  const json star_exact = json::parse(igeo("estimate exact " + at("star.noff")).out);
  const json crofton = json::parse(igeo("estimate crofton " + at("star.noff") + " --samples 100000 --seed 7").out);
  CHECK(std::abs(crofton["result"]["value"].get<double>() - star_exact["result"]["value"].get<double>()) <=
        3 * crofton["result"]["std_error"].get<double>());
  CHECK(crofton["result"]["discarded"].get<int>() == 0);

  const json proj = json::parse(igeo("estimate project " + at("star.noff") + " --dir 1,0").out);
  const json ray = json::parse(igeo("estimate project-raycast " + at("star.noff") + " --dir 1,0 --samples 50000").out);
  CHECK(std::abs(ray["result"]["value"].get<double>() - proj["result"]["value"].get<double>()) <=
        3 * ray["result"]["std_error"].get<double>());

  const json tube = json::parse(igeo("estimate tube " + at("s.noff") + " --epsilon 0.05 --samples 200000").out);
  CHECK(std::abs(tube["result"]["value"].get<double>() - 4 * M_PI) < 0.2);
}

TEST_CASE("reports are identical across worker counts") {
  igeo("gen star --n 2 --spikes 5 --r-in 0.5 --r-out 1 -o " + at("star.noff"));
  const Run a = igeo("estimate crofton " + at("star.noff") + " --samples 20000 --seed 3 --workers 1");
  const Run b = igeo("estimate crofton " + at("star.noff") + " --samples 20000 --seed 3 --workers 4");
  CHECK(without_runtime(json::parse(a.out)) == without_runtime(json::parse(b.out)));
  CHECK(without_runtime(json::parse(a.out)).dump() == without_runtime(json::parse(b.out)).dump());
}

TEST_CASE("rvolume, recursion and constants") {
  igeo("gen sphere --n 3 --refine 3 -o " + at("s3.noff"));
  igeo("gen box --n 3 --half 0.5 -o " + at("b3.noff"));

  const json rv = json::parse(igeo("rvolume " + at("s3.noff") + " --r 1 --mode both --outer 32 --inner 512").out);
  REQUIRE(rv["results"].size() == 2);
  CHECK(rv["results"][0]["mode"] == "components");
  CHECK(rv["results"][1]["mode"] == "body_shadow");
  const double i1 = rv["results"][1]["I"]["value"].get<double>();
  CHECK(std::abs(i1 - 2 * M_PI * M_PI) < 0.03 * 2 * M_PI * M_PI);
  CHECK(std::abs(rv["results"][1]["E"]["value"].get<double>() - M_PI) < 0.03 * M_PI);
  CHECK(igeo("rvolume " + at("s3.noff") + " --r 3").code == 2);
  CHECK(igeo("rvolume " + at("s3.noff") + " --r 1 --mode sideways").code == 2);

  const Run rec = igeo("recursion " + at("b3.noff") + " --r 1 --mode body-shadow --outer 200 --inner 200");
  CHECK(rec.code == 0);
  const json rj = json::parse(rec.out);
  CHECK(rj["agrees"] == true);
  CHECK(rj["rel_gap"].get<double>() < 0.03);

  CHECK(igeo("recursion " + at("b3.noff") + " --r 1 --outer 2 --inner 1").code == 5);

  const Run c = igeo("constants --n 4 --check-recursion");
  CHECK(c.code == 0);
  const json cj = json::parse(c.out);
  CHECK(cj["ball_recursion"]["pass"] == true);
  CHECK(cj["sphere_areas"][2]["value"].get<double>() == doctest::Approx(4 * M_PI));
}

TEST_CASE("convergence CSV") {
  igeo("gen box --n 3 --half 0.5 -o " + at("b3.noff"));
  const Run r = igeo("convergence crofton " + at("b3.noff") + " --ladder 100,1000 --replicates 4 --seed 1");
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string header, row1, row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  CHECK(header == "N,value,std_error,abs_error");
  CHECK(row1.rfind("100,", 0) == 0);
  CHECK(row2.rfind("1000,", 0) == 0);
}

TEST_CASE("exit codes for bad input") {
  CHECK(igeo("").code == 2);
  CHECK(igeo("estimate cauchy /nonexistent/mesh.noff").code == 3);

  {
    std::ofstream bad(at("garbage.noff"));
    bad << "nOFF\n3\n3 1\n0 0 0\n";
  }
  CHECK(igeo("estimate exact " + at("garbage.noff")).code == 4);

  {
    std::ofstream open(at("open.noff"));
    open << "nOFF\n3\n3 1\n0 0 0\n1 0 0\n0 1 0\n0 1 2\n";
  }
  const Run r = igeo("estimate exact " + at("open.noff"));
  CHECK(r.code == 4);
  CHECK(json::parse(r.out)["validation"]["closed"] == false);
  CHECK(igeo("validate " + at("open.noff")).code == 4);

  igeo("gen box --n 3 --half 0.5 -o " + at("b3.noff"));
  CHECK(igeo("estimate tube " + at("b3.noff") + " --epsilon 0.5").code == 2);
  CHECK(igeo("estimate bogus " + at("b3.noff")).code == 2);
  CHECK(igeo("estimate project " + at("b3.noff") + " --dir 1,0").code == 2);
}
