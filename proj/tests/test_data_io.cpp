#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "dppnet/curve.hpp"
#include "dppnet/data_io.hpp"
#include "dppnet/errors.hpp"
#include "dppnet/rng.hpp"
#include "dppnet/simulate.hpp"

using namespace dppnet;

namespace {

std::string write_tmp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/dppnet_io_" + name;
  std::ofstream f(path, std::ios::binary);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("load a small pattern with an explicit window") {
  const std::string path = write_tmp(
      "toy.csv", "x_km,y_km\n1.0,2.0\n3.5,4.5\n9.0,9.5\n");
  LoadOptions opt;
  opt.window = Window::square(10.0);
  const Dataset ds = load_pattern(path, opt);
  CHECK(ds.pattern.size() == 3);
  CHECK(ds.warnings.empty());
  CHECK(ds.duplicates_removed == 0);
  CHECK(ds.pattern.window.area() == doctest::Approx(100.0));
}

TEST_CASE("points outside the window are rejected with warnings") {
  const std::string path = write_tmp(
      "outside.csv", "x_km,y_km\n1.0,2.0\n3.5,4.5\n12.0,3.0\n");
  LoadOptions opt;
  opt.window = Window::square(10.0);
  const Dataset ds = load_pattern(path, opt);
  CHECK(ds.pattern.size() == 2);
  CHECK(ds.warnings.size() == 1);
}

TEST_CASE("duplicates are removed and counted") {
  const std::string path = write_tmp(
      "dup.csv", "x_km,y_km\n1.0,2.0\n1.0,2.0\n3.0,4.0\n");
  LoadOptions opt;
  opt.window = Window::square(10.0);
  const Dataset ds = load_pattern(path, opt);
  CHECK(ds.pattern.size() == 2);
  CHECK(ds.duplicates_removed == 1);
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS(load_pattern("/nonexistent/file.csv"), ConfigError);
  const std::string bad =
      write_tmp("bad.csv", "x_km,y_km\n1.0,oops\n");
  CHECK_THROWS_AS(load_pattern(bad), ConfigError);
  const std::string empty_file = write_tmp("empty.csv", "x_km,y_km\n");
  CHECK_THROWS_AS(load_pattern(empty_file), ConfigError);
  const std::string all_out =
      write_tmp("allout.csv", "x_km,y_km\n20.0,20.0\n");
  LoadOptions opt;
  opt.window = Window::square(10.0);
  CHECK_THROWS_AS(load_pattern(all_out, opt), ConfigError);
  const std::string nohdr = write_tmp("nohdr.csv", "a,b\n1.0,2.0\n");
  CHECK_THROWS_AS(load_pattern(nohdr), ConfigError);
}

TEST_CASE("configurable column names") {
  const std::string path = write_tmp(
      "cols.csv", "site,east,north\nA,1.0,2.0\nB,3.0,4.0\n");
  LoadOptions opt;
  opt.x_column = "east";
  opt.y_column = "north";
  opt.window = Window::square(5.0);
  CHECK(load_pattern(path, opt).pattern.size() == 2);
}

TEST_CASE("intensity estimates match the fitted tables") {
  // synthetic deployment with the published counts: 115 points, 16 x 16
  SimConfig cfg;
  cfg.model = KernelModel::poisson(0.5);
  cfg.window = Window::square(16.0);
  cfg.rng_seed = 8;
  PointPattern p = sample_pattern(cfg, 0);
  Rng rng(2);
  while (p.size() > 115) p.points.pop_back();
  while (p.size() < 115) {
    p.points.emplace_back(rng.uniform(0.0, 16.0), rng.uniform(0.0, 16.0));
  }
  Dataset ds;
  ds.pattern = p;
  CHECK(estimate_intensity(ds) == doctest::Approx(115.0 / 256.0));
  CHECK(estimate_intensity(ds) == doctest::Approx(0.4492).epsilon(1e-3));

  Dataset la;
  la.pattern.window = Window::square(28.0);
  for (int i = 0; i < 184; ++i) la.pattern.points.emplace_back(0.1 * i, 0.2);
  CHECK(estimate_intensity(la) == doctest::Approx(184.0 / 784.0));
  CHECK(estimate_intensity(la) == doctest::Approx(0.2347).epsilon(1e-3));
}

TEST_CASE("save/load round-trips exactly") {
  SimConfig cfg;
  cfg.model = preset("houston-gauss");
  cfg.window = Window::square(12.0);
  cfg.rng_seed = 77;
  const PointPattern p = sample_pattern(cfg, 0);
  const std::string path = "/tmp/dppnet_io_roundtrip.csv";
  save_pattern(p, path);
  LoadOptions opt;
  opt.window = p.window;
  const Dataset ds = load_pattern(path, opt);
  REQUIRE(ds.pattern.size() == p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(ds.pattern.points[i] == p.points[i]);  // bitwise
  }
  // serialize again: identical bytes
  const std::string path2 = "/tmp/dppnet_io_roundtrip2.csv";
  save_pattern(ds.pattern, path2);
  std::ifstream a(path), b(path2);
  std::string sa((std::istreambuf_iterator<char>(a)),
                 std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)),
                 std::istreambuf_iterator<char>());
  CHECK(sa == sb);
}

TEST_CASE("preset parameters are the fitted tables") {
  const KernelModel hg = preset("houston-gauss");
  CHECK(hg.intensity() == 0.4492);
  CHECK(hg.alpha() == 0.8417);
  const KernelModel hc = preset("houston-cauchy");
  CHECK(hc.alpha() == 1.558);
  CHECK(hc.nu() == 3.424);
  const KernelModel hgg = preset("houston-gengamma");
  CHECK(hgg.alpha() == 2.539);
  CHECK(hgg.nu() == 2.63);
  const KernelModel lg = preset("la-gauss");
  CHECK(lg.intensity() == 0.2347);
  CHECK(lg.alpha() == 1.165);
  const KernelModel lc = preset("la-cauchy");
  CHECK(lc.alpha() == 2.13);
  CHECK(lc.nu() == 3.344);
  const KernelModel lgg = preset("la-gengamma");
  CHECK(lgg.alpha() == 3.446);
  CHECK(lgg.nu() == 2.505);
  CHECK(preset_names().size() == 6);
}

TEST_CASE("curve tables serialize deterministically") {
  dppnet::CurveTable c;
  c.meta["metric"] = "demo";
  c.push(0.5, 0.25, 0.251, true);
  c.push(1.0, 0.5, 0.499, false);
  const std::string csv = c.to_csv();
  CHECK(csv ==
        "abscissa,value,raw_value,reliable\n0.5,0.25,0.251,1\n1,0.5,0.499,0\n");
  const std::string js = c.to_json();
  CHECK(js.find("\"metric\": \"demo\"") != std::string::npos);
  CHECK(c.to_csv() == csv);
}

TEST_CASE("kernel config from JSON text") {
  const KernelModel a = model_from_json_text(R"({"preset": "la-gauss"})");
  CHECK(a.alpha() == 1.165);
  const KernelModel b = model_from_json_text(
      R"({"family": "cauchy", "lambda": 0.2, "alpha": 1.5, "nu": 2.0})");
  CHECK(b.family() == Family::Cauchy);
  CHECK(b.nu() == 2.0);
  const KernelModel c =
      model_from_json_text(R"({"family": "poisson", "lambda": 0.3})");
  CHECK(c.is_poisson());
  CHECK_THROWS_AS(model_from_json_text("{not json"), ConfigError);
  CHECK_THROWS_AS(model_from_json_text(R"({"family": "weird"})"), ConfigError);
  CHECK_THROWS_AS(model_from_json_text(R"({"lambda": 1.0})"), ConfigError);
}
