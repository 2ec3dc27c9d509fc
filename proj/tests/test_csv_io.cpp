#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mollify/csv_io.hpp"
#include "mollify/errors.hpp"

using namespace mollify;

TEST_CASE("real formatting uses 17 significant digits") {
  CHECK(io::format_real(0.1) == "0.10000000000000001");
  CHECK(io::format_real(-2.0) == "-2");
  CHECK(io::format_real(std::nan("")) == "nan");
  CHECK(io::format_real(-INFINITY) == "-inf");
}

TEST_CASE("coefficients round-trip bit for bit") {
  const auto c = compute_coefficients(make_f2(), 32);
  std::stringstream ss;
  io::write_coefficients(ss, c, {{"signal", "f2"}, {"n", "32"}});
  const std::string text = ss.str();
  CHECK(text.rfind("# signal = f2\n# n = 32\nk,re,im\n", 0) == 0);
  const auto back = io::read_coefficients(ss);
  REQUIRE(back.N == 32);
  for (int k = -32; k <= 32; ++k) {
    CHECK(back[k].real() == c[k].real());
    CHECK(back[k].imag() == c[k].imag());
  }
}

TEST_CASE("samples round-trip bit for bit") {
  const auto g = sample_signal(make_f1(), 16);
  std::stringstream ss;
  io::write_samples(ss, g, {});
  const auto back = io::read_samples(ss);
  REQUIRE(back.N == 16);
  CHECK(back.values == g.values);
}

TEST_CASE("malformed inputs are rejected") {
  std::istringstream wrong_header("x,y\n1,2\n");
  CHECK_THROWS_AS(io::read_coefficients(wrong_header), ConfigError);
  std::istringstream gap("k,re,im\n-1,0,0\n1,0,0\n");
  CHECK_THROWS_AS(io::read_coefficients(gap), ConfigError);
  std::istringstream dup("k,re,im\n0,1,0\n0,1,0\n-1,0,0\n");
  CHECK_THROWS_AS(io::read_coefficients(dup), ConfigError);
  std::istringstream bad_number("nu,y,value\n0,0,abc\n1,1,0\n");
  CHECK_THROWS_AS(io::read_samples(bad_number), ConfigError);
  std::istringstream odd("nu,y,value\n0,0,1\n");
  CHECK_THROWS_AS(io::read_samples(odd), ConfigError);
  CHECK_THROWS_AS(io::read_samples_file("/nonexistent/file.csv"), ConfigError);
  CHECK_THROWS_AS(io::write_file("/nonexistent/dir/out.csv", "x"), ConfigError);
}

TEST_CASE("comment lines and CRLF endings are tolerated") {
  std::istringstream in("# produced elsewhere\r\nk,re,im\r\n-1,0,0.5\r\n0,1,0\r\n1,0,-0.5\r\n");
  const auto c = io::read_coefficients(in);
  CHECK(c.N == 1);
  CHECK(c.real);
  CHECK(c[1].imag() == -0.5);
}

TEST_CASE("report layout") {
  lab::ReconstructConfig cfg;
  cfg.N = 16;
  cfg.x_grid = {0.5, 1.0};
  const auto rep = lab::reconstruct(make_f1(), cfg);
  std::ostringstream ss;
  io::write_report(ss, rep, {{"command", "reconstruct"}});
  std::istringstream lines(ss.str());
  std::string l;
  std::getline(lines, l);
  CHECK(l == "# command = reconstruct");
  std::getline(lines, l);
  CHECK(l == "x,exact,recovered,error,reg_err,trunc_or_alias_err");
  int rows = 0;
  while (std::getline(lines, l)) ++rows;
  CHECK(rows == 2);
}
