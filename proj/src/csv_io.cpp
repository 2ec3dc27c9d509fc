#include "mollify/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "mollify/errors.hpp"

namespace mollify::io {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  return out;
}

double parse_real(const std::string& s, std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw ConfigError("line " + std::to_string(line_no) + ": not a number: '" + s + "'");
  return v;
}

long parse_int(const std::string& s, std::size_t line_no) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size())
    throw ConfigError("line " + std::to_string(line_no) + ": not an integer: '" + s + "'");
  return v;
}

// Data rows of a CSV with the given header; comment and blank lines are skipped.
std::vector<std::pair<std::size_t, std::vector<std::string>>> read_rows(std::istream& is,
                                                                        const std::string& header,
                                                                        std::size_t width) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      if (line != header) throw ConfigError("expected header '" + header + "', got '" + line + "'");
      seen_header = true;
      continue;
    }
    auto fields = split_fields(line);
    if (fields.size() != width)
      throw ConfigError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                        " fields");
    rows.emplace_back(line_no, std::move(fields));
  }
  if (!seen_header) throw ConfigError("missing header '" + header + "'");
  return rows;
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_echo(std::ostream& os, const ConfigEcho& echo) {
  for (const auto& [k, v] : echo) os << "# " << k << " = " << v << '\n';
}

void write_coefficients(std::ostream& os, const SpectralCoefficients& c, const ConfigEcho& echo) {
  write_echo(os, echo);
  os << "k,re,im\n";
  for (int k = -c.N; k <= c.N; ++k)
    os << k << ',' << format_real(c[k].real()) << ',' << format_real(c[k].imag()) << '\n';
}

void write_samples(std::ostream& os, const GridSamples& g, const ConfigEcho& echo) {
  write_echo(os, echo);
  os << "nu,y,value\n";
  for (std::size_t nu = 0; nu < g.values.size(); ++nu)
    os << nu << ',' << format_real(g.node(static_cast<int>(nu))) << ','
       << format_real(g.values[nu]) << '\n';
}

void write_report(std::ostream& os, const lab::ErrorReport& report, const ConfigEcho& echo) {
  write_echo(os, echo);
  for (const auto& note : report.notes) os << "# note: " << note << '\n';
  os << "x,exact,recovered,error,reg_err,trunc_or_alias_err\n";
  const bool exact = report.has_exact();
  const double nan = std::nan("");
  for (std::size_t i = 0; i < report.x.size(); ++i) {
    os << format_real(report.x[i]) << ',' << format_real(exact ? report.exact[i] : nan) << ','
       << format_real(report.recovered[i]) << ',' << format_real(exact ? report.error[i] : nan)
       << ',' << format_real(exact ? report.regularization[i] : nan) << ','
       << format_real(exact ? report.split[i] : nan) << '\n';
  }
}

void write_study_summary(std::ostream& os, const std::vector<lab::StudyRow>& rows,
                         const ConfigEcho& echo) {
  write_echo(os, echo);
  os << "N,max_err_interior,slope,r2,loss_onset_x\n";
  for (const auto& r : rows)
    os << r.N << ',' << format_real(r.max_err_interior) << ',' << format_real(r.fit.slope) << ','
       << format_real(r.fit.r2) << ','
       << format_real(r.loss_onset_x ? *r.loss_onset_x : std::nan("")) << '\n';
}

SpectralCoefficients read_coefficients(std::istream& is) {
  const auto rows = read_rows(is, "k,re,im", 3);
  std::map<long, std::complex<double>> by_k;
  for (const auto& [line_no, f] : rows) {
    const long k = parse_int(f[0], line_no);
    if (!by_k.emplace(k, std::complex<double>(parse_real(f[1], line_no), parse_real(f[2], line_no))).second)
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate k = " + f[0]);
  }
  if (by_k.empty() || by_k.size() % 2 == 0) throw ConfigError("coefficient file must list k = -N..N");
  const long N = static_cast<long>(by_k.size() / 2);
  if (by_k.begin()->first != -N || by_k.rbegin()->first != N)
    throw ConfigError("coefficient file must list k = -N..N");
  std::vector<std::complex<double>> vals;
  vals.reserve(by_k.size());
  for (const auto& [k, v] : by_k) vals.push_back(v);
  SpectralCoefficients c(static_cast<int>(N), std::move(vals));
  bool real = true;
  for (int k = 1; k <= c.N && real; ++k) real = c[-k] == std::conj(c[k]);
  c.real = real && c[0].imag() == 0.0;
  return c;
}

GridSamples read_samples(std::istream& is) {
  const auto rows = read_rows(is, "nu,y,value", 3);
  std::map<long, double> by_nu;
  for (const auto& [line_no, f] : rows) {
    const long nu = parse_int(f[0], line_no);
    parse_real(f[1], line_no);
    if (!by_nu.emplace(nu, parse_real(f[2], line_no)).second)
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate nu = " + f[0]);
  }
  if (by_nu.empty() || by_nu.size() % 2 != 0) throw ConfigError("sample file must list nu = 0..2N-1");
  if (by_nu.begin()->first != 0 || by_nu.rbegin()->first != static_cast<long>(by_nu.size()) - 1)
    throw ConfigError("sample file must list nu = 0..2N-1");
  std::vector<double> vals;
  vals.reserve(by_nu.size());
  for (const auto& [nu, v] : by_nu) vals.push_back(v);
  const int N = static_cast<int>(vals.size() / 2);
  return GridSamples(N, std::move(vals));
}

SpectralCoefficients read_coefficients_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open coefficient file '" + path + "'");
  return read_coefficients(in);
}

GridSamples read_samples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open sample file '" + path + "'");
  return read_samples(in);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
  if (!out) throw ConfigError("write failed for '" + path + "'");
}

}  // namespace mollify::io
