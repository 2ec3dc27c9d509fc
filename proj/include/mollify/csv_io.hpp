#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mollify/fourier.hpp"
#include "mollify/lab.hpp"

namespace mollify::io {

/// Ordered key/value pairs written as leading `# key = value` lines.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// 17 significant digits; "nan"/"inf"/"-inf" for non-finite values.
std::string format_real(double v);

void write_echo(std::ostream& os, const ConfigEcho& echo);

void write_coefficients(std::ostream& os, const SpectralCoefficients& c, const ConfigEcho& echo);
void write_samples(std::ostream& os, const GridSamples& g, const ConfigEcho& echo);
void write_report(std::ostream& os, const lab::ErrorReport& report, const ConfigEcho& echo);
void write_study_summary(std::ostream& os, const std::vector<lab::StudyRow>& rows,
                         const ConfigEcho& echo);

/// Rows must cover k = -N..N exactly once.
SpectralCoefficients read_coefficients(std::istream& is);
/// Rows must cover nu = 0..2N-1 exactly once.
GridSamples read_samples(std::istream& is);

SpectralCoefficients read_coefficients_file(const std::string& path);
GridSamples read_samples_file(const std::string& path);

/// Writes `content` to `path`, throwing ConfigError when the file cannot be written.
void write_file(const std::string& path, const std::string& content);

}  // namespace mollify::io
