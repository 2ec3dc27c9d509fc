#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mollify {

/// Closed-form evaluator on the half-open interval [begin, end) of [0, 2pi).
struct Piece {
  double begin = 0.0;
  double end = 0.0;
  std::function<double(double)> eval;
};

/// A 2pi-periodic, piecewise analytic signal with an explicit edge list.
///
/// Pieces partition [0, 2pi) in order. Edges are sorted locations in [0, 2pi)
/// where the periodic extension is treated as singular; they drive the
/// dilation policy and need not coincide with every piece boundary.
class PiecewiseSignal {
 public:
  PiecewiseSignal(std::string name, std::vector<Piece> pieces, std::vector<double> edges,
                  std::function<double(double)> custom_theta = {});

  /// Value at x (reduced modulo 2pi); edge points belong to the right-hand piece.
  double operator()(double x) const;

  const std::string& name() const { return name_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<double>& edges() const { return edges_; }

  /// Signal-specific theta(x) formula, if the signal defines one.
  const std::function<double(double)>& custom_theta() const { return custom_theta_; }

 private:
  std::string name_;
  std::vector<Piece> pieces_;
  std::vector<double> edges_;
  std::function<double(double)> custom_theta_;
};

/// Reduce x into [0, 2pi).
double reduce_angle(double x);

/// Reduce x into [-pi, pi).
double wrap_centered(double x);

PiecewiseSignal make_f1();
PiecewiseSignal make_f2();

/// Single-piece signal on [0, 2pi) with no edges (smooth periodic helper).
PiecewiseSignal make_smooth(std::string name, std::function<double(double)> fn);

/// Periodic extension of y^r from [-pi, pi), expressed on [0, 2pi).
PiecewiseSignal make_monomial(int r);

/// Built-in signal registry: "f1", "f2", "sin", "smooth" (sin(x) e^{cos x}).
std::optional<PiecewiseSignal> builtin_signal(std::string_view name);

/// d(x): periodic distance from x to the nearest edge, in [0, pi].
/// An empty edge list means "smooth signal" and yields pi.
double distance_to_edge(std::span<const double> edges, double x);

/// How theta(x) is chosen before flooring.
struct ThetaPolicy {
  enum class Mode { nearest_edge, custom };
  Mode mode = Mode::nearest_edge;
  /// floor(N) = floor_scale / N.
  double floor_scale = 0.25;

  static ThetaPolicy spectral_default() { return {Mode::nearest_edge, 0.25}; }
  static ThetaPolicy discrete_default() { return {Mode::nearest_edge, 2.0}; }

  double floor(int N) const { return floor_scale / static_cast<double>(N); }
};

/// theta = d(x)/pi (or the custom formula), raised to the policy floor, clipped to 1.
double theta_of(const ThetaPolicy& policy, const PiecewiseSignal& sig, double x, int N);

/// theta for data with an edge list only (no closed form).
double theta_of(const ThetaPolicy& policy, std::span<const double> edges, double x, int N);

}  // namespace mollify
