#include "mollify/signals.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "mollify/constants.hpp"
#include "mollify/errors.hpp"

namespace mollify {

double reduce_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a value just below a multiple of 2pi can round up to 2pi itself.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double wrap_centered(double x) {
  double r = reduce_angle(x + kPi) - kPi;
  return r;
}

PiecewiseSignal::PiecewiseSignal(std::string name, std::vector<Piece> pieces,
                                 std::vector<double> edges,
                                 std::function<double(double)> custom_theta)
    : name_(std::move(name)),
      pieces_(std::move(pieces)),
      edges_(std::move(edges)),
      custom_theta_(std::move(custom_theta)) {
  if (pieces_.empty()) throw ConfigError("signal '" + name_ + "' has no pieces");
  if (pieces_.front().begin != 0.0 || pieces_.back().end != kTwoPi)
    throw ConfigError("signal '" + name_ + "': pieces must cover [0, 2pi)");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!(pieces_[i].end > pieces_[i].begin) || !pieces_[i].eval)
      throw ConfigError("signal '" + name_ + "': malformed piece");
    if (i + 1 < pieces_.size() && pieces_[i].end != pieces_[i + 1].begin)
      throw ConfigError("signal '" + name_ + "': pieces leave a gap or overlap");
  }
  for (double& e : edges_) e = reduce_angle(e);
  std::sort(edges_.begin(), edges_.end());
}

double PiecewiseSignal::operator()(double x) const {
  const double y = reduce_angle(x);
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), y,
                             [](double v, const Piece& p) { return v < p.end; });
  if (it == pieces_.end()) --it;
  return it->eval(y);
}

PiecewiseSignal make_f1() {
  return PiecewiseSignal("f1",
                         {{0.0, kPi, [](double x) { return std::sin(0.5 * x); }},
                          {kPi, kTwoPi, [](double x) { return -std::sin(0.5 * x); }}},
                         {0.0, kPi});
}

PiecewiseSignal make_f2() {
  const double ep = std::exp(kPi);
  auto theta = [](double x) {
    const double y = reduce_angle(x);
    const double left = std::max(0.0, std::min(y, 0.5 * kPi - y));
    const double right = std::max(0.0, std::min(y - 0.5 * kPi, kTwoPi - y));
    return (left + right) / kPi;
  };
  return PiecewiseSignal(
      "f2",
      {{0.0, 0.5 * kPi,
        [ep](double x) { return (2.0 * std::exp(2.0 * x) - 1.0 - ep) / (ep - 1.0); }},
       {0.5 * kPi, kTwoPi, [](double x) { return -std::sin(2.0 * x / 3.0 - kPi / 3.0); }}},
      {0.0, 0.5 * kPi}, theta);
}

PiecewiseSignal make_smooth(std::string name, std::function<double(double)> fn) {
  return PiecewiseSignal(std::move(name), {{0.0, kTwoPi, std::move(fn)}}, {});
}

PiecewiseSignal make_monomial(int r) {
  if (r < 0) throw ConfigError("monomial order must be nonnegative");
  const int order = r;
  return PiecewiseSignal(
      "y^" + std::to_string(r),
      {{0.0, kPi, [order](double y) { return std::pow(y, order); }},
       {kPi, kTwoPi, [order](double y) { return std::pow(y - kTwoPi, order); }}},
      r % 2 == 1 ? std::vector<double>{kPi} : std::vector<double>{});
}

std::optional<PiecewiseSignal> builtin_signal(std::string_view name) {
  if (name == "f1") return make_f1();
  if (name == "f2") return make_f2();
  if (name == "sin") return make_smooth("sin", [](double x) { return std::sin(x); });
  if (name == "smooth")
    return make_smooth("smooth", [](double x) { return std::sin(x) * std::exp(std::cos(x)); });
  return std::nullopt;
}

double distance_to_edge(std::span<const double> edges, double x) {
  double d = kPi;
  const double y = reduce_angle(x);
  for (double e : edges) {
    const double diff = std::abs(y - reduce_angle(e));
    d = std::min(d, std::min(diff, kTwoPi - diff));
  }
  return d;
}

namespace {

double apply_floor(const ThetaPolicy& policy, double theta, int N) {
  if (N < 2) throw ConfigError("theta_of: N must be >= 2");
  if (!(policy.floor_scale > 0.0)) throw ConfigError("theta_of: floor scale must be positive");
  return std::min(1.0, std::max(theta, policy.floor(N)));
}

}  // namespace

double theta_of(const ThetaPolicy& policy, std::span<const double> edges, double x, int N) {
  return apply_floor(policy, distance_to_edge(edges, x) / kPi, N);
}

double theta_of(const ThetaPolicy& policy, const PiecewiseSignal& sig, double x, int N) {
  if (policy.mode == ThetaPolicy::Mode::custom && sig.custom_theta())
    return apply_floor(policy, sig.custom_theta()(x), N);
  return theta_of(policy, sig.edges(), x, N);
}

}  // namespace mollify
