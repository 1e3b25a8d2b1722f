#include "brre/maps.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "brre/errors.hpp"

namespace brre {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

void check_state(const MapPoint& x, double bound, std::size_t step) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || std::abs(x[i]) > bound) {
      throw OrbitEscape("orbit escaped at step " + std::to_string(step), step);
    }
  }
}
}  // namespace

double wrap_unit(double x) {
  double r = x - std::floor(x);
  // x - floor(x) rounds up to exactly 1 for tiny negative x.
  return r >= 1.0 ? 0.0 : r;
}

std::pair<double, double> standard_map_step(double x, double y, double k) {
  const double y_next = y - k / two_pi * std::sin(two_pi * x);
  return {wrap_unit(x + y_next), y_next};
}

std::pair<double, double> standard_map_inverse_step(double x, double y, double k) {
  const double x_prev = wrap_unit(x - y);
  return {x_prev, y + k / two_pi * std::sin(two_pi * x_prev)};
}

MapPoint StandardMap::step(const MapPoint& p) const {
  if (p.size() != 2) {
    throw ContractViolation("StandardMap::step: expected a 2-dimensional state");
  }
  auto [x, y] = standard_map_step(p[0], p[1], k_);
  return MapPoint{{x, y}};
}

RealVector embedding_observable(const MapPoint& p) {
  if (p.size() != 2) {
    throw ContractViolation("embedding_observable: expected (x, y)");
  }
  const double r = p[1] + 0.5;
  return RealVector{{r * std::cos(two_pi * p[0]), r * std::sin(two_pi * p[0])}};
}

RealVector EmbeddingObservable::evaluate(const MapPoint& p) const { return embedding_observable(p); }

std::optional<MapPoint> EmbeddingObservable::invert(const RealVector& v) const {
  if (v.size() != 2) return std::nullopt;
  const double r = std::hypot(v[0], v[1]);
  if (!(r > 0.0)) return std::nullopt;
  return MapPoint{{wrap_unit(std::atan2(v[1], v[0]) / two_pi), r - 0.5}};
}

Trajectory::Trajectory(RealMatrix samples) : samples_(std::move(samples)) {
  if (samples_.rows() < 1 || samples_.cols() < 1) {
    throw ContractViolation("Trajectory: need D >= 1 and N >= 1");
  }
}

Trajectory Trajectory::scalar(const std::vector<double>& values) {
  RealMatrix m(1, static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) m(0, static_cast<Eigen::Index>(i)) = values[i];
  return Trajectory(std::move(m));
}

Trajectory Trajectory::prefix(std::size_t n) const {
  if (n < 1 || n > size()) {
    throw ContractViolation("Trajectory::prefix: length " + std::to_string(n) +
                            " outside 1.." + std::to_string(size()));
  }
  return Trajectory(samples_.leftCols(static_cast<Eigen::Index>(n)));
}

Trajectory Trajectory::reversed() const { return Trajectory(samples_.rowwise().reverse()); }

Trajectory sample_trajectory(const DynamicalMap& map, const Observable& obs, const MapPoint& x0,
                             std::size_t n, const SamplingOptions& options) {
  if (n < 1) throw ContractViolation("sample_trajectory: n must be >= 1");
  if (x0.size() != map.state_dimension()) {
    throw ContractViolation("sample_trajectory: seed dimension does not match the map");
  }
  check_state(x0, options.escape_bound, 0);
  RealMatrix out(obs.output_dimension(), static_cast<Eigen::Index>(n));
  MapPoint x = x0;
  out.col(0) = obs.evaluate(x);
  for (std::size_t t = 1; t < n; ++t) {
    x = map.step(x);
    check_state(x, options.escape_bound, t);
    out.col(static_cast<Eigen::Index>(t)) = obs.evaluate(x);
  }
  return Trajectory(std::move(out));
}

OrbitCache::OrbitCache(std::shared_ptr<const DynamicalMap> map,
                       std::shared_ptr<const Observable> obs, MapPoint x0,
                       SamplingOptions options)
    : map_(std::move(map)), obs_(std::move(obs)), x0_(std::move(x0)), state_(x0_),
      options_(options) {
  if (x0_.size() != map_->state_dimension()) {
    throw ContractViolation("OrbitCache: seed dimension does not match the map");
  }
}

void OrbitCache::extend(std::size_t n) {
  if (n <= count_) return;
  if (static_cast<std::size_t>(buffer_.cols()) < n) {
    const auto cap = std::max<std::size_t>(n, 2 * static_cast<std::size_t>(buffer_.cols()));
    buffer_.conservativeResize(obs_->output_dimension(), static_cast<Eigen::Index>(cap));
  }
  if (count_ == 0) {
    check_state(state_, options_.escape_bound, 0);
    buffer_.col(0) = obs_->evaluate(state_);
    count_ = 1;
  }
  while (count_ < n) {
    state_ = map_->step(state_);
    check_state(state_, options_.escape_bound, count_);
    buffer_.col(static_cast<Eigen::Index>(count_)) = obs_->evaluate(state_);
    ++count_;
  }
}

Trajectory OrbitCache::take(std::size_t n) {
  if (n < 1) throw ContractViolation("OrbitCache::take: n must be >= 1");
  extend(n);
  return Trajectory(buffer_.leftCols(static_cast<Eigen::Index>(n)));
}

Trajectory FixedTrajectorySource::take(std::size_t n) {
  if (n > traj_.size()) {
    throw ContractViolation("trajectory source exhausted: requested " + std::to_string(n) +
                            " samples, have " + std::to_string(traj_.size()));
  }
  drawn_ = std::max(drawn_, n);
  return traj_.prefix(n);
}

}  // namespace brre
