#pragma once

// Dynamical maps, observables and trajectory sampling.

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>

#include "brre/numerics.hpp"

namespace brre {

using MapPoint = Eigen::VectorXd;

/// A deterministic discrete-time map on a state space of fixed dimension.
/// Implementations must be re-entrant.
class DynamicalMap {
public:
  virtual ~DynamicalMap() = default;
  virtual int state_dimension() const = 0;
  virtual MapPoint step(const MapPoint& x) const = 0;
};

/// h : X -> R^D. `invert` is optional; observables that can be inverted on their
/// range let the validation residual run in observable coordinates.
class Observable {
public:
  virtual ~Observable() = default;
  virtual int output_dimension() const = 0;
  virtual RealVector evaluate(const MapPoint& x) const = 0;
  virtual std::optional<MapPoint> invert(const RealVector& /*value*/) const { return std::nullopt; }
};

/// Reduces into [0, 1) with a floor-based wrap.
double wrap_unit(double x);

/// One step of the Chirikov standard map on T x R.
std::pair<double, double> standard_map_step(double x, double y, double k);

/// Inverse of standard_map_step.
std::pair<double, double> standard_map_inverse_step(double x, double y, double k);

class StandardMap final : public DynamicalMap {
public:
  explicit StandardMap(double k) : k_(k) {}
  int state_dimension() const override { return 2; }
  MapPoint step(const MapPoint& x) const override;
  double k() const { return k_; }

private:
  double k_;
};

/// (x, y) -> (y + 0.5) (cos 2 pi x, sin 2 pi x). Smooth on T x R and invertible for y > -0.5.
class EmbeddingObservable final : public Observable {
public:
  int output_dimension() const override { return 2; }
  RealVector evaluate(const MapPoint& p) const override;
  std::optional<MapPoint> invert(const RealVector& value) const override;
};

RealVector embedding_observable(const MapPoint& p);

class IdentityObservable final : public Observable {
public:
  explicit IdentityObservable(int dimension) : dimension_(dimension) {}
  int output_dimension() const override { return dimension_; }
  RealVector evaluate(const MapPoint& p) const override { return p; }
  std::optional<MapPoint> invert(const RealVector& value) const override { return value; }

private:
  int dimension_;
};

/// Time-ordered observable samples a_t, stored one sample per column (D x N).
class Trajectory {
public:
  Trajectory() = default;
  explicit Trajectory(RealMatrix samples);

  /// Builds a scalar trajectory from a list of values.
  static Trajectory scalar(const std::vector<double>& values);

  int dim() const { return static_cast<int>(samples_.rows()); }
  std::size_t size() const { return static_cast<std::size_t>(samples_.cols()); }
  auto sample(std::size_t t) const { return samples_.col(static_cast<Eigen::Index>(t)); }
  const RealMatrix& samples() const { return samples_; }

  Trajectory prefix(std::size_t n) const;
  Trajectory reversed() const;

private:
  RealMatrix samples_;
};

struct SamplingOptions {
  double escape_bound = 1e6;
};

/// a_t = obs(F^t(x0)) for t = 0..n-1, using exactly n - 1 map evaluations.
/// Throws OrbitEscape when a state coordinate becomes non-finite or exceeds the bound.
Trajectory sample_trajectory(const DynamicalMap& map, const Observable& obs, const MapPoint& x0,
                             std::size_t n, const SamplingOptions& options = {});

/// Supplies growing prefixes of one trajectory.
class TrajectorySource {
public:
  virtual ~TrajectorySource() = default;
  /// First n samples. Throws OrbitEscape or ContractViolation when unavailable.
  virtual Trajectory take(std::size_t n) = 0;
  /// Number of samples produced so far.
  virtual std::size_t samples_drawn() const = 0;
  virtual int dim() const = 0;
};

/// Caches the longest orbit seen and extends it on demand.
class OrbitCache final : public TrajectorySource {
public:
  OrbitCache(std::shared_ptr<const DynamicalMap> map, std::shared_ptr<const Observable> obs,
             MapPoint x0, SamplingOptions options = {});

  Trajectory take(std::size_t n) override;
  std::size_t samples_drawn() const override { return count_; }
  int dim() const override { return obs_->output_dimension(); }

  std::size_t map_evaluations() const { return count_ == 0 ? 0 : count_ - 1; }
  const MapPoint& initial_state() const { return x0_; }

private:
  void extend(std::size_t n);

  std::shared_ptr<const DynamicalMap> map_;
  std::shared_ptr<const Observable> obs_;
  MapPoint x0_;
  MapPoint state_;
  SamplingOptions options_;
  RealMatrix buffer_;
  std::size_t count_ = 0;
};

/// Serves prefixes of a trajectory that is already in memory.
class FixedTrajectorySource final : public TrajectorySource {
public:
  explicit FixedTrajectorySource(Trajectory traj) : traj_(std::move(traj)) {}
  Trajectory take(std::size_t n) override;
  std::size_t samples_drawn() const override { return drawn_; }
  int dim() const override { return traj_.dim(); }

private:
  Trajectory traj_;
  std::size_t drawn_ = 0;
};

}  // namespace brre
