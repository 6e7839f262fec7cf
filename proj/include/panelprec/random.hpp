#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace panelprec::rng {

/// Reproducible random stream identified by (seed, stream_id).
///
/// The engine is xoshiro256** (Blackman & Vigna). Its 256-bit state is filled
/// by SplitMix64 from a key mixed out of the seed and stream id, so distinct
/// ids give statistically independent sequences and the same pair yields the
/// same sequence on every platform. Satisfies UniformRandomBitGenerator.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t seed, std::uint64_t stream_id = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Independent child stream for sub-task `index` (trial, block, cell).
  Stream substream(std::uint64_t index) const;

  /// Advances the state by 2^128 draws.
  void jump() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_{};
};

/// SplitMix64 finalizer; a bijective 64-bit mix.
std::uint64_t mix64(std::uint64_t x) noexcept;

enum class SignalKind { Normal, LogNormal, Pareto, StudentT };

/// Parses "Normal", "LogNormal", "Pareto", "Student-t" (case-insensitive,
/// "StudentT" accepted). Throws ConfigError otherwise.
SignalKind parse_signal_kind(std::string_view name);
std::string_view to_string(SignalKind kind);

struct DistributionSpec {
  SignalKind kind = SignalKind::Normal;
  double pareto_shape = 3.0;
  double t_dof = 4.0;

  void validate() const;
};

/// Softplus "superstar" upper-tail boost applied to z-scores.
struct TailTransform {
  double kink = 1.6;
  double boost = 0.0;
  double sharpness = 3.0;

  void validate() const;
};

double standard_normal(Stream& stream);
double student_t(Stream& stream, double dof);

/// m independent draws of the signal distribution: N(0,1), lognormal(0,1),
/// Pareto(shape) on [1, inf), or Student-t(dof).
std::vector<double> sample_signal(const DistributionSpec& dist, std::size_t m, Stream& stream);

/// x = nu + eps, eps ~ N(0, s^2) with s = sd(nu) sqrt(1/rho^2 - 1) and sd the
/// population standard deviation of nu. rho_target = 1 returns nu unchanged.
std::vector<double> add_calibrated_noise(std::span<const double> nu, double rho_target, Stream& stream);

/// z + boost softplus(sharpness (z - kink)) / sharpness, elementwise.
std::vector<double> superstar_transform(std::span<const double> z, const TailTransform& t);
double superstar_transform(double z, const TailTransform& t);

/// (x - mean) / population sd. Throws DomainError for constant input.
std::vector<double> standardize(std::span<const double> x);

}  // namespace panelprec::rng
