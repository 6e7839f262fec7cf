#include "panelprec/random.hpp"

#include <algorithm>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/student_t_distribution.hpp>
#include <cctype>
#include <cmath>
#include <string>

#include "panelprec/errors.hpp"
#include "panelprec/stats.hpp"

namespace panelprec::rng {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

Stream::Stream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {
  std::uint64_t sm = mix64(seed + kGolden) ^ mix64(stream_id * kGolden + 0x632BE59BD9B4E019ULL);
  for (auto& word : state_) {
    sm += kGolden;
    word = mix64(sm);
  }
  // xoshiro must not start from the all-zero state.
  if (std::all_of(state_.begin(), state_.end(), [](auto w) { return w == 0; })) state_[0] = kGolden;
}

Stream::result_type Stream::operator()() noexcept {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Stream::uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

Stream Stream::substream(std::uint64_t index) const {
  return Stream(seed_, mix64(stream_id_ ^ mix64(index + 0xD1B54A32D192ED03ULL)));
}

void Stream::jump() noexcept {
  static constexpr std::uint64_t kJump[] = {0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL,
                                            0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL};
  std::array<std::uint64_t, 4> acc{};
  for (const auto word : kJump) {
    for (int b = 0; b < 64; ++b) {
      if (word & (std::uint64_t{1} << b))
        for (int i = 0; i < 4; ++i) acc[i] ^= state_[i];
      (*this)();
    }
  }
  state_ = acc;
}

SignalKind parse_signal_kind(std::string_view name) {
  const auto key = lower(name);
  if (key == "normal") return SignalKind::Normal;
  if (key == "lognormal") return SignalKind::LogNormal;
  if (key == "pareto") return SignalKind::Pareto;
  if (key == "student-t" || key == "studentt" || key == "student_t") return SignalKind::StudentT;
  throw ConfigError("unknown signal distribution: " + std::string(name));
}

std::string_view to_string(SignalKind kind) {
  switch (kind) {
    case SignalKind::Normal: return "Normal";
    case SignalKind::LogNormal: return "LogNormal";
    case SignalKind::Pareto: return "Pareto";
    case SignalKind::StudentT: return "Student-t";
  }
  return "?";
}

void DistributionSpec::validate() const {
  if (!(pareto_shape > 2.0)) throw ConfigError("pareto_shape must exceed 2 (finite variance)");
  if (!(t_dof > 2.0)) throw ConfigError("t_dof must exceed 2 (finite variance)");
}

void TailTransform::validate() const {
  if (!(sharpness > 0.0)) throw ConfigError("tail sharpness must be positive");
  if (!(boost >= 0.0)) throw ConfigError("tail boost must be >= 0");
}

double standard_normal(Stream& stream) {
  boost::random::normal_distribution<double> dist(0.0, 1.0);
  return dist(stream);
}

double student_t(Stream& stream, double dof) {
  boost::random::student_t_distribution<double> dist(dof);
  return dist(stream);
}

std::vector<double> sample_signal(const DistributionSpec& dist, std::size_t m, Stream& stream) {
  dist.validate();
  std::vector<double> out(m);
  switch (dist.kind) {
    case SignalKind::Normal: {
      boost::random::normal_distribution<double> normal;
      for (auto& v : out) v = normal(stream);
      break;
    }
    case SignalKind::LogNormal: {
      boost::random::normal_distribution<double> normal;
      for (auto& v : out) v = std::exp(normal(stream));
      break;
    }
    case SignalKind::Pareto: {
      // Inverse CDF of the standard Pareto with x_min = 1; 1 - U lies in (0, 1].
      const double inv_shape = 1.0 / dist.pareto_shape;
      for (auto& v : out) v = std::pow(1.0 - stream.uniform(), -inv_shape);
      break;
    }
    case SignalKind::StudentT: {
      boost::random::student_t_distribution<double> t(dist.t_dof);
      for (auto& v : out) v = t(stream);
      break;
    }
  }
  return out;
}

std::vector<double> add_calibrated_noise(std::span<const double> nu, double rho_target, Stream& stream) {
  if (!(rho_target > 0.0 && rho_target <= 1.0)) throw DomainError("add_calibrated_noise: rho must lie in (0, 1]");
  if (nu.size() < 2) throw DomainError("add_calibrated_noise: need at least two values");
  const double sd = stats::population_sd(nu);
  if (!(sd > 0.0)) throw DomainError("add_calibrated_noise: signal has zero variance");
  std::vector<double> x(nu.begin(), nu.end());
  if (rho_target == 1.0) return x;
  const double noise_sd = sd * std::sqrt(1.0 / (rho_target * rho_target) - 1.0);
  boost::random::normal_distribution<double> normal;
  for (auto& v : x) v += noise_sd * normal(stream);
  return x;
}

double superstar_transform(double z, const TailTransform& t) {
  if (t.boost == 0.0) return z;
  const double s = t.sharpness * (z - t.kink);
  // log(1 + e^s) without overflow.
  const double softplus = std::max(s, 0.0) + std::log1p(std::exp(-std::abs(s)));
  return z + t.boost * softplus / t.sharpness;
}

std::vector<double> superstar_transform(std::span<const double> z, const TailTransform& t) {
  t.validate();
  std::vector<double> out(z.size());
  std::transform(z.begin(), z.end(), out.begin(), [&](double v) { return superstar_transform(v, t); });
  return out;
}

std::vector<double> standardize(std::span<const double> x) {
  const double mu = stats::mean(x);
  const double sd = stats::population_sd(x);
  if (!(sd > 0.0)) throw DomainError("standardize: constant input");
  std::vector<double> out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [&](double v) { return (v - mu) / sd; });
  return out;
}

}  // namespace panelprec::rng
