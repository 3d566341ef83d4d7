#ifndef WELLSCAN_SAMPLING_HPP
#define WELLSCAN_SAMPLING_HPP

#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wellscan {

/// Anything that hands out uniforms in (0,1), one per call.  Every sampler in
/// the library is written against this concept so tests can inject scripted
/// uniforms and replay a trace exactly.
template <class U>
concept UniformSource = requires(U& u) {
  { u.next_uniform() } -> std::convertible_to<double>;
};

namespace detail {

// Philox4x32-10 (Salmon et al., Random123).  Counter-based: block k of stream
// (seed, id) is a pure function of (k, id, seed).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) noexcept {
    constexpr std::uint32_t kM0 = 0xD2511F53u;
    constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u;
    constexpr std::uint32_t kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
      key[0] += kW0;
      key[1] += kW1;
    }
    return ctr;
  }
};

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// 53 random bits mapped onto the open interval (0,1).
inline double to_open_unit(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace detail

/// Seeded, splittable uniform stream.  Draw k of stream (seed, stream_id) is
/// a fixed function of (seed, stream_id, k); distinct stream ids address
/// disjoint Philox counter ranges, so replicates never share state.
class RngStream {
 public:
  RngStream() = default;
  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  /// Number of uniforms consumed so far.
  std::uint64_t draws() const noexcept { return counter_; }

  double next_uniform() noexcept {
    const std::uint64_t block_index = counter_ >> 1;
    if (!cached_ || block_index != cached_block_) refill(block_index);
    const std::uint64_t bits = (counter_ & 1u) ? cache_[1] : cache_[0];
    ++counter_;
    return detail::to_open_unit(bits);
  }

  /// Child stream for replicate `k`; the id is a hash of (stream_id, k), so
  /// nested splitting stays collision-resistant.
  RngStream substream(std::uint64_t k) const noexcept {
    return RngStream(seed_, detail::splitmix64(stream_id_ ^ detail::splitmix64(k + 0x5851F42D4C957F2Dull)));
  }

 private:
  void refill(std::uint64_t block_index) noexcept {
    const detail::Philox4x32::Counter ctr{
        static_cast<std::uint32_t>(block_index), static_cast<std::uint32_t>(block_index >> 32),
        static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)};
    const detail::Philox4x32::Key key{static_cast<std::uint32_t>(seed_),
                                      static_cast<std::uint32_t>(seed_ >> 32)};
    const auto out = detail::Philox4x32::block(ctr, key);
    cache_[0] = (std::uint64_t{out[0]} << 32) | out[1];
    cache_[1] = (std::uint64_t{out[2]} << 32) | out[3];
    cached_block_ = block_index;
    cached_ = true;
  }

  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::uint64_t counter_ = 0;
  std::uint64_t cached_block_ = 0;
  bool cached_ = false;
  std::array<std::uint64_t, 2> cache_{};
};

static_assert(UniformSource<RngStream>);

/// Replays a fixed list of uniforms; throws once the script runs out.
class ScriptedUniforms {
 public:
  explicit ScriptedUniforms(std::vector<double> values) : values_(std::move(values)) {}

  double next_uniform() {
    if (pos_ >= values_.size()) throw std::out_of_range("ScriptedUniforms: script exhausted");
    return values_[pos_++];
  }
  std::size_t consumed() const noexcept { return pos_; }

 private:
  std::vector<double> values_;
  std::size_t pos_ = 0;
};

/// (seed, stream_id) of a stream, or zeros for sources that carry none.
template <UniformSource U>
std::pair<std::uint64_t, std::uint64_t> stream_identity(const U& stream) {
  if constexpr (requires { stream.seed(); stream.stream_id(); }) {
    return {stream.seed(), stream.stream_id()};
  } else {
    return {0, 0};
  }
}

template <UniformSource U>
double next_uniform(U& stream) {
  return stream.next_uniform();
}

/// Exponential(rate) by inversion: -log(1-u)/rate, exactly one uniform.
template <UniformSource U>
double sample_exp(U& stream, double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("sample_exp: rate must be positive");
  const double u = stream.next_uniform();
  return -std::log1p(-u) / rate;
}

/// Uniform that makes sample_exp(rate) return exactly `x` (test helper).
inline double uniform_for_exp(double x, double rate) { return -std::expm1(-rate * x); }

/// Inverse of the standard normal CDF (Wichura, AS241 PPND16; ~1e-16 relative).
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must lie in (0,1)");
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r + 67265.770927008700853) * r +
                45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((r * 5226.495278852545925 + 28729.085735721942674) * r + 39307.89580009271061) * r +
                21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
               1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
            4.6303378461565452959) * r + 1.42343711074968357734) /
          (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
               0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
            2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
               0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
            5.4637849111641143699) * r + 6.6579046435011037772) /
          (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
               7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
            0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -val : val;
}

/// Standard normal by inversion (one uniform).
template <UniformSource U>
double sample_normal(U& stream) {
  return normal_quantile(stream.next_uniform());
}

/// Draw with density (1+x)^{-2} on (0,inf) by inversion: u/(1-u).
template <UniformSource U>
double sample_record_overshoot(U& stream) {
  const double u = stream.next_uniform();
  return u / (1.0 - u);
}

/// Points of a rate-`rate` Poisson process in (0, horizon], built as the
/// cumulative sum of Exponential(rate) gaps.  The gap that overshoots the
/// horizon is drawn and discarded.
template <UniformSource U>
std::vector<double> sample_poisson_arrivals(U& stream, double rate, double horizon) {
  if (!(rate > 0.0)) throw std::invalid_argument("sample_poisson_arrivals: rate must be positive");
  if (!(horizon > 0.0)) throw std::invalid_argument("sample_poisson_arrivals: horizon must be positive");
  std::vector<double> points;
  double t = 0.0;
  for (;;) {
    t += sample_exp(stream, rate);
    if (t > horizon) break;
    points.push_back(t);
  }
  return points;
}

}  // namespace wellscan

#endif  // WELLSCAN_SAMPLING_HPP
