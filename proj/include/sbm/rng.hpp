#ifndef SBM_RNG_HPP_
#define SBM_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace sbm {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Per-trial stream seed derived by counter, so trial i is independent of
// execution order and of the other trials' consumption.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s = master ^ (0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL);
  std::uint64_t b = splitmix64(s);
  return a ^ (b + 0x2545f4914f6cdd1dULL * index);
}

// Deterministic random stream. All variate mappings are implemented here so
// identical seeds give bit-identical draws on every platform (the standard
// pins mt19937_64 output but not the library distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // uniform in (0, 1]
  double next_double_open() {
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_double() < p; }

  // uniform integer in [0, bound)
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    __uint128_t m = static_cast<__uint128_t>(eng_()) * bound;
    return static_cast<std::uint64_t>(m >> 64);
  }

  // standard normal, Box-Muller with a cached spare
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = next_double_open();
    double v = next_double();
    double r = std::sqrt(-2.0 * std::log(u));
    double theta = 6.283185307179586476925286766559 * v;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  double normal(double mu, double sd) { return mu + sd * normal(); }

  // number of failures before the first success of a Bernoulli(p) sequence
  std::uint64_t skip_geometric(double p) {
    if (p >= 1.0) return 0;
    if (p <= 0.0) return UINT64_MAX;
    double u = next_double_open();
    double g = std::floor(std::log(u) / std::log1p(-p));
    if (g >= 9.2e18) return UINT64_MAX;
    return static_cast<std::uint64_t>(g);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sbm

#endif  // SBM_RNG_HPP_
