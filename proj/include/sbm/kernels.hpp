#ifndef SBM_KERNELS_HPP_
#define SBM_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>

// Data-parallel inner loops behind the cycle statistics and the spectral
// baseline. A scalar reference implementation always exists; an AVX2 (x86)
// or NEON (aarch64) variant is selected once at startup when the CPU
// supports it. The variants are equivalence-tested against the reference.
namespace sbm::kernels {

struct Ops {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  std::uint64_t (*and_popcount)(const std::uint64_t*, const std::uint64_t*, std::size_t);
  const char* name;
};

const Ops& scalar_ops();
#ifdef SBM_HAVE_AVX2
const Ops& avx2_ops();
#endif
#ifdef SBM_HAVE_NEON
const Ops& neon_ops();
#endif

// Currently active backend (runtime-dispatched).
const Ops& active();
const char* backend_name();
// Force a backend by name ("scalar", "avx2", "neon"); throws if unavailable.
void set_backend(const std::string& name);

inline double dot(const double* x, const double* y, std::size_t n) {
  return active().dot(x, y, n);
}
inline double sum(const double* x, std::size_t n) { return active().sum(x, n); }
inline void axpy(double a, const double* x, double* y, std::size_t n) {
  active().axpy(a, x, y, n);
}
inline std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                                  std::size_t nwords) {
  return active().and_popcount(a, b, nwords);
}

}  // namespace sbm::kernels

#endif  // SBM_KERNELS_HPP_
