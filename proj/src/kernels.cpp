#include "sbm/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace sbm::kernels {
namespace {

const Ops* detect() {
#ifdef SBM_HAVE_AVX2
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return &avx2_ops();
  }
#endif
#ifdef SBM_HAVE_NEON
  return &neon_ops();
#endif
  return &scalar_ops();
}

std::atomic<const Ops*> g_active{nullptr};

}  // namespace

const Ops& active() {
  const Ops* ops = g_active.load(std::memory_order_acquire);
  if (!ops) {
    ops = detect();
    g_active.store(ops, std::memory_order_release);
  }
  return *ops;
}

const char* backend_name() { return active().name; }

void set_backend(const std::string& name) {
  if (name == "scalar") {
    g_active.store(&scalar_ops(), std::memory_order_release);
    return;
  }
#ifdef SBM_HAVE_AVX2
  if (name == "avx2") {
    if (!(__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")))
      throw std::runtime_error("avx2 backend not supported on this CPU");
    g_active.store(&avx2_ops(), std::memory_order_release);
    return;
  }
#endif
#ifdef SBM_HAVE_NEON
  if (name == "neon") {
    g_active.store(&neon_ops(), std::memory_order_release);
    return;
  }
#endif
  throw std::runtime_error("unknown kernel backend: " + name);
}

}  // namespace sbm::kernels
