#include "skein/parallel.hpp"

#include <cstdlib>
#include <string>

namespace skein {

namespace {

long env_long(const char* name, long fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    return std::stol(v);
  } catch (...) {
    return fallback;
  }
}

}  // namespace

int worker_count(int requested) {
  if (requested > 0) return requested;
  long env = env_long("SKEIN_THREADS", 0);
  if (env > 0) return static_cast<int>(env);
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::uint64_t default_budget() {
  long env = env_long("SKEIN_BUDGET", 0);
  return env > 0 ? static_cast<std::uint64_t>(env) : 100000000ULL;
}

int default_precision_bits() { return static_cast<int>(std::max(0L, env_long("SKEIN_PRECISION_BITS", 0))); }

}  // namespace skein
