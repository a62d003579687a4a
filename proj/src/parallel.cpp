#include "sbc/parallel.hpp"

#include <cstdlib>
#include <string>

namespace sbc {

unsigned worker_count() {
  if (const char* env = std::getenv("SBC_THREADS"); env && *env) {
    try {
      const unsigned long v = std::stoul(env);
      if (v > 0) return static_cast<unsigned>(std::min<unsigned long>(v, 1024));
    } catch (const std::exception&) {
      // fall through to auto
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace sbc
