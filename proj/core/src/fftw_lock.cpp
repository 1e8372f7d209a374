#include "fftw_lock.hpp"

namespace axionkit::detail {

std::mutex &fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

} // namespace axionkit::detail
