#include "fft_lock.hpp"

namespace rspdc::analysis::detail {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace rspdc::analysis::detail
