#pragma once

#include <mutex>

namespace rspdc::analysis::detail {

// FFTW's planner is not thread-safe; every plan create/destroy takes this.
std::mutex& fftw_planner_mutex();

}  // namespace rspdc::analysis::detail
