#pragma once

#include <mutex>

namespace axionkit::detail {

// FFTW's planner is not re-entrant; every plan create/destroy takes this.
std::mutex &fftw_planner_mutex();

} // namespace axionkit::detail
