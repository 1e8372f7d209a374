#pragma once

#include "axionkit/timeseries.hpp"

#include <string>

inline axionkit::SeriesMeta named(std::string source) {
  axionkit::SeriesMeta m;
  m.source = std::move(source);
  return m;
}
