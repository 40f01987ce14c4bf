#pragma once

#include <string>
#include <string_view>

#include "noether/gauge.hpp"

namespace noether {

/// Reads a gauge family from TOML text:
///
///   r = 1
///   m = 0
///   n = 2
///   [[g]]                # k, j are 1-based, i is 0-based
///   k = 1
///   i = 0
///   j = 1
///   value = 1.0          # or value = "b1", poly = [c0, c1, ...] in t, csv = "path"
///   [[f]]                # optional; presence enables the time transformation
///   i = 0
///   j = 1
///   value = 0.5
///
/// Unlisted coefficients are zero. CSV paths are relative to the working directory.
GaugeFamily parse_family(std::string_view text, const ScalePtr& scale);
GaugeFamily load_family(const std::string& path, const ScalePtr& scale);

}  // namespace noether
