#pragma once

#include <string>
#include <vector>

namespace parisi {

/// Deterministic static line chart: fixed canvas, axes box, one polyline.
/// Throws if the series is empty.
std::string render_line_chart(const std::vector<double>& xs,
                              const std::vector<double>& ys,
                              const std::string& x_label,
                              const std::string& y_label);

}  // namespace parisi
