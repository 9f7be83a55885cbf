#include "parisi/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace parisi {

std::string render_line_chart(const std::vector<double>& xs,
                              const std::vector<double>& ys,
                              const std::string& x_label,
                              const std::string& y_label) {
  if (xs.empty() || ys.empty() || xs.size() != ys.size())
    throw std::invalid_argument("render_line_chart: empty or mismatched series");

  const int width = 640, height = 480;
  const int margin = 60;

  double x_lo = *std::min_element(xs.begin(), xs.end());
  double x_hi = *std::max_element(xs.begin(), xs.end());
  double y_lo = *std::min_element(ys.begin(), ys.end());
  double y_hi = *std::max_element(ys.begin(), ys.end());
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (y_hi == y_lo) y_hi = y_lo + 1.0;

  auto px = [&](double x) {
    return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin);
  };
  auto py = [&](double y) {
    return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin);
  };

  char buf[160];
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                "viewBox=\"0 0 %d %d\">\n",
                width, height, width, height);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"none\" "
                "stroke=\"black\"/>\n",
                margin, margin, width - 2 * margin, height - 2 * margin);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%d\" y=\"%d\" text-anchor=\"middle\" font-size=\"14\">%s</text>\n",
                width / 2, height - 15, x_label.c_str());
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"15\" y=\"%d\" text-anchor=\"middle\" font-size=\"14\" "
                "transform=\"rotate(-90 15 %d)\">%s</text>\n",
                height / 2, height / 2, y_label.c_str());
  svg += buf;

  svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s%.3f,%.3f", i ? " " : "", px(xs[i]),
                  py(ys[i]));
    svg += buf;
  }
  svg += "\"/>\n";

  std::snprintf(buf, sizeof(buf),
                "<text x=\"%d\" y=\"%d\" font-size=\"11\">[%.6g, %.6g] x [%.6g, %.6g]</text>\n",
                margin, margin - 8, x_lo, x_hi, y_lo, y_hi);
  svg += buf;
  svg += "</svg>\n";
  return svg;
}

}  // namespace parisi
