#include "topophase/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "topophase/types.hpp"

namespace topophase {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

struct Style {
  const char* color;
  const char* dash;
};

Style style_for(std::size_t index) {
  static const Style styles[] = {{"#000000", ""},       {"#000000", "6,4"},    {"#1f4fd1", ""},
                                 {"#c0392b", ""},       {"#27ae60", "2,3"},    {"#8e44ad", "8,3,2,3"}};
  return styles[index % (sizeof styles / sizeof styles[0])];
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_fringe_svg(const std::string& title, const std::vector<PlotCurve>& curves) {
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double theta) { return kLeft + plot_w * theta / kTwoPi; };
  const auto py = [&](double c) { return kTop + plot_h * (1.0 - std::clamp(c, 0.0, 1.0)); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%.0f", kWidth) +
         "\" height=\"" + fmt("%.0f", kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt("%.1f", kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(title) + "</text>\n";
  svg += "<rect x=\"" + fmt("%.1f", kLeft) + "\" y=\"" + fmt("%.1f", kTop) + "\" width=\"" +
         fmt("%.1f", plot_w) + "\" height=\"" + fmt("%.1f", plot_h) +
         "\" fill=\"none\" stroke=\"#444\"/>\n";

  for (int k = 0; k <= 4; ++k) {
    const double theta = kPi * k / 2.0;
    const double x = px(theta);
    svg += "<line x1=\"" + fmt("%.1f", x) + "\" y1=\"" + fmt("%.1f", kTop + plot_h) + "\" x2=\"" +
           fmt("%.1f", x) + "\" y2=\"" + fmt("%.1f", kTop + plot_h + 5) + "\" stroke=\"#444\"/>\n";
    svg += "<text x=\"" + fmt("%.1f", x) + "\" y=\"" + fmt("%.1f", kTop + plot_h + 20) +
           "\" text-anchor=\"middle\">" + fmt("%g", k / 2.0) + "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double c = k / 4.0;
    const double y = py(c);
    svg += "<line x1=\"" + fmt("%.1f", kLeft - 5) + "\" y1=\"" + fmt("%.1f", y) + "\" x2=\"" +
           fmt("%.1f", kLeft) + "\" y2=\"" + fmt("%.1f", y) + "\" stroke=\"#444\"/>\n";
    svg += "<text x=\"" + fmt("%.1f", kLeft - 8) + "\" y=\"" + fmt("%.1f", y + 4) +
           "\" text-anchor=\"end\">" + fmt("%g", c) + "</text>\n";
  }
  svg += "<text x=\"" + fmt("%.1f", kLeft + plot_w / 2) + "\" y=\"" + fmt("%.1f", kHeight - 10) +
         "\" text-anchor=\"middle\">&#952; / &#960;</text>\n";
  svg += "<text x=\"16\" y=\"" + fmt("%.1f", kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + fmt("%.1f", kTop + plot_h / 2) +
         ")\">C</text>\n";

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const Style st = style_for(i);
    std::string points;
    for (std::size_t k = 0; k < curves[i].x.size(); ++k) {
      points += fmt("%.2f", px(curves[i].x[k])) + "," + fmt("%.2f", py(curves[i].y[k])) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(st.color) + "\" stroke-width=\"1.6\"";
    if (*st.dash) svg += " stroke-dasharray=\"" + std::string(st.dash) + "\"";
    svg += " points=\"" + points + "\"/>\n";

    const double ly = kTop + 14.0 + 16.0 * static_cast<double>(i);
    const double lx = kLeft + plot_w - 110.0;
    svg += "<line x1=\"" + fmt("%.1f", lx) + "\" y1=\"" + fmt("%.1f", ly) + "\" x2=\"" +
           fmt("%.1f", lx + 30) + "\" y2=\"" + fmt("%.1f", ly) + "\" stroke=\"" + st.color +
           "\" stroke-width=\"1.6\"";
    if (*st.dash) svg += " stroke-dasharray=\"" + std::string(st.dash) + "\"";
    svg += "/>\n<text x=\"" + fmt("%.1f", lx + 36) + "\" y=\"" + fmt("%.1f", ly + 4) + "\">" +
           escape(curves[i].label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace topophase
