#include "weylab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "weylab/errors.hpp"

namespace weylab {

namespace {
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}
}  // namespace

void write_loglog_scatter_svg(const std::string& path, const std::vector<double>& xs,
                              const std::vector<double>& ys,
                              const std::string& x_label, const std::string& y_label,
                              const std::optional<SvgFitLine>& fit) {
  if (xs.empty() || xs.size() != ys.size())
    fail(ErrorCode::NonPositiveData, "nothing to plot");
  for (size_t i = 0; i < xs.size(); ++i)
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      fail(ErrorCode::NonPositiveData, "log axes need positive data");

  const double width = 640.0, height = 480.0;
  const double ml = 70.0, mr = 20.0, mt = 20.0, mb = 50.0;
  double lx_min = std::log10(*std::min_element(xs.begin(), xs.end()));
  double lx_max = std::log10(*std::max_element(xs.begin(), xs.end()));
  double ly_min = std::log10(*std::min_element(ys.begin(), ys.end()));
  double ly_max = std::log10(*std::max_element(ys.begin(), ys.end()));
  if (lx_max - lx_min < 1e-12) { lx_min -= 0.5; lx_max += 0.5; }
  if (ly_max - ly_min < 1e-12) { ly_min -= 0.5; ly_max += 0.5; }
  double padx = 0.05 * (lx_max - lx_min), pady = 0.05 * (ly_max - ly_min);
  lx_min -= padx; lx_max += padx; ly_min -= pady; ly_max += pady;

  auto px = [&](double lx) {
    return ml + (lx - lx_min) / (lx_max - lx_min) * (width - ml - mr);
  };
  auto py = [&](double ly) {
    return height - mb - (ly - ly_min) / (ly_max - ly_min) * (height - mt - mb);
  };

  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << " "
      << num(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\""
      << num(width - ml - mr) << "\" height=\"" << num(height - mt - mb)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Decade ticks.
  for (int e = int(std::ceil(lx_min)); e <= int(std::floor(lx_max)); ++e) {
    double x = px(double(e));
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(height - mb) << "\" x2=\""
        << num(x) << "\" y2=\"" << num(height - mb + 6) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(x) << "\" y=\"" << num(height - mb + 20)
        << "\" font-size=\"12\" text-anchor=\"middle\">1e" << e << "</text>\n";
  }
  for (int e = int(std::ceil(ly_min)); e <= int(std::floor(ly_max)); ++e) {
    double y = py(double(e));
    out << "<line x1=\"" << num(ml - 6) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(ml) << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(ml - 10) << "\" y=\"" << num(y + 4)
        << "\" font-size=\"12\" text-anchor=\"end\">1e" << e << "</text>\n";
  }

  if (fit) {
    double y1 = fit->intercept + fit->slope * lx_min;
    double y2 = fit->intercept + fit->slope * lx_max;
    out << "<line x1=\"" << num(px(lx_min)) << "\" y1=\"" << num(py(y1)) << "\" x2=\""
        << num(px(lx_max)) << "\" y2=\"" << num(py(y2))
        << "\" stroke=\"#c22\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << num(ml + 10) << "\" y=\"" << num(mt + 16)
        << "\" font-size=\"12\" fill=\"#c22\">" << fit->label << "</text>\n";
  }

  for (size_t i = 0; i < xs.size(); ++i) {
    out << "<circle cx=\"" << num(px(std::log10(xs[i]))) << "\" cy=\""
        << num(py(std::log10(ys[i])))
        << "\" r=\"3.5\" fill=\"#235\" fill-opacity=\"0.8\"/>\n";
  }

  out << "<text x=\"" << num(ml + (width - ml - mr) / 2.0) << "\" y=\""
      << num(height - 12) << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << num(mt + (height - mt - mb) / 2.0)
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << num(mt + (height - mt - mb) / 2.0) << ")\">" << y_label << "</text>\n";
  out << "</svg>\n";
}

}  // namespace weylab
