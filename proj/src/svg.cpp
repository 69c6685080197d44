#include "anderlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "anderlab/errors.hpp"

namespace anderlab {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kMargin = 56;

struct Canvas {
  std::FILE* f;
  explicit Canvas(const std::string& path) : f(std::fopen(path.c_str(), "wb")) {
    if (!f) throw Error("cannot open " + path + " for writing");
    std::fprintf(f,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                 "viewBox=\"0 0 %d %d\">\n",
                 kWidth, kHeight, kWidth, kHeight);
    std::fprintf(f, "<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n", kWidth, kHeight);
  }
  ~Canvas() {
    std::fprintf(f, "</svg>\n");
    std::fclose(f);
  }
  void line(double x1, double y1, double x2, double y2, const char* stroke, double width) {
    std::fprintf(f,
                 "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" "
                 "stroke-width=\"%.2f\"/>\n",
                 x1, y1, x2, y2, stroke, width);
  }
  void rect(double x, double y, double w, double h, const char* fill) {
    std::fprintf(f,
                 "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"%s\" "
                 "stroke=\"none\"/>\n",
                 x, y, w, h, fill);
  }
  void text(double x, double y, const std::string& s, int size = 12, const char* anchor = "middle") {
    std::fprintf(f,
                 "<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"%d\" "
                 "text-anchor=\"%s\">%s</text>\n",
                 x, y, size, anchor, s.c_str());
  }
  void polyline(const std::vector<std::pair<double, double>>& pts, const char* stroke) {
    std::fprintf(f, "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.6\" points=\"", stroke);
    for (const auto& [x, y] : pts) std::fprintf(f, "%.2f,%.2f ", x, y);
    std::fprintf(f, "\"/>\n");
  }
  void circle(double x, double y, double r, const char* fill) {
    std::fprintf(f, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"%s\"/>\n", x, y, r, fill);
  }
};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

void write_histogram_svg(const std::string& path, const std::vector<double>& samples,
                         double predicted_sigma, const std::string& title) {
  if (samples.empty()) throw InvalidConfig("histogram needs samples");
  double lo = *std::min_element(samples.begin(), samples.end());
  double hi = *std::max_element(samples.begin(), samples.end());
  if (lo == hi) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const int bins = 40;
  std::vector<double> density(bins, 0.0);
  const double bw = (hi - lo) / bins;
  for (double v : samples) {
    int b = static_cast<int>((v - lo) / bw);
    b = std::clamp(b, 0, bins - 1);
    density[static_cast<std::size_t>(b)] += 1.0;
  }
  for (double& d : density) d /= samples.size() * bw;

  double ymax = *std::max_element(density.begin(), density.end());
  if (predicted_sigma > 0.0)
    ymax = std::max(ymax, 1.0 / (predicted_sigma * std::sqrt(2.0 * 3.14159265358979)));
  ymax *= 1.1;

  auto X = [&](double v) { return kMargin + (v - lo) / (hi - lo) * (kWidth - 2 * kMargin); };
  auto Y = [&](double d) { return kHeight - kMargin - d / ymax * (kHeight - 2 * kMargin); };

  Canvas c(path);
  for (int b = 0; b < bins; ++b) {
    const double x0 = X(lo + b * bw);
    const double y0 = Y(density[static_cast<std::size_t>(b)]);
    c.rect(x0, y0, (kWidth - 2.0 * kMargin) / bins - 0.5, kHeight - kMargin - y0, "#7fa8d9");
  }
  if (predicted_sigma > 0.0) {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i <= 200; ++i) {
      const double x = lo + (hi - lo) * i / 200.0;
      const double d = std::exp(-x * x / (2.0 * predicted_sigma * predicted_sigma)) /
                       (predicted_sigma * std::sqrt(2.0 * 3.14159265358979));
      pts.emplace_back(X(x), Y(d));
    }
    c.polyline(pts, "#c0392b");
  }
  c.line(kMargin, kHeight - kMargin, kWidth - kMargin, kHeight - kMargin, "black", 1.0);
  c.line(kMargin, kMargin, kMargin, kHeight - kMargin, "black", 1.0);
  c.text(kWidth / 2.0, kMargin - 18, title, 14);
  c.text(kMargin, kHeight - kMargin + 18, fmt(lo), 11, "start");
  c.text(kWidth - kMargin, kHeight - kMargin + 18, fmt(hi), 11, "end");
  c.text(kWidth / 2.0, kHeight - kMargin + 32, "scaled fluctuation", 12);
}

void write_ladder_svg(const std::string& path, const std::vector<double>& eps,
                      const std::vector<double>& variance, const std::string& title) {
  if (eps.size() != variance.size() || eps.empty())
    throw InvalidConfig("ladder plot needs matching nonempty series");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    lx.push_back(std::log10(eps[i]));
    ly.push_back(std::log10(std::max(variance[i], 1e-300)));
  }
  double xlo = *std::min_element(lx.begin(), lx.end()), xhi = *std::max_element(lx.begin(), lx.end());
  double ylo = *std::min_element(ly.begin(), ly.end()), yhi = *std::max_element(ly.begin(), ly.end());
  if (xlo == xhi) { xlo -= 0.5; xhi += 0.5; }
  if (ylo == yhi) { ylo -= 0.5; yhi += 0.5; }
  const double px = 0.08 * (xhi - xlo), py = 0.08 * (yhi - ylo);
  xlo -= px; xhi += px; ylo -= py; yhi += py;

  auto X = [&](double v) { return kMargin + (v - xlo) / (xhi - xlo) * (kWidth - 2 * kMargin); };
  auto Y = [&](double v) { return kHeight - kMargin - (v - ylo) / (yhi - ylo) * (kHeight - 2 * kMargin); };

  Canvas c(path);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < lx.size(); ++i) pts.emplace_back(X(lx[i]), Y(ly[i]));
  c.polyline(pts, "#2c3e50");
  for (std::size_t i = 0; i < lx.size(); ++i) {
    c.circle(X(lx[i]), Y(ly[i]), 3.5, "#c0392b");
    c.text(X(lx[i]), Y(ly[i]) - 8, fmt(variance[i]), 10);
  }
  c.line(kMargin, kHeight - kMargin, kWidth - kMargin, kHeight - kMargin, "black", 1.0);
  c.line(kMargin, kMargin, kMargin, kHeight - kMargin, "black", 1.0);
  c.text(kWidth / 2.0, kMargin - 18, title, 14);
  c.text(kWidth / 2.0, kHeight - kMargin + 32, "log10 eps", 12);
  c.text(kMargin - 30, kHeight / 2.0, "log10 var", 12);
}

}  // namespace anderlab
