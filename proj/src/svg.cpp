#include "rcfdtd/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "rcfdtd/csv.hpp"

namespace rcfdtd {

namespace {

constexpr double kW = 800.0, kH = 600.0;
constexpr double kMl = 70.0, kMr = 30.0, kMt = 30.0, kMb = 50.0;

struct Mapper {
  double lo = 0.0, hi = 1.0;
  bool log = false;
  double to01(double v) const {
    double a = log ? std::log10(v) : v;
    double l = log ? std::log10(lo) : lo;
    double h = log ? std::log10(hi) : hi;
    if (h <= l) return 0.5;
    return (a - l) / (h - l);
  }
};

struct Svg {
  std::ofstream out;
  explicit Svg(const std::string& path) : out(path) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }
  ~Svg() { out << "</svg>\n"; }
  void axes() {
    out << "<line x1=\"" << kMl << "\" y1=\"" << kH - kMb << "\" x2=\"" << kW - kMr
        << "\" y2=\"" << kH - kMb << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kMl << "\" y1=\"" << kMt << "\" x2=\"" << kMl << "\" y2=\""
        << kH - kMb << "\" stroke=\"black\"/>\n";
  }
  static double px(double t) { return kMl + t * (kW - kMl - kMr); }
  static double py(double t) { return (kH - kMb) - t * (kH - kMt - kMb); }
  void polyline(const std::vector<std::pair<double, double>>& pts, const Mapper& mx,
                const Mapper& my, const std::string& color, bool dashed = false) {
    if (pts.empty()) return;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\"";
    if (dashed) out << " stroke-dasharray=\"6,4\"";
    out << " points=\"";
    for (const auto& [x, y] : pts)
      out << format_number(px(mx.to01(x))) << "," << format_number(py(my.to01(y))) << " ";
    out << "\"/>\n";
  }
  void label(double x, double y, const std::string& text, const std::string& anchor = "middle") {
    out << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"12\" text-anchor=\""
        << anchor << "\">" << text << "</text>\n";
  }
  void cell(double x0, double y0, double x1, double y1, const std::string& color) {
    out << "<rect x=\"" << format_number(x0) << "\" y=\"" << format_number(y1) << "\" width=\""
        << format_number(x1 - x0) << "\" height=\"" << format_number(y0 - y1) << "\" fill=\""
        << color << "\"/>\n";
  }
};

std::string heat_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(255.0 * std::min(1.0, 0.2 + 1.4 * t));
  const int g = static_cast<int>(255.0 * std::min(1.0, 1.6 * t * (1.0 - 0.4 * t)));
  const int b = static_cast<int>(255.0 * std::max(0.0, 0.9 - 1.2 * t));
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

void require_columns(const CsvTable& t, const std::vector<std::string>& names) {
  for (const auto& n : names)
    if (t.column(n) < 0) throw ConfigError("plot_emit: CSV missing column '" + n + "'");
}

void plot_history(const CsvTable& t, Svg& svg) {
  require_columns(t, {"t", "max_err"});
  const int ct = t.column("t"), ce = t.column("max_err");
  std::vector<std::pair<double, double>> pts;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    const double e = t.num(r, ce);
    if (e > 0.0) pts.emplace_back(t.num(r, ct), e);
  }
  svg.axes();
  svg.label(kW / 2, kH - 12, "t");
  svg.label(18, kH / 2, "max err", "middle");
  if (pts.empty()) return;
  Mapper mx, my;
  mx.lo = pts.front().first;
  mx.hi = pts.back().first;
  my.log = true;
  my.lo = std::numeric_limits<double>::max();
  my.hi = 0.0;
  for (const auto& [x, y] : pts) {
    my.lo = std::min(my.lo, y);
    my.hi = std::max(my.hi, y);
  }
  if (my.hi <= my.lo) my.hi = my.lo * 10.0;
  svg.polyline(pts, mx, my, kPalette[0]);
}

void plot_convergence(const CsvTable& t, Svg& svg) {
  require_columns(t, {"N", "h", "dt", "field", "norm", "err", "rate"});
  const int ch = t.column("h"), ce = t.column("err");
  const int cf = t.column("field"), cn = t.column("norm");
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  double hmin = 1e300, hmax = 0.0, emin = 1e300, emax = 0.0;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    const double h = t.num(r, ch), e = t.num(r, ce);
    if (!(e > 0.0)) continue;
    series[t.rows[r][cf] + "/" + t.rows[r][cn]].emplace_back(h, e);
    hmin = std::min(hmin, h);
    hmax = std::max(hmax, h);
    emin = std::min(emin, e);
    emax = std::max(emax, e);
  }
  svg.axes();
  svg.label(kW / 2, kH - 12, "h");
  svg.label(18, kH / 2, "err");
  if (series.empty()) return;
  Mapper mx, my;
  mx.log = my.log = true;
  mx.lo = hmin;
  mx.hi = hmax;
  my.lo = emin;
  my.hi = emax;
  int idx = 0;
  for (auto& [name, pts] : series) {
    std::sort(pts.begin(), pts.end());
    svg.polyline(pts, mx, my, kPalette[idx % 6]);
    svg.label(kMl + 10, kMt + 14 + 14 * idx, name, "start");
    ++idx;
  }
  // Reference slopes anchored at the coarsest point of the first series.
  const auto& anchor = series.begin()->second.back();
  for (double slope : {2.0, 4.0}) {
    std::vector<std::pair<double, double>> guide;
    guide.emplace_back(hmin, anchor.second * std::pow(hmin / anchor.first, slope));
    guide.emplace_back(anchor.first, anchor.second);
    svg.polyline(guide, mx, my, "#999999", /*dashed=*/true);
  }
}

void plot_scan(const CsvTable& t, Svg& svg) {
  require_columns(t, {"Lambda", "Omega", "Gamma", "xi", "absA_max", "class"});
  const int cg = t.column("Gamma"), co = t.column("Omega");
  const int cx = t.column("xi"), ca = t.column("absA_max");
  std::set<double> gs, os;
  std::map<std::pair<double, double>, double> val;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    if (std::abs(t.num(r, cx)) > 1e-12) continue;
    const double g = t.num(r, cg), o = t.num(r, co);
    gs.insert(g);
    os.insert(o);
    auto& v = val[{g, o}];
    v = std::max(v, t.num(r, ca));
  }
  svg.axes();
  svg.label(kW / 2, kH - 12, "Gamma");
  svg.label(18, kH / 2, "Omega");
  if (val.empty()) return;
  double vmax = 0.0;
  for (const auto& [k, v] : val) vmax = std::max(vmax, v);
  std::vector<double> gv(gs.begin(), gs.end()), ov(os.begin(), os.end());
  Mapper mx{gv.front(), gv.back() + (gv.size() > 1 ? gv[1] - gv[0] : 1.0), false};
  Mapper my{ov.front(), ov.back() + (ov.size() > 1 ? ov[1] - ov[0] : 1.0), false};
  for (size_t a = 0; a < gv.size(); ++a)
    for (size_t b = 0; b < ov.size(); ++b) {
      auto it = val.find({gv[a], ov[b]});
      if (it == val.end()) continue;
      const double g0 = gv[a];
      const double g1 = a + 1 < gv.size() ? gv[a + 1] : mx.hi;
      const double o0 = ov[b];
      const double o1 = b + 1 < ov.size() ? ov[b + 1] : my.hi;
      svg.cell(Svg::px(mx.to01(g0)), Svg::py(my.to01(o0)), Svg::px(mx.to01(g1)),
               Svg::py(my.to01(o1)), heat_color(vmax > 0 ? it->second / vmax : 0.0));
    }
}

void plot_snapshot(const CsvTable& t, Svg& svg) {
  require_columns(t, {"x", "y", "Ex", "Ey", "errEx", "errEy"});
  const int cx = t.column("x"), cy = t.column("y"), ce = t.column("errEx");
  std::set<double> xs, ys;
  std::map<std::pair<double, double>, double> val;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    const double x = t.num(r, cx), y = t.num(r, cy);
    xs.insert(x);
    ys.insert(y);
    val[{x, y}] = std::abs(t.num(r, ce));
  }
  svg.axes();
  svg.label(kW / 2, kH - 12, "x");
  svg.label(18, kH / 2, "y");
  if (val.empty()) return;
  double vmax = 0.0;
  for (const auto& [k, v] : val) vmax = std::max(vmax, v);
  std::vector<double> xv(xs.begin(), xs.end()), yv(ys.begin(), ys.end());
  Mapper mx{xv.front(), xv.back(), false};
  Mapper my{yv.front(), yv.back(), false};
  for (size_t a = 0; a + 1 < xv.size() || (xv.size() == 1 && a == 0); ++a)
    for (size_t b = 0; b + 1 < yv.size() || (yv.size() == 1 && b == 0); ++b) {
      auto it = val.find({xv[a], yv[b]});
      if (it == val.end()) continue;
      const double x1 = a + 1 < xv.size() ? xv[a + 1] : xv[a] + 1.0;
      const double y1 = b + 1 < yv.size() ? yv[b + 1] : yv[b] + 1.0;
      svg.cell(Svg::px(mx.to01(xv[a])), Svg::py(my.to01(yv[b])), Svg::px(mx.to01(x1)),
               Svg::py(my.to01(y1)), heat_color(vmax > 0 ? it->second / vmax : 0.0));
    }
}

}  // namespace

void plot_emit(const std::string& csv_path, const std::string& kind,
               const std::string& svg_path) {
  const CsvTable t = read_csv(csv_path);
  Svg svg(svg_path);
  if (kind == "history")
    plot_history(t, svg);
  else if (kind == "convergence")
    plot_convergence(t, svg);
  else if (kind == "scan")
    plot_scan(t, svg);
  else if (kind == "snapshot")
    plot_snapshot(t, svg);
  else
    throw ConfigError("plot_emit: unknown kind '" + kind + "'");
}

}  // namespace rcfdtd
