#include "tame3/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "tame3/error.hpp"

namespace tame3 {

namespace {

struct Canvas {
  double x0 = std::numeric_limits<double>::max(), x1 = -x0, y0 = x0, y1 = -x0;
  std::ostringstream body;
  static constexpr double size = 600, pad = 20;

  void extend(const ChartPoint& p) {
    x0 = std::min(x0, p.y);
    x1 = std::max(x1, p.y);
    y0 = std::min(y0, p.t);
    y1 = std::max(y1, p.t);
  }
  double scale() const { return (size - 2 * pad) / std::max({x1 - x0, y1 - y0, 1e-9}); }
  std::string pt(const ChartPoint& p) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f,%.3f", pad + (p.y - x0) * scale(), size - pad - (p.t - y0) * scale());
    return buf;
  }
  std::string finish() const {
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
      << size << " " << size << "\">\n"
      << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"8\" "
         "markerHeight=\"8\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#c0392b\"/></marker></defs>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << body.str() << "</svg>\n";
    return o.str();
  }
};

// chart polyline of the projective segment a→b
std::vector<ChartPoint> trace(const Vec3& a, const Vec3& b, bool straight) {
  int n = straight ? 1 : 24;
  std::vector<ChartPoint> out;
  for (int i = 0; i <= n; ++i) {
    double s = static_cast<double>(i) / n;
    std::array<double, 3> p;
    for (int k = 0; k < 3; ++k) p[k] = (1 - s) * a[k].get_d() + s * b[k].get_d();
    out.push_back(chart(Vec3{Q(p[0]), Q(p[1]), Q(p[2])}));
  }
  return out;
}

std::vector<ChartPoint> edge_points(const Arrangement& arr, int e) {
  auto& E = arr.edges[e];
  return trace(arr.vertices[E.a].alpha, arr.vertices[E.b].alpha, E.straight);
}

std::vector<ChartPoint> face_outline(const Arrangement& arr, int f) {
  std::vector<ChartPoint> pts;
  for (auto& h : arr.faces[f].boundary) {
    auto seg = edge_points(arr, h.edge);
    if (!h.forward) std::reverse(seg.begin(), seg.end());
    pts.insert(pts.end(), seg.begin(), seg.end() - 1);
  }
  return pts;
}

void polyline(Canvas& c, const std::vector<ChartPoint>& pts, const char* style) {
  c.body << "<polyline fill=\"none\" " << style << " points=\"";
  for (size_t i = 0; i < pts.size(); ++i) c.body << (i ? " " : "") << c.pt(pts[i]);
  c.body << "\"/>\n";
}

void polygon(Canvas& c, const std::vector<ChartPoint>& pts, const char* style) {
  c.body << "<polygon " << style << " points=\"";
  for (size_t i = 0; i < pts.size(); ++i) c.body << (i ? " " : "") << c.pt(pts[i]);
  c.body << "\"/>\n";
}

void dot(Canvas& c, const ChartPoint& p, const char* fill) {
  auto s = c.pt(p);
  auto k = s.find(',');
  c.body << "<circle r=\"2\" fill=\"" << fill << "\" cx=\"" << s.substr(0, k) << "\" cy=\"" << s.substr(k + 1) << "\"/>\n";
}

void frame(Canvas& c, const Arrangement& arr) {
  for (auto& v : arr.vertices) c.extend(chart(v.alpha));
}

void draw_edges(Canvas& c, const Arrangement& arr) {
  for (size_t e = 0; e < arr.edges.size(); ++e) {
    auto& E = arr.edges[e];
    const char* style = E.line < 0                   ? "stroke=\"#999\" stroke-width=\"1\""
                        : arr.lines[E.line].principal() ? "stroke=\"#1f4e9c\" stroke-width=\"1.5\""
                                                        : "stroke=\"#333\" stroke-width=\"1\"";
    polyline(c, edge_points(arr, static_cast<int>(e)), style);
  }
}

}  // namespace

std::string svg_arrangement(const Arrangement& arr) {
  Canvas c;
  frame(c, arr);
  draw_edges(c, arr);
  for (auto& v : arr.vertices)
    if (v.on_lines) dot(c, chart(v.alpha), "black");
  return c.finish();
}

std::string svg_fixed_region(const Automorphism& f, const Window& w) {
  Arrangement arr = arrangement(w);
  FixedRegion fr = fixed_region(f);
  Canvas c;
  frame(c, arr);
  for (size_t i = 0; i < arr.faces.size(); ++i) {
    bool inside = std::all_of(arr.faces[i].boundary.begin(), arr.faces[i].boundary.end(),
                              [&](auto& h) { return fr.contains(arr.vertices[arr.tail(h)].alpha); });
    if (inside) polygon(c, face_outline(arr, static_cast<int>(i)), "fill=\"#f4c27a\" stroke=\"none\"");
  }
  draw_edges(c, arr);
  return c.finish();
}

std::string svg_strip(const InvariantStrip& s, int periods) {
  Canvas c;
  size_t n = s.boundary.size();
  c.extend({0, 0});
  c.extend({static_cast<double>(n * periods), 0});
  for (auto& it : s.boundary) c.extend({0, it.offset});
  for (int p = 0; p < periods; ++p)
    for (size_t i = 0; i < n; ++i) {
      double x = static_cast<double>(p * n + i);
      polyline(c, {{x, s.boundary[i].offset}, {x + 1, s.boundary[i].offset}}, "stroke=\"#1f4e9c\" stroke-width=\"2\"");
      auto p0 = c.pt({x + 0.5, s.boundary[i].offset});
      c.body << "<text font-size=\"10\" x=\"" << p0.substr(0, p0.find(',')) << "\" y=\"" << p0.substr(p0.find(',') + 1)
             << "\" dy=\"-4\" text-anchor=\"middle\">" << s.boundary[i].str() << "</text>\n";
    }
  return c.finish();
}

std::string svg_diagram(const DiscDiagram& d) {
  auto t = topology(d);
  Canvas c;
  frame(c, d.arr);
  std::vector<bool> used(d.arr.faces.size(), false);
  for (auto& f : d.faces) used[f.arr_face] = true;
  for (size_t i = 0; i < used.size(); ++i)
    if (used[i]) polygon(c, face_outline(d.arr, static_cast<int>(i)), "fill=\"#dfe8f5\" stroke=\"none\"");
  draw_edges(c, d.arr);
  for (auto& fe : folding_locus(d, t)) {
    auto& E = t.edges[fe.edge];
    auto pts = edge_points(d.arr, E.arr_edge);
    if (!fe.oriented) {
      polyline(c, pts, "stroke=\"#c0392b\" stroke-width=\"3\"");
      continue;
    }
    if ((*fe.oriented)[0] != E.v0) std::reverse(pts.begin(), pts.end());
    polyline(c, pts, "stroke=\"#c0392b\" stroke-width=\"3\" marker-end=\"url(#arrow)\"");
  }
  return c.finish();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IOError, "cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error(Errc::IOError, "write to " + path + " failed");
}

}  // namespace tame3
