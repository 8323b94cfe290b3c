#include "sylvester/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <cstdio>
#include <type_traits>
#include <vector>

namespace sylvester {
namespace {

struct Bounds {
  double xmin = std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  void add(double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  void add_square(const Point& c, double r) {
    add(c[0] - r, c[1] - r);
    add(c[0] + r, c[1] + r);
  }
  bool empty() const { return !(xmin <= xmax); }
};

using Polygon = std::vector<Eigen::Vector2d>;

// Sutherland-Hodgman against a single halfplane <a, x> <= b.
Polygon clip(const Polygon& poly, const Vector& a, double b) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& p = poly[i];
    const Eigen::Vector2d& q = poly[(i + 1) % n];
    const double fp = a[0] * p[0] + a[1] * p[1] - b;
    const double fq = a[0] * q[0] + a[1] * q[1] - b;
    if (fp <= 0) out.push_back(p);
    if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) out.push_back(p + (fp / (fp - fq)) * (q - p));
  }
  return out;
}

class Canvas {
 public:
  Canvas(const Bounds& b, double width) : b_(b), width_(width) {
    scale_ = width / (b.xmax - b.xmin);
    height_ = (b.ymax - b.ymin) * scale_;
  }

  double sx(double x) const { return (x - b_.xmin) * scale_; }
  double sy(double y) const { return (b_.ymax - y) * scale_; }
  double len(double d) const { return d * scale_; }

  Polygon frame() const {
    return {{b_.xmin, b_.ymin}, {b_.xmax, b_.ymin}, {b_.xmax, b_.ymax}, {b_.xmin, b_.ymax}};
  }
  const Bounds& bounds() const { return b_; }

  void circle(const Point& c, double r, const std::string& style) {
    os_ << "<circle cx=\"" << num(sx(c[0])) << "\" cy=\"" << num(sy(c[1])) << "\" r=\""
        << num(len(r)) << "\" " << style << "/>\n";
  }
  void rect(const Point& c, double r, const std::string& style) {
    os_ << "<rect x=\"" << num(sx(c[0] - r)) << "\" y=\"" << num(sy(c[1] + r)) << "\" width=\""
        << num(len(2 * r)) << "\" height=\"" << num(len(2 * r)) << "\" " << style << "/>\n";
  }
  void polygon(const Polygon& poly, const std::string& style) {
    if (poly.size() < 3) return;
    os_ << "<polygon points=\"";
    for (std::size_t i = 0; i < poly.size(); ++i) {
      if (i) os_ << ' ';
      os_ << num(sx(poly[i][0])) << ',' << num(sy(poly[i][1]));
    }
    os_ << "\" " << style << "/>\n";
  }
  void line(const Point& p, const Point& q, const std::string& style) {
    os_ << "<line x1=\"" << num(sx(p[0])) << "\" y1=\"" << num(sy(p[1])) << "\" x2=\""
        << num(sx(q[0])) << "\" y2=\"" << num(sy(q[1])) << "\" " << style << "/>\n";
  }
  void dot(const Point& p, const std::string& fill) {
    os_ << "<circle cx=\"" << num(sx(p[0])) << "\" cy=\"" << num(sy(p[1])) << "\" r=\"3\" fill=\""
        << fill << "\"/>\n";
  }

  std::string finish() const {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_) << "\" height=\""
        << num(height_) << "\" viewBox=\"0 0 " << num(width_) << ' ' << num(height_) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << os_.str() << "</svg>\n";
    return out.str();
  }

  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
  }

 private:
  Bounds b_;
  double width_;
  double height_ = 0.0;
  double scale_ = 1.0;
  std::ostringstream os_;
};

void extend(Bounds& b, const ConvexSet& set) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball> || std::is_same_v<T, Box>) {
          b.add_square(s.center, s.radius);
        } else if constexpr (std::is_same_v<T, Singleton>) {
          b.add(s.point[0], s.point[1]);
        } else if constexpr (std::is_same_v<T, ParabolaEpigraph2D>) {
          b.add(s.shift, s.offset);
        }
      },
      set);
}

void draw_set(Canvas& cv, const ConvexSet& set, const std::string& style) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          cv.circle(s.center, s.radius, style);
        } else if constexpr (std::is_same_v<T, Box>) {
          cv.rect(s.center, s.radius, style);
        } else if constexpr (std::is_same_v<T, Singleton>) {
          cv.dot(s.point, "black");
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          cv.polygon(clip(cv.frame(), s.normal, s.offset), style);
        } else if constexpr (std::is_same_v<T, ParabolaEpigraph2D>) {
          // Clip the frame by tangent lines of the parabola.
          const Bounds& bb = cv.bounds();
          Polygon poly = cv.frame();
          const int samples = 64;
          for (int i = 0; i <= samples; ++i) {
            const double t = bb.xmin + (bb.xmax - bb.xmin) * i / samples;
            const double slope = 2.0 * (t - s.shift);
            const double value = (t - s.shift) * (t - s.shift) + s.offset;
            Vector a(2);
            a << slope, -1.0;
            poly = clip(poly, a, slope * t - value);
          }
          cv.polygon(poly, style);
        }
      },
      set);
}

// Boundary of x + r F for the supported gauges.
void draw_gauge_ball(Canvas& cv, const Dynamic& f, const Point& x, double r, const std::string& style) {
  switch (f.kind()) {
    case Dynamic::Kind::EuclideanBall:
    case Dynamic::Kind::ScaledEuclideanBall:
      cv.circle(x, r * f.scale(), style);
      break;
    case Dynamic::Kind::LInfBall:
      cv.rect(x, r, style);
      break;
    case Dynamic::Kind::L1Ball:
      cv.polygon({{x[0] + r, x[1]}, {x[0], x[1] + r}, {x[0] - r, x[1]}, {x[0], x[1] - r}}, style);
      break;
  }
}

const char* kIntersectStyle = "fill=\"#4a90d9\" fill-opacity=\"0.25\" stroke=\"#1f5fa8\" stroke-width=\"1\"";
const char* kEncloseStyle = "fill=\"#e07b39\" fill-opacity=\"0.25\" stroke=\"#a84d12\" stroke-width=\"1\"";
const char* kConstraintStyle = "fill=\"#999999\" fill-opacity=\"0.12\" stroke=\"#666666\" stroke-dasharray=\"4 3\"";
const char* kSolutionStyle = "fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"";

}  // namespace

std::string render_svg(const InstanceDocument& doc, const SolverReport& report) {
  if (doc.dimension() != 2) throw Error(ErrorKind::InvalidArgument, "SVG output needs a planar instance");
  const Point& x = report.best_point;
  require_dimension(x, 2, "solution point");
  const double v = report.best_value;

  Bounds b;
  b.add(x[0], x[1]);
  if (const auto* inst = std::get_if<SylvesterInstance>(&doc.problem)) {
    for (const auto& s : inst->intersect_targets) extend(b, s);
    for (const auto& s : inst->enclose_targets) extend(b, s);
    extend(b, inst->constraint);
    b.add_square(x, v * (inst->dynamic.kind() == Dynamic::Kind::ScaledEuclideanBall
                             ? inst->dynamic.scale()
                             : 1.0));
  } else {
    const auto& dinst = std::get<DirectionalInstance>(doc.problem);
    extend(b, dinst.constraint);
    for (const auto& t : dinst.targets) {
      extend(b, t.set);
      const Point end = x + v * t.direction;
      b.add(end[0], end[1]);
    }
  }
  double w = b.xmax - b.xmin;
  double h = b.ymax - b.ymin;
  const double span = std::max({w, h, 1e-9});
  if (w < 0.2 * span) {
    b.xmin -= 0.1 * span;
    b.xmax += 0.1 * span;
  }
  if (h < 0.2 * span) {
    b.ymin -= 0.1 * span;
    b.ymax += 0.1 * span;
  }
  if (span <= 1e-9) b.add_square(x, 1.0);
  w = b.xmax - b.xmin;
  h = b.ymax - b.ymin;
  b.xmin -= 0.05 * w;
  b.xmax += 0.05 * w;
  b.ymin -= 0.05 * h;
  b.ymax += 0.05 * h;

  Canvas cv(b, 600.0);
  if (const auto* inst = std::get_if<SylvesterInstance>(&doc.problem)) {
    if (!std::holds_alternative<WholeSpace>(inst->constraint)) draw_set(cv, inst->constraint, kConstraintStyle);
    for (const auto& s : inst->intersect_targets) draw_set(cv, s, kIntersectStyle);
    for (const auto& s : inst->enclose_targets) draw_set(cv, s, kEncloseStyle);
    draw_gauge_ball(cv, inst->dynamic, x, v, kSolutionStyle);
  } else {
    const auto& dinst = std::get<DirectionalInstance>(doc.problem);
    if (!std::holds_alternative<WholeSpace>(dinst.constraint)) draw_set(cv, dinst.constraint, kConstraintStyle);
    for (const auto& t : dinst.targets) draw_set(cv, t.set, kIntersectStyle);
    for (const auto& t : dinst.targets) cv.line(x, x + v * t.direction, kSolutionStyle);
  }
  cv.dot(x, "#c0392b");
  return cv.finish();
}

void save_svg(const InstanceDocument& doc, const SolverReport& report, const std::string& path) {
  const std::string text = render_svg(doc, report);
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  out << text;
}

}  // namespace sylvester
