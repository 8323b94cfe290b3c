#include "sylvester/instance_io.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace sylvester {
namespace {

struct Token {
  std::string text;
  int column = 0;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({line.substr(begin, i - begin), int(begin) + 1});
  }
  return out;
}

class LineCursor {
 public:
  LineCursor(std::vector<Token> tokens, int line, int line_length)
      : tokens_(std::move(tokens)), line_(line), end_column_(line_length + 1) {}

  bool done() const { return pos_ >= tokens_.size(); }

  [[noreturn]] void fail(const std::string& what) const {
    const int column = pos_ < tokens_.size() ? tokens_[pos_].column : end_column_;
    throw ParseError(line_, column, what);
  }

  [[noreturn]] void fail_previous(const std::string& what) const {
    const std::size_t idx = pos_ > 0 ? pos_ - 1 : 0;
    throw ParseError(line_, tokens_[idx].column, what);
  }

  const std::string& word(const char* expected) {
    if (done()) fail(std::string("expected ") + expected);
    return tokens_[pos_++].text;
  }

  double number(const char* expected) {
    if (done()) fail(std::string("expected ") + expected);
    const std::string& text = tokens_[pos_].text;
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(value)) {
      fail(std::string("expected ") + expected + ", got '" + text + "'");
    }
    ++pos_;
    return value;
  }

  Vector vector(int n, const char* expected) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = number(expected);
    return v;
  }

  void finish() const {
    if (!done()) fail("unexpected trailing token '" + tokens_[pos_].text + "'");
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int line_;
  int end_column_;
};

ConvexSet parse_set(LineCursor& cur, int n) {
  const std::string kind = cur.word("set kind");
  ConvexSet set;
  if (kind == "ball" || kind == "box") {
    Point c = cur.vector(n, "center coordinate");
    const double r = cur.number("radius");
    if (r < 0.0) cur.fail_previous("radius must be nonnegative");
    if (kind == "ball") {
      set = Ball{std::move(c), r};
    } else {
      set = Box{std::move(c), r};
    }
  } else if (kind == "halfspace") {
    Vector a = cur.vector(n, "normal coordinate");
    const double b = cur.number("offset");
    if (a.squaredNorm() == 0.0) cur.fail_previous("halfspace normal must be nonzero");
    set = Halfspace{std::move(a), b};
  } else if (kind == "singleton") {
    set = Singleton{cur.vector(n, "point coordinate")};
  } else if (kind == "parabola") {
    if (n != 2) cur.fail_previous("parabola sets need dimension 2");
    const double h = cur.number("shift");
    const double c = cur.number("offset");
    set = ParabolaEpigraph2D{h, c};
  } else if (kind == "whole") {
    set = WholeSpace{};
  } else {
    cur.fail_previous("unknown set kind '" + kind + "'");
  }
  return set;
}

std::string render_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_vector(const Vector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += render_double(v[i]);
  }
  return out;
}

std::string render_set(const ConvexSet& set) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return "ball " + render_vector(s.center) + " " + render_double(s.radius);
        } else if constexpr (std::is_same_v<T, Box>) {
          return "box " + render_vector(s.center) + " " + render_double(s.radius);
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          return "halfspace " + render_vector(s.normal) + " " + render_double(s.offset);
        } else if constexpr (std::is_same_v<T, Singleton>) {
          return "singleton " + render_vector(s.point);
        } else if constexpr (std::is_same_v<T, ParabolaEpigraph2D>) {
          return "parabola " + render_double(s.shift) + " " + render_double(s.offset);
        } else {
          return "whole";
        }
      },
      set);
}

std::string render_dynamic(const Dynamic& d) {
  switch (d.kind()) {
    case Dynamic::Kind::EuclideanBall: return "euclidean";
    case Dynamic::Kind::ScaledEuclideanBall: return "scaled " + render_double(d.scale());
    case Dynamic::Kind::LInfBall: return "linf";
    case Dynamic::Kind::L1Ball: return "l1";
  }
  return "euclidean";
}

}  // namespace

int InstanceDocument::dimension() const {
  return std::visit([](const auto& p) { return p.dimension; }, problem);
}

InstanceDocument parse_instance(const std::string& text) {
  int n = 0;
  Dynamic dynamic = Dynamic::euclidean();
  int dynamic_line = 0;
  ConvexSet constraint = WholeSpace{};
  std::vector<ConvexSet> intersect;
  std::vector<ConvexSet> enclose;
  std::vector<DirectionalTarget> directional;
  int first_sylvester_line = 0;
  int first_directional_line = 0;
  std::optional<Point> start;
  bool seen_constraint = false;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    LineCursor cur(tokenize(raw), line_no, int(raw.size()));
    if (cur.done()) continue;
    const std::string key = cur.word("directive");
    if (key != "dimension" && n == 0) {
      cur.fail_previous("'dimension' must come before '" + key + "'");
    }
    if (key == "dimension") {
      if (n != 0) cur.fail_previous("duplicate 'dimension'");
      const double d = cur.number("dimension");
      if (d < 1 || d != std::floor(d) || d > 1e6) cur.fail_previous("dimension must be a positive integer");
      n = int(d);
    } else if (key == "dynamic") {
      const std::string kind = cur.word("dynamic kind");
      if (kind == "euclidean") {
        dynamic = Dynamic::euclidean();
      } else if (kind == "scaled") {
        const double r = cur.number("scale");
        if (!(r > 0.0)) cur.fail_previous("scale must be positive");
        dynamic = Dynamic::scaled_euclidean(r);
      } else if (kind == "linf") {
        dynamic = Dynamic::linf();
      } else if (kind == "l1") {
        dynamic = Dynamic::l1();
      } else {
        cur.fail_previous("unknown dynamic '" + kind + "'");
      }
      dynamic_line = line_no;
    } else if (key == "constraint") {
      if (seen_constraint) cur.fail_previous("duplicate 'constraint'");
      constraint = parse_set(cur, n);
      seen_constraint = true;
    } else if (key == "intersect" || key == "enclose") {
      if (first_directional_line) {
        cur.fail_previous("cannot mix '" + key + "' with directional targets (line " +
                          std::to_string(first_directional_line) + ")");
      }
      ConvexSet set = parse_set(cur, n);
      if (key == "enclose") {
        if (!is_bounded(set)) cur.fail_previous("enclose targets must be bounded");
        enclose.push_back(std::move(set));
      } else {
        intersect.push_back(std::move(set));
      }
      if (!first_sylvester_line) first_sylvester_line = line_no;
    } else if (key == "directional") {
      if (first_sylvester_line) {
        cur.fail_previous("cannot mix directional targets with intersect/enclose targets (line " +
                          std::to_string(first_sylvester_line) + ")");
      }
      ConvexSet set = parse_set(cur, n);
      if (cur.word("'direction'") != "direction") cur.fail_previous("expected 'direction'");
      Vector v = cur.vector(n, "direction coordinate");
      if (v.squaredNorm() == 0.0) cur.fail_previous("direction must be nonzero");
      directional.push_back({std::move(set), std::move(v)});
      if (!first_directional_line) first_directional_line = line_no;
    } else if (key == "start") {
      if (start) cur.fail_previous("duplicate 'start'");
      start = cur.vector(n, "start coordinate");
    } else {
      cur.fail_previous("unknown directive '" + key + "'");
    }
    cur.finish();
  }

  if (n == 0) throw ParseError(line_no + 1, 1, "missing 'dimension'");
  InstanceDocument doc;
  doc.start = std::move(start);
  if (!directional.empty()) {
    if (dynamic_line && dynamic != Dynamic::euclidean()) {
      throw ParseError(dynamic_line, 1, "directional instances take no dynamic");
    }
    DirectionalInstance inst;
    inst.dimension = n;
    inst.constraint = std::move(constraint);
    inst.targets = std::move(directional);
    doc.problem = std::move(inst);
  } else {
    if (intersect.empty() && enclose.empty()) throw ParseError(line_no + 1, 1, "instance has no targets");
    SylvesterInstance inst;
    inst.dimension = n;
    inst.dynamic = dynamic;
    inst.constraint = std::move(constraint);
    inst.intersect_targets = std::move(intersect);
    inst.enclose_targets = std::move(enclose);
    doc.problem = std::move(inst);
  }
  return doc;
}

InstanceDocument load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open instance file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string render_instance(const InstanceDocument& doc) {
  std::ostringstream os;
  os << "dimension " << doc.dimension() << '\n';
  if (const auto* inst = std::get_if<SylvesterInstance>(&doc.problem)) {
    os << "dynamic " << render_dynamic(inst->dynamic) << '\n';
    os << "constraint " << render_set(inst->constraint) << '\n';
    for (const auto& s : inst->intersect_targets) os << "intersect " << render_set(s) << '\n';
    for (const auto& s : inst->enclose_targets) os << "enclose " << render_set(s) << '\n';
  } else {
    const auto& dinst = std::get<DirectionalInstance>(doc.problem);
    os << "constraint " << render_set(dinst.constraint) << '\n';
    for (const auto& t : dinst.targets) {
      os << "directional " << render_set(t.set) << " direction " << render_vector(t.direction) << '\n';
    }
  }
  if (doc.start) os << "start " << render_vector(*doc.start) << '\n';
  return os.str();
}

void save_instance(const InstanceDocument& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  out << render_instance(doc);
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

}  // namespace sylvester
