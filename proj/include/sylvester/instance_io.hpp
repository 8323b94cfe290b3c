#pragma once

#include <optional>
#include <string>
#include <variant>

#include "sylvester/directional.hpp"
#include "sylvester/timefns.hpp"

namespace sylvester {

/// A parsed instance file: exactly one problem kind plus an optional start.
///
/// Grammar (one directive per line, '#' starts a comment):
///
///   dimension <n>                          must precede every set
///   dynamic euclidean | scaled <r> | linf | l1
///   constraint <set>                       default: whole
///   intersect <set>
///   enclose <set>                          bounded sets only
///   directional <set> direction <v_1 .. v_n>
///   start <x_1 .. x_n>
///
///   <set> := ball <c_1 .. c_n> <r> | box <c_1 .. c_n> <r>
///          | halfspace <a_1 .. a_n> <b> | singleton <p_1 .. p_n>
///          | parabola <h> <c> | whole
///
/// `directional` entries cannot be mixed with `intersect` or `enclose`.
struct InstanceDocument {
  std::variant<SylvesterInstance, DirectionalInstance> problem;
  std::optional<Point> start;

  bool is_directional() const { return std::holds_alternative<DirectionalInstance>(problem); }
  int dimension() const;
};

/// Throws ParseError with the 1-based line and column of the offending token.
InstanceDocument parse_instance(const std::string& text);
InstanceDocument load_instance(const std::string& path);

/// Canonical text form; parse_instance(render_instance(d)) reproduces d exactly.
std::string render_instance(const InstanceDocument& doc);
void save_instance(const InstanceDocument& doc, const std::string& path);

/// Fixed-precision formatting used by every human-facing output (9 significant digits).
std::string format_number(double value);

}  // namespace sylvester
