#pragma once

#include <string>

#include "sylvester/instance_io.hpp"
#include "sylvester/report.hpp"

namespace sylvester {

/// Renders a planar instance with its solution: every set, the solution center and
/// the generalized ball x + V F (or the segments x + [0, V] v_i for directional
/// instances). The view box fits all bounded content with a 5% margin.
/// Throws InvalidArgument for dimensions other than 2.
std::string render_svg(const InstanceDocument& doc, const SolverReport& report);

void save_svg(const InstanceDocument& doc, const SolverReport& report, const std::string& path);

}  // namespace sylvester
