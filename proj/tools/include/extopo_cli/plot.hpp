#pragma once

#include <string>
#include <vector>

#include "extopo/persistence.hpp"
#include "extopo/vectorization.hpp"

namespace extopo::cli {

/// Scatter of the diagram with one marker element per point (shape per kind)
/// and the diagonal. Output depends only on the input.
std::string diagram_svg(const ExtendedPersistenceDiagram& d);

/// Each level as a polyline, positive levels above the axis, negative below.
std::string landscape_svg(const LandscapeSet& ls);

/// "t,pos1..posK,neg1..negK" header, one row per grid sample, %.9g.
void write_landscape_csv(std::ostream& out, const LandscapeSet& ls);
LandscapeSet read_landscape_csv(std::istream& in);

}  // namespace extopo::cli
