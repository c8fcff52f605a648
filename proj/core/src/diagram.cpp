#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "extopo/error.hpp"
#include "extopo/persistence.hpp"

namespace extopo {

const char* to_string(PointKind kind) noexcept {
  switch (kind) {
    case PointKind::Ord0: return "Ord0";
    case PointKind::Ext0: return "Ext0";
    case PointKind::Ext1: return "Ext1";
    case PointKind::Rel1: return "Rel1";
  }
  return "?";
}

std::optional<PointKind> parse_point_kind(std::string_view token) noexcept {
  for (PointKind k : all_point_kinds) {
    if (token == to_string(k)) return k;
  }
  return std::nullopt;
}

bool is_well_formed(const EpdPoint& p) noexcept {
  if (!std::isfinite(p.birth) || !std::isfinite(p.death)) return false;
  switch (p.kind) {
    case PointKind::Ord0:
    case PointKind::Ext0: return p.birth <= p.death;
    case PointKind::Ext1:
    case PointKind::Rel1: return p.death <= p.birth;
  }
  return false;
}

std::size_t ExtendedPersistenceDiagram::count(PointKind kind) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [kind](const EpdPoint& p) { return p.kind == kind; }));
}

std::vector<EpdPoint> ExtendedPersistenceDiagram::of_kind(PointKind kind) const {
  std::vector<EpdPoint> out;
  std::copy_if(points.begin(), points.end(), std::back_inserter(out),
               [kind](const EpdPoint& p) { return p.kind == kind; });
  return out;
}

ExtendedPersistenceDiagram ExtendedPersistenceDiagram::canonical() const {
  ExtendedPersistenceDiagram out = *this;
  std::sort(out.points.begin(), out.points.end(), [](const EpdPoint& a, const EpdPoint& b) {
    return std::tie(a.kind, a.birth, a.death) < std::tie(b.kind, b.birth, b.death);
  });
  return out;
}

ExtendedPersistenceDiagram ExtendedPersistenceDiagram::shifted(double c) const {
  ExtendedPersistenceDiagram out = *this;
  for (EpdPoint& p : out.points) {
    p.birth += c;
    p.death += c;
  }
  return out;
}

bool same_multiset(const ExtendedPersistenceDiagram& a, const ExtendedPersistenceDiagram& b) {
  return a.canonical().points == b.canonical().points;
}

void write_diagram(std::ostream& out, const ExtendedPersistenceDiagram& d) {
  char buf[96];
  for (const EpdPoint& p : d.points) {
    std::snprintf(buf, sizeof buf, "%s %.9g %.9g\n", to_string(p.kind), p.birth, p.death);
    out << buf;
  }
}

std::string format_diagram(const ExtendedPersistenceDiagram& d) {
  std::ostringstream out;
  write_diagram(out, d);
  return out.str();
}

ExtendedPersistenceDiagram read_diagram(std::istream& in, std::string function_name) {
  ExtendedPersistenceDiagram d;
  d.function_name = std::move(function_name);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string kind_token;
    EpdPoint p;
    std::string extra;
    if (!(fields >> kind_token >> p.birth >> p.death) || (fields >> extra)) {
      throw PersistenceError(PersistenceErrorKind::parse, "diagram line " + std::to_string(no) + ": expected 'kind birth death'");
    }
    const auto kind = parse_point_kind(kind_token);
    if (!kind) {
      throw PersistenceError(PersistenceErrorKind::parse,
                             "diagram line " + std::to_string(no) + ": unknown kind '" + kind_token + "'");
    }
    p.kind = *kind;
    if (!is_well_formed(p)) {
      throw PersistenceError(PersistenceErrorKind::parse,
                             "diagram line " + std::to_string(no) + ": coordinates violate the " + kind_token + " orientation");
    }
    d.points.push_back(p);
  }
  return d;
}

ExtendedPersistenceDiagram read_diagram_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PersistenceError(PersistenceErrorKind::parse, "cannot open diagram file " + path.string());
  return read_diagram(in, path.stem().string());
}

void write_diagram_file(const std::filesystem::path& path, const ExtendedPersistenceDiagram& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_diagram(out, d);
}

}  // namespace extopo
