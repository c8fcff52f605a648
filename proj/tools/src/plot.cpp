#include "extopo_cli/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace extopo::cli {

namespace {

constexpr double width = 480.0, height = 480.0, margin = 48.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Frame {
  double x0, x1, y0, y1;
  double sx(double x) const { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); }
  double sy(double y) const { return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin); }
};

Frame padded_frame(double lo_x, double hi_x, double lo_y, double hi_y) {
  auto widen = [](double& lo, double& hi) {
    if (!(hi > lo)) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  };
  widen(lo_x, hi_x);
  widen(lo_y, hi_y);
  return {lo_x, hi_x, lo_y, hi_y};
}

void header(std::ostringstream& s) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
    << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"" << fmt(width) << "\" height=\"" << fmt(height) << "\" fill=\"white\"/>\n";
}

void axes(std::ostringstream& s, const Frame& f, const char* x_label, const char* y_label) {
  s << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
    << "<line x1=\"" << fmt(margin) << "\" y1=\"" << fmt(height - margin) << "\" x2=\"" << fmt(width - margin)
    << "\" y2=\"" << fmt(height - margin) << "\"/>\n"
    << "<line x1=\"" << fmt(margin) << "\" y1=\"" << fmt(margin) << "\" x2=\"" << fmt(margin) << "\" y2=\""
    << fmt(height - margin) << "\"/>\n</g>\n";
  s << "<g font-family=\"sans-serif\" font-size=\"11\">\n"
    << "<text x=\"" << fmt(width / 2) << "\" y=\"" << fmt(height - 12) << "\" text-anchor=\"middle\">" << x_label
    << "</text>\n"
    << "<text x=\"14\" y=\"" << fmt(height / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
    << fmt(height / 2) << ")\">" << y_label << "</text>\n"
    << "<text x=\"" << fmt(margin) << "\" y=\"" << fmt(height - margin + 14) << "\">" << fmt(f.x0) << "</text>\n"
    << "<text x=\"" << fmt(width - margin) << "\" y=\"" << fmt(height - margin + 14) << "\" text-anchor=\"end\">"
    << fmt(f.x1) << "</text>\n"
    << "<text x=\"" << fmt(margin - 4) << "\" y=\"" << fmt(height - margin) << "\" text-anchor=\"end\">"
    << fmt(f.y0) << "</text>\n"
    << "<text x=\"" << fmt(margin - 4) << "\" y=\"" << fmt(margin + 4) << "\" text-anchor=\"end\">" << fmt(f.y1)
    << "</text>\n</g>\n";
}

const char* color(PointKind k) {
  switch (k) {
    case PointKind::Ord0: return "#1f77b4";
    case PointKind::Ext0: return "#d62728";
    case PointKind::Ext1: return "#2ca02c";
    case PointKind::Rel1: return "#9467bd";
  }
  return "black";
}

}  // namespace

std::string diagram_svg(const ExtendedPersistenceDiagram& d) {
  double lo = 0.0, hi = 1.0;
  if (!d.points.empty()) {
    lo = hi = d.points.front().birth;
    for (const EpdPoint& p : d.points) {
      lo = std::min({lo, p.birth, p.death});
      hi = std::max({hi, p.birth, p.death});
    }
  }
  const Frame f = padded_frame(lo, hi, lo, hi);
  std::ostringstream s;
  header(s);
  axes(s, f, "birth", "death");
  s << "<line class=\"diagonal\" x1=\"" << fmt(f.sx(f.x0)) << "\" y1=\"" << fmt(f.sy(f.y0)) << "\" x2=\""
    << fmt(f.sx(f.x1)) << "\" y2=\"" << fmt(f.sy(f.y1)) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";

  const auto pts = d.canonical().points;
  for (const EpdPoint& p : pts) {
    const double x = f.sx(p.birth), y = f.sy(p.death);
    const char* kind = to_string(p.kind);
    s << "<g class=\"marker " << kind << "\" fill=\"" << color(p.kind) << "\">";
    switch (p.kind) {
      case PointKind::Ord0:
        s << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"4\"/>";
        break;
      case PointKind::Ext0:
        s << "<rect x=\"" << fmt(x - 4) << "\" y=\"" << fmt(y - 4) << "\" width=\"8\" height=\"8\"/>";
        break;
      case PointKind::Ext1:
        s << "<polygon points=\"" << fmt(x) << ',' << fmt(y - 5) << ' ' << fmt(x - 5) << ',' << fmt(y + 4) << ' '
          << fmt(x + 5) << ',' << fmt(y + 4) << "\"/>";
        break;
      case PointKind::Rel1:
        s << "<polygon points=\"" << fmt(x) << ',' << fmt(y - 5) << ' ' << fmt(x + 5) << ',' << fmt(y) << ' '
          << fmt(x) << ',' << fmt(y + 5) << ' ' << fmt(x - 5) << ',' << fmt(y) << "\"/>";
        break;
    }
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string landscape_svg(const LandscapeSet& ls) {
  double x0 = 0.0, x1 = 1.0;
  if (!ls.t_grid.empty()) {
    x0 = ls.t_grid.front();
    x1 = ls.t_grid.back();
  }
  double y0 = ls.neg_levels.size() ? std::min(0.0, ls.neg_levels.minCoeff()) : 0.0;
  double y1 = ls.pos_levels.size() ? std::max(0.0, ls.pos_levels.maxCoeff()) : 0.0;
  if (y0 == y1) {
    y0 = -1.0;
    y1 = 1.0;
  }
  const Frame f = padded_frame(x0, x1, y0, y1);
  std::ostringstream s;
  header(s);
  axes(s, f, "t", "level");
  s << "<line class=\"zero\" x1=\"" << fmt(f.sx(f.x0)) << "\" y1=\"" << fmt(f.sy(0)) << "\" x2=\"" << fmt(f.sx(f.x1))
    << "\" y2=\"" << fmt(f.sy(0)) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  auto polyline = [&](const Eigen::MatrixXd& m, Eigen::Index row, const char* cls, const char* stroke) {
    s << "<polyline class=\"level " << cls << "\" fill=\"none\" stroke=\"" << stroke << "\" points=\"";
    for (std::size_t c = 0; c < ls.t_grid.size(); ++c) {
      if (c) s << ' ';
      s << fmt(f.sx(ls.t_grid[c])) << ',' << fmt(f.sy(m(row, static_cast<Eigen::Index>(c))));
    }
    s << "\"/>\n";
  };
  for (Eigen::Index k = 0; k < ls.pos_levels.rows(); ++k) polyline(ls.pos_levels, k, "pos", "#1f77b4");
  for (Eigen::Index k = 0; k < ls.neg_levels.rows(); ++k) polyline(ls.neg_levels, k, "neg", "#d62728");
  s << "</svg>\n";
  return s.str();
}

void write_landscape_csv(std::ostream& out, const LandscapeSet& ls) {
  out << 't';
  for (std::size_t k = 1; k <= ls.k_max; ++k) out << ",pos" << k;
  for (std::size_t k = 1; k <= ls.k_max; ++k) out << ",neg" << k;
  out << '\n';
  char buf[32];
  for (std::size_t c = 0; c < ls.t_grid.size(); ++c) {
    std::snprintf(buf, sizeof buf, "%.9g", ls.t_grid[c]);
    out << buf;
    for (const Eigen::MatrixXd* m : {&ls.pos_levels, &ls.neg_levels}) {
      for (Eigen::Index k = 0; k < m->rows(); ++k) {
        std::snprintf(buf, sizeof buf, ",%.9g", (*m)(k, static_cast<Eigen::Index>(c)));
        out << buf;
      }
    }
    out << '\n';
  }
}

LandscapeSet read_landscape_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,", 0) != 0) throw std::runtime_error("not a landscape CSV");
  const std::size_t cols = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
  if (cols == 0 || cols % 2 != 0) throw std::runtime_error("landscape CSV needs matching pos/neg columns");
  LandscapeSet ls;
  ls.k_max = cols / 2;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> r;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) throw std::runtime_error("bad landscape value '" + cell + "'");
      r.push_back(v);
    }
    if (r.size() != cols + 1) throw std::runtime_error("landscape CSV row has the wrong width");
    rows.push_back(std::move(r));
  }
  const auto n = static_cast<Eigen::Index>(rows.size()), k = static_cast<Eigen::Index>(ls.k_max);
  ls.pos_levels.resize(k, n);
  ls.neg_levels.resize(k, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const auto& r = rows[static_cast<std::size_t>(c)];
    ls.t_grid.push_back(r[0]);
    for (Eigen::Index j = 0; j < k; ++j) {
      ls.pos_levels(j, c) = r[static_cast<std::size_t>(1 + j)];
      ls.neg_levels(j, c) = r[static_cast<std::size_t>(1 + k + j)];
    }
  }
  return ls;
}

}  // namespace extopo::cli
