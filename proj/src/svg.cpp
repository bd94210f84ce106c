#include "kstab/svg.hpp"

#include <fstream>
#include <sstream>

#include "kstab/error.hpp"

namespace kstab {

namespace {

constexpr double kSize = 480;
constexpr double kMargin = 20;

struct Frame {
  double x0, y0, scale;
  double x(double v) const { return kMargin + (v - x0) * scale; }
  double y(double v) const { return kSize - kMargin - (v - y0) * scale; }
};

std::string polyline(const Frame& f, const std::vector<QVector>& pts) {
  std::ostringstream os;
  for (const auto& p : pts) os << f.x(p[0].get_d()) << "," << f.y(p[1].get_d()) << " ";
  return os.str();
}

}  // namespace

std::string render_svg(const SvgLayers& layers) {
  if (!layers.polygon || layers.polygon->dim() != 2) throw Error(ErrorCode::RankUnsupported, "figures are planar");
  const auto verts = ccw_vertices(*layers.polygon);
  double xmin = verts[0][0].get_d(), xmax = xmin, ymin = verts[0][1].get_d(), ymax = ymin;
  for (const auto& v : verts) {
    xmin = std::min(xmin, v[0].get_d());
    xmax = std::max(xmax, v[0].get_d());
    ymin = std::min(ymin, v[1].get_d());
    ymax = std::max(ymax, v[1].get_d());
  }
  const double span = std::max(xmax - xmin, ymax - ymin);
  const Frame f{xmin, ymin, (kSize - 2 * kMargin) / (span > 0 ? span : 1)};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (layers.theta) {
    // Grid shading of the negativity region, one cell per square.
    const int n = 96;
    const double step = span / n;
    os << "<g fill=\"#f4b6b6\" stroke=\"none\">\n";
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        QVector c{Rational(xmin + (i + 0.5) * step), Rational(ymin + (j + 0.5) * step)};
        if (!layers.polygon->contains(c) || layers.theta->denominator.evaluate(c) == 0) continue;
        if (layers.theta->sign_at(c) < 0)
          os << "<rect x=\"" << f.x(xmin + i * step) << "\" y=\"" << f.y(ymin + (j + 1) * step) << "\" width=\""
             << step * f.scale << "\" height=\"" << step * f.scale << "\"/>\n";
      }
    os << "</g>\n";
  }
  if (layers.envelope) {
    os << "<g fill=\"none\" stroke=\"#4477aa\" stroke-width=\"1\">\n";
    for (const auto& c : layers.envelope->cells)
      os << "<polygon points=\"" << polyline(f, c.vertices) << "\"/>\n";
    os << "</g>\n";
  }
  os << "<polygon points=\"" << polyline(f, verts) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  if (layers.crease) {
    os << "<g stroke=\"#cc3311\" stroke-width=\"2.5\">\n";
    for (const auto& c : layers.crease->candidates)
      if (c.segment.size() == 2)
        os << "<line x1=\"" << f.x(c.segment[0][0].get_d()) << "\" y1=\"" << f.y(c.segment[0][1].get_d()) << "\" x2=\""
           << f.x(c.segment[1][0].get_d()) << "\" y2=\"" << f.y(c.segment[1][1].get_d()) << "\"/>\n";
    os << "</g>\n";
    os << "<circle cx=\"" << f.x(layers.crease->z_o[0].get_d()) << "\" cy=\"" << f.y(layers.crease->z_o[1].get_d())
       << "\" r=\"4\" fill=\"#cc3311\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_svg(const std::filesystem::path& path, const SvgLayers& layers) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << render_svg(layers);
}

}  // namespace kstab
