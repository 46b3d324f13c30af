#include "plcp/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "plcp/errors.hpp"

namespace plcp {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

void add_pair(Metadata& metadata, std::string_view line) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) return;
  metadata.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
}

const std::string* find(const Metadata& metadata, std::string_view key) {
  for (const auto& [k, v] : metadata) {
    if (k == key) return &v;
  }
  return nullptr;
}

double to_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw DomainError("malformed number '" + std::string(text) + "' for " + std::string(what));
  }
  return value;
}

std::uint64_t to_u64(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw DomainError("malformed integer '" + std::string(text) + "' for " + std::string(what));
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string index_or_empty(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

std::string format_double(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_metadata_comments(std::ostream& out, const Metadata& metadata) {
  for (const auto& [k, v] : metadata) out << "# " << k << '=' << v << '\n';
}

Metadata read_metadata(std::istream& in) {
  Metadata metadata;
  std::string line;
  bool in_svg_comment = false;
  while (std::getline(in, line)) {
    if (in_svg_comment) {
      if (line.find("-->") != std::string::npos) return metadata;
      add_pair(metadata, line);
    } else if (line.starts_with("# ")) {
      add_pair(metadata, std::string_view(line).substr(2));
    } else if (line.starts_with("<!--")) {
      in_svg_comment = true;
    } else if (!line.starts_with("<")) {
      break;
    }
  }
  if (metadata.empty()) throw DomainError("artifact carries no metadata header");
  return metadata;
}

Metadata realization_metadata(const Realization& real) {
  return {{"lambda_l", format_double(real.params.lambda_l)},
          {"mu", format_double(real.params.mu)},
          {"orientation", std::string(to_string(real.params.orientation))},
          {"obs_radius", format_double(real.obs_radius)},
          {"sim_radius", format_double(real.sim_radius)},
          {"palm", real.palm ? "true" : "false"},
          {"master_seed", std::to_string(real.seed.master_seed)},
          {"replication_index", std::to_string(real.seed.replication_index)},
          {"generator", std::string(kGeneratorName)}};
}

void write_realization_csv(std::ostream& out, const Realization& real, const Metadata& metadata) {
  write_metadata_comments(out, metadata);
  out << "line_index,r,theta\n";
  for (std::size_t i = 0; i < real.lines.size(); ++i) {
    out << i << ',' << format_double(real.lines[i].r) << ',' << format_double(real.lines[i].theta)
        << '\n';
  }
  out << "\npoint_index,line_index,t,x,y\n";
  for (std::size_t i = 0; i < real.points.size(); ++i) {
    const CoxPoint& p = real.points[i];
    out << i << ',' << p.line_index << ',' << format_double(p.t) << ','
        << format_double(p.position.x) << ',' << format_double(p.position.y) << '\n';
  }
}

Realization read_realization_csv(std::istream& in) {
  Metadata metadata;
  Realization real;
  enum class Section { kNone, kLines, kPoints } section = Section::kNone;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.starts_with("# ")) {
      add_pair(metadata, std::string_view(line).substr(2));
      continue;
    }
    if (line.empty()) continue;
    if (line == "line_index,r,theta") {
      section = Section::kLines;
      continue;
    }
    if (line == "point_index,line_index,t,x,y") {
      section = Section::kPoints;
      continue;
    }
    const auto fields = split(line, ',');
    if (section == Section::kLines && fields.size() == 3) {
      real.lines.push_back({to_double(fields[1], "r"), to_double(fields[2], "theta")});
    } else if (section == Section::kPoints && fields.size() == 5) {
      CoxPoint p;
      p.line_index = static_cast<std::size_t>(to_u64(fields[1], "line_index"));
      p.t = to_double(fields[2], "t");
      p.position = {to_double(fields[3], "x"), to_double(fields[4], "y")};
      real.points.push_back(p);
    } else {
      throw DomainError("unexpected realization CSV row: " + line);
    }
  }
  auto number = [&](std::string_view key) -> const std::string* { return find(metadata, key); };
  if (const auto* v = number("lambda_l")) real.params.lambda_l = to_double(*v, "lambda_l");
  if (const auto* v = number("mu")) real.params.mu = to_double(*v, "mu");
  if (const auto* v = number("orientation")) real.params.orientation = parse_orientation(*v);
  if (const auto* v = number("obs_radius")) real.obs_radius = to_double(*v, "obs_radius");
  if (const auto* v = number("sim_radius")) real.sim_radius = to_double(*v, "sim_radius");
  if (const auto* v = number("palm")) real.palm = *v == "true";
  if (const auto* v = number("master_seed")) real.seed.master_seed = to_u64(*v, "master_seed");
  if (const auto* v = number("replication_index")) {
    real.seed.replication_index = to_u64(*v, "replication_index");
  }
  return real;
}

void write_tessellation_csv(std::ostream& out, const Tessellation& tess,
                            const Metadata& metadata) {
  write_metadata_comments(out, metadata);
  out << "vertex_id,x,y\n";
  for (std::size_t i = 0; i < tess.vertices.size(); ++i) {
    out << i << ',' << format_double(tess.vertices[i].x) << ','
        << format_double(tess.vertices[i].y) << '\n';
  }
  out << "\nedge_id,v1,v2,dir_x,dir_y\n";
  for (std::size_t i = 0; i < tess.edges.size(); ++i) {
    const VoronoiEdge& e = tess.edges[i];
    out << i << ',' << index_or_empty(e.v1) << ',' << index_or_empty(e.v2) << ',';
    if (e.bounded()) {
      out << ",\n";
    } else {
      out << format_double(e.direction.x) << ',' << format_double(e.direction.y) << '\n';
    }
  }
  out << "\ngenerator_id,vertex_ids\n";
  for (const VoronoiCell& c : tess.cells) {
    out << c.generator << ',';
    for (std::size_t k = 0; k < c.vertices.size(); ++k) {
      if (k > 0) out << ';';
      out << c.vertices[k];
    }
    out << '\n';
  }
}

void write_table_csv(std::ostream& out, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows, const Metadata& metadata) {
  write_metadata_comments(out, metadata);
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_double(row[k]);
    out << '\n';
  }
}

void render_svg(std::ostream& out, const Realization& real, const Tessellation* tess,
                double view_radius, const Metadata& metadata) {
  if (!(view_radius > 0.0)) throw DomainError("view radius must be positive");
  constexpr double kPixels = 800.0;
  const double scale = kPixels / (2.0 * view_radius);
  auto px = [&](Point2 p) {
    return std::pair{format_double(std::round((p.x + view_radius) * scale * 100) / 100),
                     format_double(std::round((view_radius - p.y) * scale * 100) / 100)};
  };
  auto segment = [&](Point2 a, Point2 b, std::string_view cls) {
    const auto [x1, y1] = px(a);
    const auto [x2, y2] = px(b);
    out << "<line class=\"" << cls << "\" x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2
        << "\" y2=\"" << y2 << "\"/>\n";
  };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!--\n";
  for (const auto& [k, v] : metadata) out << k << '=' << v << '\n';
  out << "-->\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPixels << "\" height=\""
      << kPixels << "\" viewBox=\"0 0 " << kPixels << ' ' << kPixels << "\">\n";
  out << "<style>.road{stroke:#888;stroke-width:1.5}.cell{stroke:#1f5fbf;stroke-width:0.8}"
         ".pt{fill:#c0392b}.typ{fill:#000}</style>\n";
  out << "<defs><clipPath id=\"view\"><circle cx=\"" << kPixels / 2 << "\" cy=\"" << kPixels / 2
      << "\" r=\"" << kPixels / 2 << "\"/></clipPath></defs>\n";
  out << "<g clip-path=\"url(#view)\">\n";

  for (const LineParams& l : real.lines) {
    if (std::abs(l.r) >= view_radius) continue;
    const double h = chord_half_length(l.r, view_radius);
    segment(line_point(l, -h), line_point(l, h), "road");
  }
  if (tess != nullptr) {
    const double reach = 4.0 * view_radius;
    for (const VoronoiEdge& e : tess->edges) {
      if (e.bounded()) {
        segment(tess->vertices[*e.v1], tess->vertices[*e.v2], "cell");
      } else if (e.v1) {
        const Point2 a = tess->vertices[*e.v1];
        segment(a, a + reach * e.direction, "cell");
      } else {
        segment(e.anchor - reach * e.direction, e.anchor + reach * e.direction, "cell");
      }
    }
  }
  for (std::size_t i = 0; i < real.points.size(); ++i) {
    const Point2 p = real.points[i].position;
    if (norm(p) > view_radius) continue;
    const auto [cx, cy] = px(p);
    const bool typical = real.palm && i == 0;
    out << "<circle class=\"" << (typical ? "typ" : "pt") << "\" cx=\"" << cx << "\" cy=\"" << cy
        << "\" r=\"" << (typical ? 5 : 3) << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
}

}  // namespace plcp
