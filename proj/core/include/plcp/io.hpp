#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plcp/sampler.hpp"
#include "plcp/tessellation.hpp"

namespace plcp {

/// Ordered key=value pairs embedded at the top of every artifact.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

/// Writes `# key=value` lines.
void write_metadata_comments(std::ostream& out, const Metadata& metadata);

/// Extracts the metadata of a CSV or SVG artifact written by this library.
/// Throws DomainError when none is found.
Metadata read_metadata(std::istream& in);

/// Realization CSV: metadata comments, then a `line_index,r,theta` section and
/// a `point_index,line_index,t,x,y` section separated by a blank line.
void write_realization_csv(std::ostream& out, const Realization& real, const Metadata& metadata);

/// Reads the line and point sections back. Model parameters, radii and seed
/// are taken from the metadata keys written by write_realization_csv.
Realization read_realization_csv(std::istream& in);

/// Realization metadata rows: params, radii, seed and generator name.
Metadata realization_metadata(const Realization& real);

/// Tessellation CSV with sections `vertex_id,x,y`, `edge_id,v1,v2,dir_x,dir_y`
/// and `generator_id,vertex_ids`. Missing edge endpoints are empty fields;
/// cell vertex ids are joined by ';'.
void write_tessellation_csv(std::ostream& out, const Tessellation& tess,
                            const Metadata& metadata);

/// Plain numeric table with a header row.
void write_table_csv(std::ostream& out, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows, const Metadata& metadata);

/// SVG of the lines, points and (optionally) Voronoi cells inside the disk of
/// `view_radius`.
void render_svg(std::ostream& out, const Realization& real, const Tessellation* tess,
                double view_radius, const Metadata& metadata);

}  // namespace plcp
