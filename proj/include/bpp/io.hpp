#pragma once

#include <string>
#include <vector>

#include "bpp/field.hpp"
#include "bpp/geometry.hpp"

namespace bpp {

// round-trip decimal formatting; the same bytes for the same double
std::string format_double(double v);

// minimal CSV writer: rows of preformatted cells
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Field snapshot format (documented in the README):
//   line 1: "bpp-field 1 <dim> <resolution>"
//   line 2: box corners "<lo0> <lo1> [<lo2>] <hi0> <hi1> [<hi2>]"
//   then:   resolution^dim sample lines, row-major (last index fastest),
//           one %.17g value per line
void write_field_snapshot(const FunctionField& f, const std::string& path);
FunctionField read_field_snapshot(const std::string& path);

// Body snapshot: CSV with direction components and radial value per row
void write_body_csv(const StarBody& K, const std::string& path);

bool make_directories(const std::string& path);

}  // namespace bpp
