#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trapmap/geometry.hpp"

namespace trapmap {

struct ParseError {
    int line = 0;
    std::string message;
};

/// Segment text format: one segment per line, "x1 y1 x2 y2" as integers;
/// blank lines and lines starting with '#' are ignored. Segments get dense
/// ids in file order and canonical orientation. Coordinates beyond 2^30 in
/// magnitude are rejected so every predicate stays exact.
std::optional<std::vector<Segment>> parse_segments(std::istream& in, ParseError& err);

/// Query file: one "x y" integer pair per line, same comment rules.
std::optional<std::vector<Point>> parse_queries(std::istream& in, ParseError& err);

void write_segments(std::ostream& out, const std::vector<Segment>& segments);

}  // namespace trapmap
