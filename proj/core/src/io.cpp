#include "trapmap/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace trapmap {

namespace {

bool is_blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

bool read_coords(const std::string& line, int count, long long* out) {
    std::istringstream ss(line);
    for (int i = 0; i < count; ++i)
        if (!(ss >> out[i])) return false;
    std::string rest;
    if (ss >> rest) return false;  // trailing garbage
    return true;
}

bool in_range(long long v) { return v >= -kCoordLimit && v <= kCoordLimit; }

}  // namespace

std::optional<std::vector<Segment>> parse_segments(std::istream& in, ParseError& err) {
    std::vector<Segment> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank_or_comment(line)) continue;
        long long v[4];
        if (!read_coords(line, 4, v)) {
            err = {lineno, "expected four integers: x1 y1 x2 y2"};
            return std::nullopt;
        }
        for (long long c : v) {
            if (!in_range(c)) {
                err = {lineno, "coordinate magnitude exceeds 2^30"};
                return std::nullopt;
            }
        }
        out.push_back(make_segment(static_cast<int>(out.size()), Point{v[0], v[1]}, Point{v[2], v[3]}));
    }
    return out;
}

std::optional<std::vector<Point>> parse_queries(std::istream& in, ParseError& err) {
    std::vector<Point> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank_or_comment(line)) continue;
        long long v[2];
        if (!read_coords(line, 2, v)) {
            err = {lineno, "expected two integers: x y"};
            return std::nullopt;
        }
        if (!in_range(v[0]) || !in_range(v[1])) {
            err = {lineno, "coordinate magnitude exceeds 2^30"};
            return std::nullopt;
        }
        out.push_back(Point{v[0], v[1]});
    }
    return out;
}

void write_segments(std::ostream& out, const std::vector<Segment>& segments) {
    for (const Segment& s : segments)
        out << s.left.x << ' ' << s.left.y << ' ' << s.right.x << ' ' << s.right.y << '\n';
}

}  // namespace trapmap
