#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bvc/rational.hpp"

namespace bvc {

// A point of Q^d. Doubles as a process state and a process input.
struct Point {
    std::vector<Rational> coords;

    Point() = default;
    explicit Point(std::vector<Rational> c) : coords(std::move(c)) {}

    std::size_t dim() const { return coords.size(); }
    const Rational& operator[](std::size_t i) const { return coords[i]; }
    Rational& operator[](std::size_t i) { return coords[i]; }

    bool operator==(const Point& other) const = default;
    // Lexicographic coordinate order; used only to fix deterministic output.
    bool operator<(const Point& other) const;

    Point& operator+=(const Point& other);
    friend Point operator+(Point a, const Point& b) { return a += b; }
    friend Point operator*(const Rational& s, const Point& p);
};

Point zero_point(std::size_t d);

// Parses "(a, b/c, -d.e)"; one coordinate per comma-separated field.
// Throws std::invalid_argument on malformed input.
Point parse_point(const std::string& text);

// Canonical form "(a, b/c)"; reparses to the same value.
std::string format_point(const Point& p);

}  // namespace bvc
