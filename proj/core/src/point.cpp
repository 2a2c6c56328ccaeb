#include "bvc/point.hpp"

#include <stdexcept>

namespace bvc {

bool Point::operator<(const Point& other) const {
    return coords < other.coords;
}

Point& Point::operator+=(const Point& other) {
    if (dim() != other.dim()) throw std::invalid_argument("point dimension mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += other.coords[i];
    return *this;
}

Point operator*(const Rational& s, const Point& p) {
    Point out = p;
    for (auto& c : out.coords) c *= s;
    return out;
}

Point zero_point(std::size_t d) {
    return Point(std::vector<Rational>(d, Rational(0)));
}

Point parse_point(const std::string& text) {
    std::size_t first = text.find_first_not_of(" \t");
    std::size_t last = text.find_last_not_of(" \t");
    if (first == std::string::npos || text[first] != '(' || text[last] != ')')
        throw std::invalid_argument("point literal must be parenthesized: '" + text + "'");
    std::string body = text.substr(first + 1, last - first - 1);

    Point p;
    std::string field;
    auto flush = [&] {
        if (field.find_first_not_of(" \t") == std::string::npos)
            throw std::invalid_argument("empty coordinate in '" + text + "'");
        p.coords.push_back(parse_rational(field));
        field.clear();
    };
    for (char c : body) {
        if (c == ',') flush();
        else field += c;
    }
    flush();
    return p;
}

std::string format_point(const Point& p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i) out += ", ";
        out += format_rational(p[i]);
    }
    return out + ")";
}

}  // namespace bvc
