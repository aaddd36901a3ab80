// Exact rational scalar and point types used throughout the library.
//
// All geometric coordinates, frequencies and residue tests are exact; floating
// point enters only when a reduced phase or a closed-form transform value is
// finally evaluated.

#ifndef RIESZFORGE_RATIONAL_HPP
#define RIESZFORGE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rieszforge {

using BigInt = boost::multiprecision::cpp_int;
// expression templates off: Rat behaves as a plain value type
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline BigInt rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Largest integer <= r.
inline BigInt floor_rat(const Rat& r) {
    BigInt q = rat_num(r) / rat_den(r);
    if (rat_num(r) < 0 && q * rat_den(r) != rat_num(r)) --q;
    return q;
}

inline BigInt ceil_rat(const Rat& r) {
    BigInt q = rat_num(r) / rat_den(r);
    if (rat_num(r) > 0 && q * rat_den(r) != rat_num(r)) ++q;
    return q;
}

/// Fractional part in [0, 1).
inline Rat frac(const Rat& r) { return r - Rat(floor_rat(r)); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

/// Parses "p/q", "p", or a decimal-free signed integer string.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

inline std::string rat_to_string(const Rat& r) {
    if (is_integer(r)) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

/// Point in R^1 or R^2 with exact coordinates. For dim 1 only x is used.
struct RPoint {
    Rat x;
    Rat y;
    int dim = 2;

    RPoint() = default;
    explicit RPoint(Rat x_) : x(std::move(x_)), y(0), dim(1) {}
    RPoint(Rat x_, Rat y_) : x(std::move(x_)), y(std::move(y_)), dim(2) {}

    Rat coord(int i) const { return i == 0 ? x : y; }
    bool operator==(const RPoint& o) const { return dim == o.dim && x == o.x && y == o.y; }
};

inline Rat dot(const RPoint& a, const RPoint& b) {
    if (a.dim != b.dim) throw std::invalid_argument("dimension mismatch in dot");
    Rat s = a.x * b.x;
    if (a.dim == 2) s += a.y * b.y;
    return s;
}

inline Rat max_norm(const RPoint& p) {
    Rat ax = p.x < 0 ? Rat(-p.x) : p.x;
    if (p.dim == 1) return ax;
    Rat ay = p.y < 0 ? Rat(-p.y) : p.y;
    return ax > ay ? ax : ay;
}

/// Shell-then-lexicographic order used for every truncated enumeration.
inline bool spectral_less(const RPoint& a, const RPoint& b) {
    Rat na = max_norm(a), nb = max_norm(b);
    if (na != nb) return na < nb;
    if (a.x != b.x) return a.x < b.x;
    if (a.dim == 2 && a.y != b.y) return a.y < b.y;
    return false;
}

struct RPointHash {
    size_t operator()(const RPoint& p) const {
        std::hash<std::string> h;
        return h(rat_to_string(p.x) + "," + rat_to_string(p.y));
    }
};

}  // namespace rieszforge

#endif
