#pragma once

// 2-adic Newton polygons and the single-segment (Dumas) irreducibility test.

#include "g46/arith.hpp"
#include "g46/faber.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace g46 {

struct NewtonPoint {
    long r = 0;
    Valuation v = Valuation::infinity();
};

struct HullVertex {
    long r = 0;
    long v = 0;
    friend bool operator==(const HullVertex&, const HullVertex&) = default;
};

struct HullSegment {
    HullVertex from;
    HullVertex to;
    Rat slope;
    long interior_lattice_points = 0;  // lattice points strictly between the endpoints
};

struct NewtonPolygon {
    std::vector<NewtonPoint> points;  // r = 0..d, infinite v for zero coefficients
    std::vector<HullVertex> hull;     // lower convex hull, strictly increasing slopes
    std::vector<HullSegment> segments;
};

/// Lower convex hull of (r, v_2(c_r)) over the nonzero coefficients.
/// Throws std::invalid_argument for the zero polynomial or a zero leading coefficient.
NewtonPolygon newton_polygon(std::span<const Rat> coeffs);
inline NewtonPolygon newton_polygon(const FaberPolynomial& p) { return newton_polygon(p.coeffs); }

enum class Verdict { irreducible, inconclusive };
std::string_view to_string(Verdict v);

struct DumasCertificate {
    Verdict verdict = Verdict::inconclusive;
    std::optional<long> h;  // v_2(c_0), absent when c_0 = 0
    int d = 0;
    NewtonPolygon witness;
    std::string reason;
};

/// Irreducible iff the polygon is the single segment (0,h)-(d,0) with
/// gcd(h,d) = 1. Anything else is inconclusive, never "reducible".
/// Throws std::invalid_argument for non-monic input or degree 0.
DumasCertificate dumas(std::span<const Rat> coeffs);
inline DumasCertificate dumas(const FaberPolynomial& p) { return dumas(p.coeffs); }

}  // namespace g46
