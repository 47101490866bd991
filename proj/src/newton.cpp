#include "g46/newton.hpp"

#include <numeric>
#include <stdexcept>

namespace g46 {

std::string_view to_string(Verdict v) { return v == Verdict::irreducible ? "irreducible" : "inconclusive"; }

namespace {

// > 0 when o -> a -> b turns counter-clockwise.
long long cross(const HullVertex& o, const HullVertex& a, const HullVertex& b) {
    return static_cast<long long>(a.r - o.r) * (b.v - o.v) - static_cast<long long>(a.v - o.v) * (b.r - o.r);
}

}  // namespace

NewtonPolygon newton_polygon(std::span<const Rat> coeffs) {
    if (coeffs.empty() || coeffs.back() == 0) throw std::invalid_argument("newton_polygon: leading coefficient is zero");
    NewtonPolygon poly;
    for (std::size_t r = 0; r < coeffs.size(); ++r) poly.points.push_back({static_cast<long>(r), v2(coeffs[r])});

    for (const auto& pt : poly.points) {
        if (pt.v.is_infinite()) continue;
        const HullVertex next{pt.r, pt.v.value()};
        while (poly.hull.size() >= 2 && cross(poly.hull[poly.hull.size() - 2], poly.hull.back(), next) <= 0)
            poly.hull.pop_back();
        poly.hull.push_back(next);
    }
    for (std::size_t i = 0; i + 1 < poly.hull.size(); ++i) {
        const auto& a = poly.hull[i];
        const auto& b = poly.hull[i + 1];
        const long dr = b.r - a.r;
        const long dv = b.v - a.v;
        poly.segments.push_back({a, b, make_rat(dv, dr), std::gcd(dr, dv < 0 ? -dv : dv) - 1});
    }
    return poly;
}

DumasCertificate dumas(std::span<const Rat> coeffs) {
    if (coeffs.size() < 2) throw std::invalid_argument("dumas: degree must be >= 1");
    if (coeffs.back() != 1) throw std::invalid_argument("dumas: polynomial must be monic (normalize first)");

    DumasCertificate cert;
    cert.d = static_cast<int>(coeffs.size()) - 1;
    cert.witness = newton_polygon(coeffs);
    const long d = cert.d;
    const Valuation v0 = v2(coeffs[0]);
    if (v0.is_infinite()) {
        cert.reason = "zero constant term";
        return cert;
    }
    const long h = v0.value();
    cert.h = h;

    // Primary test: every 0 < r < d satisfies v_r * d > h * (d - r).
    for (long r = 1; r < d; ++r) {
        const Valuation v = v2(coeffs[static_cast<std::size_t>(r)]);
        if (v.is_infinite()) continue;
        if (v.value() * d <= h * (d - r)) {
            cert.reason = "point (" + std::to_string(r) + "," + std::to_string(v.value()) +
                          ") on or below the segment (0," + std::to_string(h) + ")-(" + std::to_string(d) + ",0)";
            if (cert.witness.segments.size() > 1)
                cert.reason = "multiple segments (" + std::to_string(cert.witness.segments.size()) + "); " + cert.reason;
            return cert;
        }
    }
    const long g = std::gcd(h < 0 ? -h : h, d);
    if (g != 1) {
        cert.reason = "gcd(h,d)=" + std::to_string(g) + " != 1";
        return cert;
    }
    const std::vector<HullVertex> expected{{0, h}, {d, 0}};
    if (cert.witness.hull != expected) throw std::logic_error("dumas: hull disagrees with the segment inequalities");
    cert.verdict = Verdict::irreducible;
    cert.reason = "single segment (0," + std::to_string(h) + ")-(" + std::to_string(d) + ",0), gcd(h,d)=1";
    return cert;
}

}  // namespace g46
