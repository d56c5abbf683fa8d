#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "util.hpp"

namespace kakeya {

/// A Kakeya configuration: a base line and, for each of its q+1 points in
/// canonical order, one further line through that point. The realized set
/// is the union of the assigned lines with the base line removed.
struct KakeyaConfig {
    int base_line = 0;
    std::vector<int> assigned;
};

inline void validate_config(const Plane& pl, const KakeyaConfig& cfg) {
    const int q = pl.q();
    if (cfg.base_line < 0 || cfg.base_line >= pl.size())
        throw std::invalid_argument("KakeyaConfig: base line out of range");
    const auto& pts = pl.points_on_line(cfg.base_line);
    if (static_cast<int>(cfg.assigned.size()) != q + 1)
        throw std::invalid_argument("KakeyaConfig: expected one line per base point");
    for (int i = 0; i <= q; ++i) {
        const int l = cfg.assigned[static_cast<std::size_t>(i)];
        if (l < 0 || l >= pl.size())
            throw std::invalid_argument("KakeyaConfig: assigned line out of range");
        if (l == cfg.base_line)
            throw std::invalid_argument("KakeyaConfig: assigned line equals the base line");
        if (!pl.incident(pts[static_cast<std::size_t>(i)], l))
            throw std::invalid_argument("KakeyaConfig: line " + std::to_string(l) +
                                        " misses its base point");
    }
}

struct KakeyaAnalysis {
    PointSet points;               // the realized set K
    std::vector<int> multiplicity; // assigned lines through each plane point (0 off K and on the base line)
    long long sigma = 0;           // sum of (m-1)(m-2)/2 over K
    int size = 0;
};

inline KakeyaAnalysis realize(const Plane& pl, const KakeyaConfig& cfg) {
    validate_config(pl, cfg);
    KakeyaAnalysis out{pl.empty_set(), std::vector<int>(static_cast<std::size_t>(pl.size()), 0), 0, 0};
    for (int l : cfg.assigned) out.points |= pl.line_mask(l);
    out.points.subtract(pl.line_mask(cfg.base_line));
    const PointSet& base = pl.line_mask(cfg.base_line);
    for (int l : cfg.assigned) {
        for (int p : pl.points_on_line(l)) {
            if (!base.test(p)) ++out.multiplicity[static_cast<std::size_t>(p)];
        }
    }
    for (int p = 0; p < pl.size(); ++p) {
        const long long m = out.multiplicity[static_cast<std::size_t>(p)];
        if (m >= 3) out.sigma += (m - 1) * (m - 2) / 2;
    }
    out.size = out.points.count();
    return out;
}

struct IncidenceCheck {
    int size = 0;
    long long sigma = 0;
    long long expected = 0;     // q(q+1)/2 + sigma
    long long mult_total = 0;   // should equal q(q+1)
    bool holds = false;
};

/// |K| = q(q+1)/2 + sigma(K), with the two sides computed by independent
/// routes (bitset union vs. per-point line census).
inline IncidenceCheck verify_incidence_formula(const Plane& pl, const KakeyaConfig& cfg) {
    const KakeyaAnalysis a = realize(pl, cfg);
    const long long q = pl.q();
    IncidenceCheck c;
    c.size = a.size;
    c.sigma = a.sigma;
    c.expected = q * (q + 1) / 2 + a.sigma;
    for (int m : a.multiplicity) c.mult_total += m;
    c.holds = (c.size == c.expected) && (c.mult_total == q * (q + 1));
    return c;
}

/// The conic {(1 : t : t^2)} plus (0 : 0 : 1).
inline PointSet canonical_conic(const Plane& pl) {
    const Field& f = pl.field();
    PointSet s = pl.empty_set();
    for (Elt t = 0; t < f.q(); ++t) s.set(pl.index_of({1, t, f.mul(t, t)}));
    s.set(pl.index_of({0, 0, 1}));
    return s;
}

/// For even q all tangents of the conic concur at (0 : 1 : 0); adjoining
/// that nucleus yields a (q+2)-arc.
inline PointSet canonical_hyperoval(const Plane& pl) {
    if (pl.q() % 2 != 0) throw std::invalid_argument("canonical_hyperoval: q must be even");
    PointSet s = canonical_conic(pl);
    s.set(pl.index_of({0, 1, 0}));
    return s;
}

/// Conic plus the first point (in canonical order) lying on exactly two
/// tangents. Odd q only.
inline PointSet canonical_extremal_omega(const Plane& pl) {
    if (pl.q() % 2 == 0) throw std::invalid_argument("canonical_extremal_omega: q must be odd");
    const PointSet conic = canonical_conic(pl);
    for (int e = 0; e < pl.size(); ++e) {
        if (conic.test(e)) continue;
        int tangents = 0;
        for (int l : pl.lines_through_point(e))
            if (count_and(pl.line_mask(l), conic) == 1) ++tangents;
        if (tangents == 2) {
            PointSet s = conic;
            s.set(e);
            return s;
        }
    }
    throw std::logic_error("canonical_extremal_omega: no external point found");
}

namespace detail {

/// Shared driver for the dual-arc constructions: given q+2 (or q+1) lines
/// no three of which are concurrent, pick the smallest as the base line and
/// assign to each of its points the unique other line of the family through
/// it. Returns the index of the point left unassigned, if any.
inline std::optional<int> assign_from_dual_arc(const Plane& pl, const std::vector<int>& arc_lines,
                                               KakeyaConfig& cfg) {
    cfg.base_line = arc_lines.front();
    cfg.assigned.clear();
    std::optional<int> unassigned;
    const auto& pts = pl.points_on_line(cfg.base_line);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        int found = -1;
        for (int l : arc_lines) {
            if (l == cfg.base_line || !pl.incident(pts[i], l)) continue;
            if (found != -1)
                throw std::logic_error("assign_from_dual_arc: three concurrent lines");
            found = l;
        }
        cfg.assigned.push_back(found);
        if (found == -1) {
            if (unassigned)
                throw std::logic_error("assign_from_dual_arc: two unassigned points");
            unassigned = static_cast<int>(i);
        }
    }
    return unassigned;
}

}  // namespace detail

/// Even q: dualize the hyperoval; every point of the base line lies on
/// exactly one other line of the family, so the assignment is forced and
/// the realized set attains q(q+1)/2 with sigma = 0.
inline KakeyaConfig construct_hyperoval_kakeya(const Plane& pl) {
    if (pl.q() % 2 != 0 || pl.q() < 4)
        throw std::invalid_argument("construct_hyperoval_kakeya: q must be even and > 2");
    std::vector<int> arc = canonical_hyperoval(pl).indices();  // identity duality: reuse as lines
    KakeyaConfig cfg;
    const auto leftover = detail::assign_from_dual_arc(pl, arc, cfg);
    if (leftover) throw std::logic_error("construct_hyperoval_kakeya: unassigned point");
    return cfg;
}

/// Odd q: dualize the conic. A single point A of the base line carries no
/// second dual-conic line; any line through A other than the base line
/// completes the configuration at size q(q+1)/2 + (q-1)/2. The default is
/// the smallest such line; `a_line` overrides it.
inline KakeyaConfig construct_oval_kakeya(const Plane& pl, std::optional<int> a_line = {}) {
    if (pl.q() % 2 == 0 || pl.q() < 3)
        throw std::invalid_argument("construct_oval_kakeya: q must be odd and > 2");
    std::vector<int> arc = canonical_conic(pl).indices();
    KakeyaConfig cfg;
    const auto leftover = detail::assign_from_dual_arc(pl, arc, cfg);
    if (!leftover) throw std::logic_error("construct_oval_kakeya: no exceptional point");
    const int a_point = pl.points_on_line(cfg.base_line)[static_cast<std::size_t>(*leftover)];
    int chosen = -1;
    if (a_line) {
        if (*a_line == cfg.base_line || *a_line < 0 || *a_line >= pl.size() ||
            !pl.incident(a_point, *a_line))
            throw std::invalid_argument("construct_oval_kakeya: invalid line for the exceptional point");
        chosen = *a_line;
    } else {
        for (int l : pl.lines_through_point(a_point)) {
            if (l != cfg.base_line) { chosen = l; break; }
        }
    }
    cfg.assigned[static_cast<std::size_t>(*leftover)] = chosen;
    return cfg;
}

/// Degenerate comparison case: all assigned lines concurrent at one point
/// off the base line. Realizes q^2 points with sigma = q(q-1)/2.
inline KakeyaConfig construct_pencil_config(const Plane& pl, int apex, int base_line = 0) {
    if (pl.incident(apex, base_line))
        throw std::invalid_argument("construct_pencil_config: apex lies on the base line");
    KakeyaConfig cfg;
    cfg.base_line = base_line;
    for (int p : pl.points_on_line(base_line)) cfg.assigned.push_back(pl.line_through(p, apex));
    return cfg;
}

inline KakeyaConfig random_config(const Plane& pl, Rng& rng, int base_line = 0) {
    KakeyaConfig cfg;
    cfg.base_line = base_line;
    for (int p : pl.points_on_line(base_line)) {
        std::vector<int> choices;
        for (int l : pl.lines_through_point(p))
            if (l != base_line) choices.push_back(l);
        cfg.assigned.push_back(choices[rng.bounded(choices.size())]);
    }
    return cfg;
}

/// Line-intersection spectrum of a point set: a[i] counts the lines meeting
/// the set in exactly i points. Three double-counting identities are
/// enforced on every call; a violation means a bug, not bad input.
struct Spectrum {
    std::vector<long long> a;
    long long lines_meeting = 0;
};

inline Spectrum intersection_spectrum(const Plane& pl, const PointSet& omega) {
    if (!(omega.geom() == pl.geom_id()))
        throw std::invalid_argument("intersection_spectrum: set from another geometry");
    const long long q = pl.q();
    Spectrum s;
    s.a.assign(static_cast<std::size_t>(q) + 2, 0);
    for (int l = 0; l < pl.size(); ++l) ++s.a[static_cast<std::size_t>(count_and(pl.line_mask(l), omega))];
    const long long m = omega.count();
    long long sum = 0, wsum = 0, psum = 0;
    for (std::size_t i = 0; i < s.a.size(); ++i) {
        sum += s.a[i];
        wsum += static_cast<long long>(i) * s.a[i];
        psum += binomial(static_cast<long long>(i), 2) * s.a[i];
    }
    if (sum != pl.size() || wsum != m * (q + 1) || psum != binomial(m, 2))
        throw std::logic_error("intersection_spectrum: double-counting identity failed");
    s.lines_meeting = pl.size() - s.a[0];
    return s;
}

/// Excess of the intersecting-line count of a (q+2)-set over (q+2)(q+1)/2,
/// cross-checked against sum C(i-1, 2) a_i over i >= 3.
inline long long excess_f(const Plane& pl, const PointSet& omega) {
    const long long q = pl.q();
    if (omega.count() != q + 2)
        throw std::invalid_argument("excess_f: set must have q + 2 points");
    const Spectrum s = intersection_spectrum(pl, omega);
    const long long f1 = s.lines_meeting - (q + 2) * (q + 1) / 2;
    long long f2 = 0;
    for (std::size_t i = 3; i < s.a.size(); ++i)
        f2 += binomial(static_cast<long long>(i) - 1, 2) * s.a[i];
    if (f1 != f2) throw std::logic_error("excess_f: the two routes disagree");
    return f1;
}

}  // namespace kakeya
