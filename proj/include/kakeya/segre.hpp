#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nuclei.hpp"

namespace kakeya {

namespace detail {

using Mat3 = std::array<std::array<Elt, 3>, 3>;

inline Mat3 mat_mul(const Field& f, const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Elt s = 0;
            for (int k = 0; k < 3; ++k)
                s = f.add(s, f.mul(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                                   b[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]));
            r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
        }
    return r;
}

inline std::array<Elt, 3> mat_apply(const Field& f, const Mat3& m, const std::array<Elt, 3>& v) {
    std::array<Elt, 3> r{};
    for (int i = 0; i < 3; ++i) {
        Elt s = 0;
        for (int k = 0; k < 3; ++k)
            s = f.add(s, f.mul(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                               v[static_cast<std::size_t>(k)]));
        r[static_cast<std::size_t>(i)] = s;
    }
    return r;
}

inline std::optional<Mat3> mat_inv(const Field& f, Mat3 a) {
    Mat3 inv{};
    for (int i = 0; i < 3; ++i) inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    for (int c = 0; c < 3; ++c) {
        int piv = -1;
        for (int r = c; r < 3; ++r)
            if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) { piv = r; break; }
        if (piv < 0) return std::nullopt;
        std::swap(a[static_cast<std::size_t>(c)], a[static_cast<std::size_t>(piv)]);
        std::swap(inv[static_cast<std::size_t>(c)], inv[static_cast<std::size_t>(piv)]);
        const Elt s = f.inv(a[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)]);
        for (int j = 0; j < 3; ++j) {
            a[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] =
                f.mul(s, a[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)]);
            inv[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] =
                f.mul(s, inv[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)]);
        }
        for (int r = 0; r < 3; ++r) {
            if (r == c) continue;
            const Elt m = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (m == 0) continue;
            for (int j = 0; j < 3; ++j) {
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
                    f.sub(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)],
                          f.mul(m, a[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)]));
                inv[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
                    f.sub(inv[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)],
                          f.mul(m, inv[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)]));
            }
        }
    }
    return inv;
}

}  // namespace detail

/// A projective frame (E1, E2, E3; unit): three points in general position
/// plus a unit point off the triangle sides. Carries the projectivity that
/// sends the frame to (1:0:0), (0:1:0), (0:0:1), (1:1:1).
class SegreFrame {
public:
    static SegreFrame make(const Plane& pl, int e1, int e2, int e3, int unit) {
        const Field& f = pl.field();
        detail::Mat3 cols{};
        const std::array<int, 3> base = {e1, e2, e3};
        for (int j = 0; j < 3; ++j) {
            const auto& pt = pl.point(base[static_cast<std::size_t>(j)]);
            for (int i = 0; i < 3; ++i)
                cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    pt[static_cast<std::size_t>(i)];
        }
        const auto inv = detail::mat_inv(f, cols);
        if (!inv) throw std::invalid_argument("SegreFrame: base points are collinear");
        const auto lam = detail::mat_apply(f, *inv, pl.point(unit));
        for (Elt l : lam)
            if (l == 0) throw std::invalid_argument("SegreFrame: unit point lies on a side");
        SegreFrame fr;
        fr.e1 = e1; fr.e2 = e2; fr.e3 = e3; fr.unit = unit;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                fr.to_std_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    f.mul(f.inv(lam[static_cast<std::size_t>(i)]),
                          (*inv)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        return fr;
    }

    /// Coordinates of a point in this frame.
    std::array<Elt, 3> coords(const Plane& pl, int point) const {
        return detail::mat_apply(pl.field(), to_std_, pl.point(point));
    }

    const detail::Mat3& to_standard() const { return to_std_; }

    int e1 = 0, e2 = 0, e3 = 0, unit = 0;

private:
    detail::Mat3 to_std_{};
};

/// The triple (x2/x1, x3/x2, x1/x3) of frame coordinates. Defined only off
/// the triangle sides; the three entries multiply to 1 identically.
inline std::array<Elt, 3> triple_coords(const Plane& pl, const SegreFrame& fr, int point) {
    const Field& f = pl.field();
    const auto y = fr.coords(pl, point);
    if (y[0] == 0 || y[1] == 0 || y[2] == 0)
        throw std::domain_error("triple_coords: point lies on a side of the frame triangle");
    return {f.div(y[1], y[0]), f.div(y[2], y[1]), f.div(y[0], y[2])};
}

struct TripleProducts {
    Elt p1 = 1, p2 = 1, p3 = 1;
};

/// Componentwise product of the triples of a point list. The product
/// p1 * p2 * p3 = 1 is enforced; it telescopes no matter the set.
inline TripleProducts segre_products(const Plane& pl, const SegreFrame& fr,
                                     const std::vector<int>& points) {
    const Field& f = pl.field();
    TripleProducts out;
    for (int p : points) {
        const auto t = triple_coords(pl, fr, p);
        out.p1 = f.mul(out.p1, t[0]);
        out.p2 = f.mul(out.p2, t[1]);
        out.p3 = f.mul(out.p3, t[2]);
    }
    if (f.mul(out.p1, f.mul(out.p2, out.p3)) != 1)
        throw std::logic_error("segre_products: triple products do not multiply to 1");
    return out;
}

namespace detail {

/// Pencil profile of P against a set: how many lines through P meet it in
/// each cardinality.
inline std::vector<int> lines_through_meeting(const Plane& pl, const PointSet& omega, int p,
                                              int want) {
    std::vector<int> out;
    for (int l : pl.lines_through_point(p))
        if (count_and(pl.line_mask(l), omega) == want) out.push_back(l);
    return out;
}

}  // namespace detail

/// Points of a (q+2)-set (nuclei excluded) lying on exactly one tangent;
/// for an extremal set each such point also lies on exactly one 3-secant.
inline std::vector<int> one_tangent_points(const Plane& pl, const PointSet& omega) {
    const auto nuclei = internal_nuclei(pl, omega);
    std::vector<int> out;
    for (int p : omega.indices()) {
        bool is_nucleus = false;
        for (int n : nuclei) is_nucleus |= (n == p);
        if (is_nucleus) continue;
        if (detail::lines_through_meeting(pl, omega, p, 1).size() == 1) out.push_back(p);
    }
    return out;
}

struct MuLambdaReport {
    int u = -1;
    int n1 = -1, n2 = -1, unit = -1;
    Elt lambda = 0;  // 3-secant through U meets the nucleus line at (1 : lambda : 0)
    Elt mu = 0;      // tangent through U meets it at (1 : mu : 0)
    bool holds = false;
};

/// With nuclei at (1:0:0), (0:1:0) and U at (0:0:1), the tangent and the
/// 3-secant through a one-tangent point U cut the nucleus line at opposite
/// coordinates: mu = -lambda.
inline MuLambdaReport verify_mu_lambda(const Plane& pl, const PointSet& omega, int u) {
    const Field& f = pl.field();
    const auto nuclei = internal_nuclei(pl, omega);
    if (nuclei.size() != 2)
        throw std::invalid_argument("verify_mu_lambda: set must have exactly two nuclei");
    if (!omega.test(u) || u == nuclei[0] || u == nuclei[1])
        throw std::invalid_argument("verify_mu_lambda: U must be a non-nucleus point of the set");
    const auto tangents = detail::lines_through_meeting(pl, omega, u, 1);
    const auto trisecants = detail::lines_through_meeting(pl, omega, u, 3);
    if (tangents.size() != 1 || trisecants.size() != 1)
        throw std::invalid_argument("verify_mu_lambda: U is not a one-tangent point");

    MuLambdaReport rep;
    rep.u = u;
    rep.n1 = nuclei[0];
    rep.n2 = nuclei[1];
    for (int p : omega.indices())
        if (p != rep.n1 && p != rep.n2 && p != u) { rep.unit = p; break; }
    const SegreFrame fr = SegreFrame::make(pl, rep.n1, rep.n2, u, rep.unit);

    const int nucleus_line = pl.line_through(rep.n1, rep.n2);
    const auto ratio_at = [&](int line) {
        const int x = pl.meet(line, nucleus_line);
        const auto y = fr.coords(pl, x);
        if (y[2] != 0 || y[0] == 0)
            throw std::logic_error("verify_mu_lambda: intersection off the nucleus line");
        return f.div(y[1], y[0]);
    };
    rep.lambda = ratio_at(trisecants[0]);
    rep.mu = ratio_at(tangents[0]);
    rep.holds = (rep.mu == f.neg(rep.lambda));
    return rep;
}

/// Runs verify_mu_lambda at every one-tangent point of the set.
inline std::vector<MuLambdaReport> mu_lambda_survey(const Plane& pl, const PointSet& omega) {
    std::vector<MuLambdaReport> out;
    for (int u : one_tangent_points(pl, omega)) out.push_back(verify_mu_lambda(pl, omega, u));
    return out;
}

struct ConicRelationRow {
    int v = -1;
    Elt a = 0, b = 0;
    bool nondegenerate = false;  // a, b nonzero, a != b, a != -b
    bool relation_holds = false; // 2ab - a - b = 0
    Elt lambda = 0;              // tangent at V meets the nucleus line at (1 : lambda : 0)
    bool lambda_holds = false;   // lambda = -b^2 / a^2
    bool trisecant_holds = false;// 3-secant at V meets it at (1 : -lambda : 0)
};

struct ConicRelationReport {
    int n1 = -1, n2 = -1, u1 = -1, u2 = -1;
    std::vector<ConicRelationRow> rows;
    bool all_hold = true;
};

/// Frame two one-tangent points U1, U2 sharing a 3-secant at (0:0:1) and
/// (1:1:1); every other one-tangent point V = (a : b : 1) off the line U1U2
/// then satisfies 2ab - a - b = 0 with its tangent slope equal to -b^2/a^2.
inline ConicRelationReport verify_conic_relation(const Plane& pl, const PointSet& omega) {
    const Field& f = pl.field();
    if (pl.q() % 2 == 0)
        throw std::invalid_argument("verify_conic_relation: q must be odd");
    const auto nuclei = internal_nuclei(pl, omega);
    if (nuclei.size() != 2)
        throw std::invalid_argument("verify_conic_relation: set must have exactly two nuclei");
    const Spectrum sp = intersection_spectrum(pl, omega);
    for (std::size_t i = 4; i < sp.a.size(); ++i)
        if (sp.a[i] != 0)
            throw std::invalid_argument("verify_conic_relation: set has a 4-secant");

    const auto ots = one_tangent_points(pl, omega);
    ConicRelationReport rep;
    rep.n1 = nuclei[0];
    rep.n2 = nuclei[1];
    int trisec = -1;
    for (int l = 0; l < pl.size() && trisec < 0; ++l) {
        if (count_and(pl.line_mask(l), omega) != 3) continue;
        std::vector<int> on;
        for (int u : ots)
            if (pl.incident(u, l)) on.push_back(u);
        if (on.size() >= 2) {
            trisec = l;
            rep.u1 = on[0];
            rep.u2 = on[1];
        }
    }
    if (trisec < 0)
        throw std::invalid_argument("verify_conic_relation: no 3-secant with two one-tangent points");

    const SegreFrame fr = SegreFrame::make(pl, rep.n1, rep.n2, rep.u1, rep.u2);
    const int nucleus_line = pl.line_through(rep.n1, rep.n2);
    const int u1u2 = pl.line_through(rep.u1, rep.u2);
    const Elt two = f.add(1, 1);

    for (int v : ots) {
        if (v == rep.u1 || v == rep.u2 || pl.incident(v, u1u2)) continue;
        ConicRelationRow row;
        row.v = v;
        const auto y = fr.coords(pl, v);
        row.a = f.div(y[0], y[2]);
        row.b = f.div(y[1], y[2]);
        row.nondegenerate = row.a != 0 && row.b != 0 && row.a != row.b && row.a != f.neg(row.b);
        row.relation_holds =
            f.sub(f.sub(f.mul(two, f.mul(row.a, row.b)), row.a), row.b) == 0;
        const auto ratio_at = [&](int line) {
            const int x = pl.meet(line, nucleus_line);
            const auto w = fr.coords(pl, x);
            if (w[2] != 0 || w[0] == 0)
                throw std::logic_error("verify_conic_relation: intersection off the nucleus line");
            return f.div(w[1], w[0]);
        };
        row.lambda = ratio_at(detail::lines_through_meeting(pl, omega, v, 1).at(0));
        const Elt want = f.neg(f.div(f.mul(row.b, row.b), f.mul(row.a, row.a)));
        row.lambda_holds = (row.lambda == want);
        const Elt lam3 = ratio_at(detail::lines_through_meeting(pl, omega, v, 3).at(0));
        row.trisecant_holds = (lam3 == f.neg(row.lambda));
        rep.all_hold &= row.nondegenerate && row.relation_holds && row.lambda_holds &&
                        row.trisecant_holds;
        rep.rows.push_back(row);
    }
    return rep;
}

struct TriplePointReport {
    bool odd_hypothesis = false;
    std::vector<bool> line_has_triple;  // indexed like the assignment list
    int exceptional = 0;                // assigned lines carrying no point of multiplicity >= 3
    bool holds = false;                 // under the odd hypothesis: at most one exception
};

/// For odd q, every assigned line except possibly one carries a point of
/// multiplicity at least 3. Even q is reported as out of hypothesis.
inline TriplePointReport triple_point_census(const Plane& pl, const KakeyaConfig& cfg) {
    const KakeyaAnalysis a = realize(pl, cfg);
    TriplePointReport rep;
    rep.odd_hypothesis = (pl.q() % 2 == 1);
    const PointSet& base = pl.line_mask(cfg.base_line);
    for (int l : cfg.assigned) {
        bool has = false;
        for (int p : pl.points_on_line(l)) {
            if (!base.test(p) && a.multiplicity[static_cast<std::size_t>(p)] >= 3) {
                has = true;
                break;
            }
        }
        rep.line_has_triple.push_back(has);
        if (!has) ++rep.exceptional;
    }
    rep.holds = !rep.odd_hypothesis || rep.exceptional <= 1;
    return rep;
}

}  // namespace kakeya
