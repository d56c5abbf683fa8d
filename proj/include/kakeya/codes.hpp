#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "util.hpp"

namespace kakeya {

// ---------------------------------------------------------------------------
// Exact linear algebra over a prime field GF(p)
// ---------------------------------------------------------------------------

struct GFMatrix {
    int p = 2;
    int cols = 0;
    std::vector<std::vector<int>> rows;  // entries reduced mod p
};

namespace detail {

inline int mod_p(long long x, int p) {
    int r = static_cast<int>(x % p);
    return r < 0 ? r + p : r;
}

inline int inv_mod_p(int a, int p) {
    // p prime, a nonzero mod p: Fermat inverse.
    long long r = 1, b = a % p;
    for (int e = p - 2; e > 0; e >>= 1) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
    }
    return static_cast<int>(r);
}

}  // namespace detail

/// Reduced row echelon form with first-nonzero pivoting; pivot column
/// indices are appended to *pivots when given.
inline GFMatrix rref_gfp(GFMatrix m, std::vector<int>* pivots = nullptr) {
    const int p = m.p;
    int r = 0;
    for (int c = 0; c < m.cols && r < static_cast<int>(m.rows.size()); ++c) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(m.rows.size()); ++i)
            if (m.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] % p != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m.rows[static_cast<std::size_t>(r)], m.rows[static_cast<std::size_t>(piv)]);
        auto& row = m.rows[static_cast<std::size_t>(r)];
        const int s = detail::inv_mod_p(row[static_cast<std::size_t>(c)], p);
        for (auto& x : row) x = detail::mod_p(static_cast<long long>(x) * s, p);
        for (int i = 0; i < static_cast<int>(m.rows.size()); ++i) {
            if (i == r) continue;
            auto& other = m.rows[static_cast<std::size_t>(i)];
            const int f = other[static_cast<std::size_t>(c)] % p;
            if (f == 0) continue;
            for (int j = 0; j < m.cols; ++j)
                other[static_cast<std::size_t>(j)] = detail::mod_p(
                    other[static_cast<std::size_t>(j)] -
                        static_cast<long long>(f) * row[static_cast<std::size_t>(j)],
                    p);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return m;
}

inline int rank_gfp(const GFMatrix& m) {
    std::vector<int> pivots;
    rref_gfp(m, &pivots);
    return static_cast<int>(pivots.size());
}

/// Basis of the right null space {v : Mv = 0}, one vector per free column,
/// in ascending free-column order.
inline std::vector<std::vector<int>> nullspace_gfp(const GFMatrix& m) {
    std::vector<int> pivots;
    const GFMatrix r = rref_gfp(m, &pivots);
    std::vector<char> is_pivot(static_cast<std::size_t>(m.cols), 0);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = 1;
    std::vector<std::vector<int>> basis;
    for (int f = 0; f < m.cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<int> v(static_cast<std::size_t>(m.cols), 0);
        v[static_cast<std::size_t>(f)] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[static_cast<std::size_t>(pivots[i])] =
                detail::mod_p(-r.rows[i][static_cast<std::size_t>(f)], m.p);
        basis.push_back(std::move(v));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Line-point incidence codes
// ---------------------------------------------------------------------------

/// Line-point incidence matrix of PG(n,q) over the base prime field:
/// rows are lines (in the space's line order), columns are points.
inline GFMatrix incidence_matrix(const ProjectiveSpace& ps) {
    GFMatrix m;
    m.p = ps.field().p();
    m.cols = ps.num_points();
    for (const auto& line : ps.lines()) {
        std::vector<int> row(static_cast<std::size_t>(m.cols), 0);
        for (int pt : line) row[static_cast<std::size_t>(pt)] = 1;
        m.rows.push_back(std::move(row));
    }
    return m;
}

/// Dimensions of the GF(p) code spanned by the lines of PG(dim, q) and of
/// its dual, against the binomial lower bound C(q + dim - 1, dim) for the
/// dual dimension (an equality when q is prime).
struct CodeDims {
    int dim = 0;  // projective dimension of the geometry carrying the code
    int q = 0;
    long long theta = 0;       // number of points
    int dim_code = 0;          // GF(p)-rank of the incidence matrix
    int dim_dual = 0;          // theta - dim_code
    long long lower_bound = 0; // C(q + dim - 1, dim)
    bool bound_holds = false;
    bool q_is_prime = false;
    bool prime_equality = false;  // dim_dual == lower_bound
};

inline CodeDims code_dims(int dim, const Field& f) {
    const ProjectiveSpace ps(dim, f);
    CodeDims cd;
    cd.dim = dim;
    cd.q = f.q();
    cd.theta = ps.num_points();
    cd.dim_code = rank_gfp(incidence_matrix(ps));
    cd.dim_dual = static_cast<int>(cd.theta) - cd.dim_code;
    cd.lower_bound = binomial(f.q() + dim - 1, dim);
    cd.bound_holds = cd.dim_dual >= cd.lower_bound;
    cd.q_is_prime = (f.t() == 1);
    cd.prime_equality = (cd.dim_dual == cd.lower_bound);
    return cd;
}

/// Dvir's lower bound C(q + n - 1, n) on Besicovitch sets in AG(n,q).
inline long long dvir_bound(int n, int q) { return binomial(q + n - 1, n); }

// ---------------------------------------------------------------------------
// Restriction of the dual code to a hyperplane
// ---------------------------------------------------------------------------

/// The dual code of PG(n,q), restricted to the hyperplane x0 = 0, equals
/// the dual code of PG(n-1,q). Checked in both directions: every restricted
/// dual word is orthogonal to the hyperplane's lines (containment), and
/// every dual word of the hyperplane lifts to a dual word of the big space
/// by the cone construction over the apex (1:0:...:0).
struct RestrictionReport {
    int n = 0;
    int q = 0;
    int dim_space_dual = 0;      // dim of the PG(n,q) dual code
    int dim_restricted = 0;      // dim of its restriction to the hyperplane
    int dim_hyperplane_dual = 0; // dim of the PG(n-1,q) dual code
    bool containment_holds = false;
    bool cone_lift_holds = false;
    bool equal = false;
};

inline RestrictionReport restriction_equality_check(int n, const Field& f) {
    if (n < 2) throw std::invalid_argument("restriction_equality_check: n must be >= 2");
    const ProjectiveSpace big(n, f);
    const ProjectiveSpace hyper(n - 1, f);
    const int p = f.p();

    // Hyperplane points are those with first coordinate 0; they correspond
    // to hyperplane-space points by dropping that coordinate.
    std::vector<int> h_to_big(static_cast<std::size_t>(hyper.num_points()));
    std::vector<int> big_to_h(static_cast<std::size_t>(big.num_points()), -1);
    for (int i = 0; i < hyper.num_points(); ++i) {
        std::vector<Elt> c;
        c.push_back(0);
        for (Elt x : hyper.point(i)) c.push_back(x);
        const int j = big.index_of(c);
        h_to_big[static_cast<std::size_t>(i)] = j;
        big_to_h[static_cast<std::size_t>(j)] = i;
    }

    const GFMatrix inc_big = incidence_matrix(big);
    const GFMatrix inc_hyper = incidence_matrix(hyper);
    const auto dual_big = nullspace_gfp(inc_big);
    const auto dual_hyper = nullspace_gfp(inc_hyper);

    RestrictionReport rep;
    rep.n = n;
    rep.q = f.q();
    rep.dim_space_dual = static_cast<int>(dual_big.size());
    rep.dim_hyperplane_dual = static_cast<int>(dual_hyper.size());

    GFMatrix restricted;
    restricted.p = p;
    restricted.cols = hyper.num_points();
    for (const auto& w : dual_big) {
        std::vector<int> row(static_cast<std::size_t>(hyper.num_points()));
        for (int i = 0; i < hyper.num_points(); ++i)
            row[static_cast<std::size_t>(i)] =
                w[static_cast<std::size_t>(h_to_big[static_cast<std::size_t>(i)])];
        restricted.rows.push_back(std::move(row));
    }
    rep.dim_restricted = rank_gfp(restricted);

    const auto orthogonal_to_lines = [&](const ProjectiveSpace& ps, const std::vector<int>& v) {
        for (const auto& line : ps.lines()) {
            long long s = 0;
            for (int pt : line) s += v[static_cast<std::size_t>(pt)];
            if (s % p != 0) return false;
        }
        return true;
    };

    rep.containment_holds = true;
    for (const auto& row : restricted.rows)
        rep.containment_holds = rep.containment_holds && orthogonal_to_lines(hyper, row);

    // Cone lift: w(Y) = u(X) where X is the projection of Y from the apex
    // onto the hyperplane, and w(apex) = 0. Lines through the apex sum u(X)
    // q times (q = 0 mod p); other lines project bijectively onto
    // hyperplane lines, so the sums vanish because u is a dual word.
    std::vector<Elt> apex_coords(static_cast<std::size_t>(n) + 1, 0);
    apex_coords[0] = 1;
    const int apex = big.index_of(apex_coords);
    rep.cone_lift_holds = true;
    for (const auto& u : dual_hyper) {
        std::vector<int> w(static_cast<std::size_t>(big.num_points()), 0);
        for (int y = 0; y < big.num_points(); ++y) {
            if (y == apex) continue;
            std::vector<Elt> c = big.point(y);
            c[0] = 0;
            const int x = big_to_h[static_cast<std::size_t>(big.index_of(c))];
            w[static_cast<std::size_t>(y)] = u[static_cast<std::size_t>(x)];
        }
        bool ok = orthogonal_to_lines(big, w);
        for (int i = 0; i < hyper.num_points() && ok; ++i)
            ok = (w[static_cast<std::size_t>(h_to_big[static_cast<std::size_t>(i)])] ==
                  u[static_cast<std::size_t>(i)]);
        rep.cone_lift_holds = rep.cone_lift_holds && ok;
    }

    rep.equal = (rep.dim_restricted == rep.dim_hyperplane_dual);
    return rep;
}

// ---------------------------------------------------------------------------
// Besicovitch sets in AG(n,q) and the code-dimension bound
// ---------------------------------------------------------------------------

/// Union of one chosen line per direction: choice[d] indexes into
/// space.lines(d).
inline PointSet realize_besicovitch(const AffineSpace& sp, const std::vector<int>& choice) {
    if (static_cast<int>(choice.size()) != sp.num_directions())
        throw std::invalid_argument("realize_besicovitch: one line per direction required");
    PointSet k = sp.empty_set();
    for (int d = 0; d < sp.num_directions(); ++d) {
        const auto& lines = sp.lines(d);
        const int c = choice[static_cast<std::size_t>(d)];
        if (c < 0 || c >= static_cast<int>(lines.size()))
            throw std::invalid_argument("realize_besicovitch: line choice out of range");
        for (int pt : lines[static_cast<std::size_t>(c)]) k.set(pt);
    }
    return k;
}

/// Checks a per-direction line choice against the code-dimension bound
/// |K| >= dim of the dual line code of the direction space, against Dvir's
/// C(q+n-1, n), and against the mechanism behind the first bound: the rows
/// of the chosen lines for the free-column directions stay independent.
struct HighdimAudit {
    int n = 0;
    int q = 0;
    long long size = 0;
    long long theta_directions = 0;
    int dim_dual = 0;
    long long code_bound = 0;  // = dim_dual
    long long dvir = 0;
    std::vector<int> independent_directions;  // free columns of the direction incidence rref
    bool code_bound_holds = false;
    bool dvir_holds = false;
    bool rows_independent = false;
    bool holds = false;
};

inline HighdimAudit highdim_kakeya_audit(const AffineSpace& sp, const std::vector<int>& choice) {
    const PointSet k = realize_besicovitch(sp, choice);
    const ProjectiveSpace& dirs = sp.directions();
    const int p = sp.field().p();

    HighdimAudit rep;
    rep.n = sp.n();
    rep.q = sp.field().q();
    rep.size = k.count();
    rep.theta_directions = dirs.num_points();

    std::vector<int> pivots;
    rref_gfp(incidence_matrix(dirs), &pivots);
    std::vector<char> is_pivot(static_cast<std::size_t>(dirs.num_points()), 0);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = 1;
    for (int d = 0; d < dirs.num_points(); ++d)
        if (!is_pivot[static_cast<std::size_t>(d)]) rep.independent_directions.push_back(d);

    rep.dim_dual = static_cast<int>(rep.independent_directions.size());
    rep.code_bound = rep.dim_dual;
    rep.dvir = dvir_bound(sp.n(), sp.field().q());
    rep.code_bound_holds = rep.size >= rep.code_bound;
    rep.dvir_holds = rep.size >= rep.dvir;

    // No nonzero dual word is supported on the free columns, which is what
    // forces these particular rows to be independent.
    GFMatrix chosen;
    chosen.p = p;
    chosen.cols = sp.num_points();
    for (int d : rep.independent_directions) {
        std::vector<int> row(static_cast<std::size_t>(sp.num_points()), 0);
        for (int pt : sp.lines(d)[static_cast<std::size_t>(choice[static_cast<std::size_t>(d)])])
            row[static_cast<std::size_t>(pt)] = 1;
        chosen.rows.push_back(std::move(row));
    }
    rep.rows_independent = (rank_gfp(chosen) == static_cast<int>(chosen.rows.size()));
    rep.holds = rep.code_bound_holds && rep.dvir_holds && rep.rows_independent;
    return rep;
}

}  // namespace kakeya
