#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "galois.hpp"

namespace kakeya {

/// Identifies PG(n, p^t). Two sets are comparable only when their ids match.
struct GeomId {
    int n = 0;
    int p = 0;
    int t = 0;
    friend bool operator==(const GeomId&, const GeomId&) = default;
};

/// Dense bitmap over the canonical point indices of one geometry.
/// Cardinality is maintained eagerly so count() is O(1).
class PointSet {
public:
    PointSet() = default;

    PointSet(GeomId geom, int universe)
        : geom_(geom),
          universe_(universe),
          words_(static_cast<std::size_t>((universe + 63) / 64), 0) {
        if (universe < 0) throw std::invalid_argument("PointSet: negative universe");
    }

    GeomId geom() const { return geom_; }
    int universe() const { return universe_; }
    int count() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool test(int i) const {
        check(i);
        return (words_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1ULL;
    }

    void set(int i) {
        check(i);
        auto& w = words_[static_cast<std::size_t>(i >> 6)];
        const std::uint64_t bit = 1ULL << (i & 63);
        if (!(w & bit)) {
            w |= bit;
            ++count_;
        }
    }

    void reset(int i) {
        check(i);
        auto& w = words_[static_cast<std::size_t>(i >> 6)];
        const std::uint64_t bit = 1ULL << (i & 63);
        if (w & bit) {
            w &= ~bit;
            --count_;
        }
    }

    PointSet& operator|=(const PointSet& o) {
        match(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        recount();
        return *this;
    }

    PointSet& operator&=(const PointSet& o) {
        match(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        recount();
        return *this;
    }

    /// Removes every point of o from this set.
    PointSet& subtract(const PointSet& o) {
        match(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
        recount();
        return *this;
    }

    PointSet complement() const {
        PointSet r(geom_, universe_);
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = ~words_[k];
        if (universe_ & 63)
            r.words_.back() &= (1ULL << (universe_ & 63)) - 1;
        r.recount();
        return r;
    }

    std::vector<int> indices() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count_));
        for (int i = 0; i < universe_; ++i) {
            if (test(i)) out.push_back(i);
        }
        return out;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

    friend bool operator==(const PointSet& a, const PointSet& b) {
        return a.geom_ == b.geom_ && a.universe_ == b.universe_ && a.words_ == b.words_;
    }

    friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
    friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }

    static PointSet from_indices(GeomId geom, int universe, const std::vector<int>& idx) {
        PointSet s(geom, universe);
        for (int i : idx) s.set(i);
        return s;
    }

private:
    void check(int i) const {
        if (i < 0 || i >= universe_)
            throw std::out_of_range("PointSet: index " + std::to_string(i) + " outside universe");
    }

    void match(const PointSet& o) const {
        if (!(geom_ == o.geom_) || universe_ != o.universe_)
            throw std::invalid_argument("PointSet: operands belong to different geometries");
    }

    void recount() {
        int c = 0;
        for (std::uint64_t w : words_) c += std::popcount(w);
        count_ = c;
    }

    GeomId geom_{};
    int universe_ = 0;
    int count_ = 0;
    std::vector<std::uint64_t> words_;
};

inline int count_and(const PointSet& a, const PointSet& b) {
    if (a.universe() != b.universe())
        throw std::invalid_argument("count_and: mismatched universes");
    int c = 0;
    for (std::size_t k = 0; k < a.words().size(); ++k)
        c += std::popcount(a.words()[k] & b.words()[k]);
    return c;
}

inline bool is_subset(const PointSet& a, const PointSet& b) {
    if (a.universe() != b.universe())
        throw std::invalid_argument("is_subset: mismatched universes");
    for (std::size_t k = 0; k < a.words().size(); ++k)
        if (a.words()[k] & ~b.words()[k]) return false;
    return true;
}

/// The projective plane PG(2, q) with every incidence precomputed.
///
/// Points and lines are both indexed by the lexicographic rank of their
/// normalized coordinate triple (leftmost nonzero coordinate scaled to 1),
/// so the standard duality (a:b:c) <-> [a:b:c] is the identity on indices.
class Plane {
public:
    static constexpr int kMaxQ = 64;

    explicit Plane(Field f) : f_(std::move(f)) {
        const int q = f_.q();
        if (q > kMaxQ) throw std::invalid_argument("Plane: order too large");
        enc_to_idx_.assign(static_cast<std::size_t>(q) * q * q, -1);
        for (int e = 0; e < q * q * q; ++e) {
            const std::array<Elt, 3> c = {e / (q * q), (e / q) % q, e % q};
            int lead = 0;
            while (lead < 3 && c[static_cast<std::size_t>(lead)] == 0) ++lead;
            if (lead == 3 || c[static_cast<std::size_t>(lead)] != 1) continue;
            enc_to_idx_[static_cast<std::size_t>(e)] = static_cast<int>(pts_.size());
            pts_.push_back(c);
        }
        n_ = static_cast<int>(pts_.size());
        if (n_ != q * q + q + 1) throw std::logic_error("Plane: point count mismatch");

        const GeomId id = geom_id();
        line_masks_.assign(static_cast<std::size_t>(n_), PointSet(id, n_));
        line_points_.assign(static_cast<std::size_t>(n_), {});
        point_lines_.assign(static_cast<std::size_t>(n_), {});
        for (int l = 0; l < n_; ++l) {
            for (int p = 0; p < n_; ++p) {
                if (dot(pts_[static_cast<std::size_t>(l)], pts_[static_cast<std::size_t>(p)]) == 0) {
                    line_masks_[static_cast<std::size_t>(l)].set(p);
                    line_points_[static_cast<std::size_t>(l)].push_back(p);
                    point_lines_[static_cast<std::size_t>(p)].push_back(l);
                }
            }
        }
    }

    const Field& field() const { return f_; }
    int q() const { return f_.q(); }
    /// Number of points; equal to the number of lines.
    int size() const { return n_; }
    GeomId geom_id() const { return GeomId{2, f_.p(), f_.t()}; }

    const std::array<Elt, 3>& point(int i) const { return pts_[at(i)]; }
    const std::array<Elt, 3>& line(int i) const { return pts_[at(i)]; }

    int index_of(const std::array<Elt, 3>& tuple) const {
        const std::array<Elt, 3> n = normalize(tuple);
        const int q = f_.q();
        const int idx = enc_to_idx_[static_cast<std::size_t>((n[0] * q + n[1]) * q + n[2])];
        return idx;
    }

    std::array<Elt, 3> normalize(std::array<Elt, 3> c) const {
        int lead = 0;
        while (lead < 3 && c[static_cast<std::size_t>(lead)] == 0) ++lead;
        if (lead == 3) throw std::domain_error("Plane::normalize: zero tuple");
        const Elt s = f_.inv(c[static_cast<std::size_t>(lead)]);
        for (auto& x : c) x = f_.mul(s, x);
        return c;
    }

    bool incident(int point, int line) const {
        return line_masks_[at(line)].test(point);
    }

    const std::vector<int>& points_on_line(int line) const { return line_points_[at(line)]; }
    const std::vector<int>& lines_through_point(int point) const { return point_lines_[at(point)]; }
    const PointSet& line_mask(int line) const { return line_masks_[at(line)]; }

    /// The unique line joining two distinct points, via the cross product.
    int line_through(int p1, int p2) const {
        const auto& a = pts_[at(p1)];
        const auto& b = pts_[at(p2)];
        const std::array<Elt, 3> l = {
            f_.sub(f_.mul(a[1], b[2]), f_.mul(a[2], b[1])),
            f_.sub(f_.mul(a[2], b[0]), f_.mul(a[0], b[2])),
            f_.sub(f_.mul(a[0], b[1]), f_.mul(a[1], b[0])),
        };
        if (l[0] == 0 && l[1] == 0 && l[2] == 0)
            throw std::domain_error("Plane::line_through: points coincide");
        return index_of(l);
    }

    /// The unique common point of two distinct lines (dual of line_through).
    int meet(int l1, int l2) const {
        if (l1 == l2) throw std::domain_error("Plane::meet: lines coincide");
        return line_through(l1, l2);
    }

    /// Standard duality: the point (a:b:c) maps to the line [a:b:c].
    /// Under the shared canonical indexing this is the identity on indices;
    /// the named functions exist to keep call sites legible.
    int dual_line_of_point(int point) const { return static_cast<int>(at(point)); }
    int dual_point_of_line(int line) const { return static_cast<int>(at(line)); }

    PointSet empty_set() const { return PointSet(geom_id(), n_); }

private:
    std::size_t at(int i) const {
        if (i < 0 || i >= n_)
            throw std::out_of_range("Plane: index " + std::to_string(i) + " out of range");
        return static_cast<std::size_t>(i);
    }

    Elt dot(const std::array<Elt, 3>& a, const std::array<Elt, 3>& b) const {
        Elt s = 0;
        for (int i = 0; i < 3; ++i)
            s = f_.add(s, f_.mul(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]));
        return s;
    }

    Field f_;
    int n_ = 0;
    std::vector<std::array<Elt, 3>> pts_;
    std::vector<int> enc_to_idx_;
    std::vector<PointSet> line_masks_;
    std::vector<std::vector<int>> line_points_;
    std::vector<std::vector<int>> point_lines_;
};

/// PG(n, q) for small n: canonical point list plus the full set of lines
/// (as sorted point-index lists), enough for incidence-matrix work.
class ProjectiveSpace {
public:
    ProjectiveSpace(int n, Field f) : n_(n), f_(std::move(f)) {
        const int q = f_.q();
        if (n < 1 || n > 4) throw std::invalid_argument("ProjectiveSpace: n out of range");
        long long total = 1;
        for (int i = 0; i <= n; ++i) {
            total *= q;
            if (total > 2'000'000) throw std::invalid_argument("ProjectiveSpace: too large");
        }
        enc_to_idx_.assign(static_cast<std::size_t>(total), -1);
        std::vector<Elt> c(static_cast<std::size_t>(n) + 1);
        for (long long e = 0; e < total; ++e) {
            long long x = e;
            for (int i = n; i >= 0; --i) {
                c[static_cast<std::size_t>(i)] = static_cast<Elt>(x % q);
                x /= q;
            }
            int lead = 0;
            while (lead <= n && c[static_cast<std::size_t>(lead)] == 0) ++lead;
            if (lead > n || c[static_cast<std::size_t>(lead)] != 1) continue;
            enc_to_idx_[static_cast<std::size_t>(e)] = static_cast<int>(pts_.size());
            pts_.push_back(c);
        }
        build_lines();
    }

    int n() const { return n_; }
    const Field& field() const { return f_; }
    int num_points() const { return static_cast<int>(pts_.size()); }
    GeomId geom_id() const { return GeomId{n_, f_.p(), f_.t()}; }

    const std::vector<Elt>& point(int i) const { return pts_[static_cast<std::size_t>(i)]; }

    int index_of(std::vector<Elt> c) const {
        if (static_cast<int>(c.size()) != n_ + 1)
            throw std::invalid_argument("ProjectiveSpace::index_of: wrong tuple length");
        int lead = 0;
        while (lead <= n_ && c[static_cast<std::size_t>(lead)] == 0) ++lead;
        if (lead > n_) throw std::domain_error("ProjectiveSpace::index_of: zero tuple");
        const Elt s = f_.inv(c[static_cast<std::size_t>(lead)]);
        long long e = 0;
        for (int i = 0; i <= n_; ++i) e = e * f_.q() + f_.mul(s, c[static_cast<std::size_t>(i)]);
        return enc_to_idx_[static_cast<std::size_t>(e)];
    }

    /// Lines as sorted point-index lists, in lexicographic order.
    const std::vector<std::vector<int>>& lines() const { return lines_; }

    /// Indices (into lines()) of the lines through a point.
    const std::vector<int>& line_ids_through(int point) const {
        return point_line_ids_[static_cast<std::size_t>(point)];
    }

private:
    void build_lines() {
        const int q = f_.q();
        std::set<std::vector<int>> seen;
        const int np = num_points();
        for (int i = 0; i < np; ++i) {
            for (int j = i + 1; j < np; ++j) {
                std::vector<int> line;
                line.reserve(static_cast<std::size_t>(q) + 1);
                line.push_back(j);
                const auto& P = pts_[static_cast<std::size_t>(i)];
                const auto& Q = pts_[static_cast<std::size_t>(j)];
                for (Elt lam = 0; lam < q; ++lam) {
                    std::vector<Elt> r(static_cast<std::size_t>(n_) + 1);
                    for (int k = 0; k <= n_; ++k)
                        r[static_cast<std::size_t>(k)] =
                            f_.add(P[static_cast<std::size_t>(k)],
                                   f_.mul(lam, Q[static_cast<std::size_t>(k)]));
                    line.push_back(index_of(r));
                }
                std::sort(line.begin(), line.end());
                seen.insert(line);
            }
        }
        lines_.assign(seen.begin(), seen.end());
        point_line_ids_.assign(static_cast<std::size_t>(np), {});
        for (int l = 0; l < static_cast<int>(lines_.size()); ++l) {
            for (int p : lines_[static_cast<std::size_t>(l)])
                point_line_ids_[static_cast<std::size_t>(p)].push_back(l);
        }
    }

    int n_;
    Field f_;
    std::vector<std::vector<Elt>> pts_;
    std::vector<int> enc_to_idx_;
    std::vector<std::vector<int>> lines_;
    std::vector<std::vector<int>> point_line_ids_;
};

/// AG(n, q): affine points are n-tuples indexed big-endian, directions are
/// the points of PG(n-1, q), and every affine line is listed per direction.
class AffineSpace {
public:
    AffineSpace(int n, Field f) : n_(n), f_(f), dirs_(n - 1, f) {
        const int q = f_.q();
        if (n < 2) throw std::invalid_argument("AffineSpace: n must be >= 2");
        long long total = 1;
        for (int i = 0; i < n; ++i) {
            total *= q;
            if (total > 2'000'000) throw std::invalid_argument("AffineSpace: too large");
        }
        num_points_ = static_cast<int>(total);
        const int nd = dirs_.num_points();
        lines_.assign(static_cast<std::size_t>(nd), {});
        std::vector<char> used(static_cast<std::size_t>(num_points_));
        for (int d = 0; d < nd; ++d) {
            std::fill(used.begin(), used.end(), 0);
            const auto& dir = dirs_.point(d);  // n coordinates
            for (int base = 0; base < num_points_; ++base) {
                if (used[static_cast<std::size_t>(base)]) continue;
                std::vector<int> linepts;
                linepts.reserve(static_cast<std::size_t>(q));
                const std::vector<Elt> b = decode(base);
                for (Elt lam = 0; lam < q; ++lam) {
                    std::vector<Elt> r(static_cast<std::size_t>(n_));
                    for (int k = 0; k < n_; ++k)
                        r[static_cast<std::size_t>(k)] =
                            f_.add(b[static_cast<std::size_t>(k)],
                                   f_.mul(lam, dir[static_cast<std::size_t>(k)]));
                    const int pi = encode(r);
                    linepts.push_back(pi);
                    used[static_cast<std::size_t>(pi)] = 1;
                }
                std::sort(linepts.begin(), linepts.end());
                lines_[static_cast<std::size_t>(d)].push_back(std::move(linepts));
            }
        }
    }

    int n() const { return n_; }
    const Field& field() const { return f_; }
    int num_points() const { return num_points_; }
    int num_directions() const { return dirs_.num_points(); }
    GeomId geom_id() const { return GeomId{n_, f_.p(), f_.t()}; }

    /// The direction space PG(n-1, q); shared indexing with hyperplane work.
    const ProjectiveSpace& directions() const { return dirs_; }

    /// Affine lines with direction d, ordered by their smallest point.
    const std::vector<std::vector<int>>& lines(int d) const {
        return lines_[static_cast<std::size_t>(d)];
    }

    std::vector<Elt> decode(int index) const {
        std::vector<Elt> c(static_cast<std::size_t>(n_));
        for (int i = n_ - 1; i >= 0; --i) {
            c[static_cast<std::size_t>(i)] = index % f_.q();
            index /= f_.q();
        }
        return c;
    }

    int encode(const std::vector<Elt>& c) const {
        long long e = 0;
        for (int i = 0; i < n_; ++i) e = e * f_.q() + c[static_cast<std::size_t>(i)];
        return static_cast<int>(e);
    }

    PointSet empty_set() const { return PointSet(geom_id(), num_points_); }

private:
    int n_;
    Field f_;
    ProjectiveSpace dirs_;
    int num_points_ = 0;
    std::vector<std::vector<std::vector<int>>> lines_;
};

}  // namespace kakeya
