#pragma once

#include <bit>
#include <climits>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kakeya.hpp"
#include "util.hpp"

namespace kakeya {

/// Exact minimum size of a Kakeya set in a plane of order q:
/// q(q+1)/2 for q even, q(q+1)/2 + (q-1)/2 for q odd.
inline int minimum_kakeya_size_formula(int q) {
    return q * (q + 1) / 2 + (q % 2 == 1 ? (q - 1) / 2 : 0);
}

// ---------------------------------------------------------------------------
// Branch-and-bound search for the minimum Kakeya size
// ---------------------------------------------------------------------------

struct SearchOptions {
    int base_line = 0;
    bool prune = true;
    /// Explore only the first candidate line at the first two base points.
    /// The elation group with the base line as axis acts freely on choice
    /// pairs, so minima agree and witness counts shrink by exactly q^2.
    bool symmetry = false;
    int workers = 1;
    /// Seed for the incumbent best size, e.g. from a construction. Must be
    /// attainable with the chosen base line or the search throws.
    std::optional<int> incumbent;
};

struct SearchResult {
    int q = 0;
    int min_size = 0;
    long long nodes = 0;
    /// Every assignment attaining min_size (after symmetry fixing, if any),
    /// in lexicographic candidate order.
    std::vector<KakeyaConfig> witnesses;
};

namespace detail {

struct SearchShard {
    int best = INT_MAX;
    long long nodes = 0;
    std::vector<KakeyaConfig> witnesses;
};

struct SearchContext {
    int q = 0;
    int base_line = 0;
    bool prune = false;
    bool symmetry = false;
    std::vector<std::vector<int>> candidates;      // per base point, sorted line ids
    std::vector<std::vector<int>> off_base_points; // per line id (candidates only)
};

/// Points still to be added at the remaining levels: the line placed after
/// j others has q points off the base line and meets each earlier line at
/// most once, so it contributes at least q - j new points.
inline long long suffix_lower_bound(int q, int level) {
    const long long r = q - level;
    return r <= 0 ? 0 : r * (r + 1) / 2;
}

inline void search_dfs(const SearchContext& ctx, int level, PointSet& covered, int count,
                       std::vector<int>& assignment, SearchShard& shard) {
    ++shard.nodes;
    if (level == static_cast<int>(ctx.candidates.size())) {
        if (count < shard.best) {
            shard.best = count;
            shard.witnesses.clear();
        }
        if (count == shard.best)
            shard.witnesses.push_back(KakeyaConfig{ctx.base_line, assignment});
        return;
    }
    if (ctx.prune && count + suffix_lower_bound(ctx.q, level) > shard.best) return;
    const auto& cand = ctx.candidates[static_cast<std::size_t>(level)];
    const int limit = (ctx.symmetry && level < 2) ? 1 : static_cast<int>(cand.size());
    for (int c = 0; c < limit; ++c) {
        const int line = cand[static_cast<std::size_t>(c)];
        std::vector<int> added;
        for (int p : ctx.off_base_points[static_cast<std::size_t>(line)])
            if (!covered.test(p)) {
                covered.set(p);
                added.push_back(p);
            }
        assignment.push_back(line);
        search_dfs(ctx, level + 1, covered, count + static_cast<int>(added.size()), assignment,
                   shard);
        assignment.pop_back();
        for (int p : added) covered.reset(p);
    }
}

}  // namespace detail

/// Exhaustive (optionally pruned) minimization of |union of assigned lines
/// minus the base line| over all q^(q+1) assignments. The pruning bound is
/// admissible and the cut requires a strict excess, so ties at the optimum
/// are never lost: pruned and unpruned runs return identical witness sets.
inline SearchResult min_kakeya(const Plane& pl, const SearchOptions& opt = {}) {
    const int q = pl.q();
    if (q > 9) throw std::invalid_argument("min_kakeya: q > 9 is out of budget");
    if (q >= 8 && !(opt.prune && opt.symmetry))
        throw std::invalid_argument("min_kakeya: q >= 8 requires pruning and symmetry");
    if (opt.base_line < 0 || opt.base_line >= pl.size())
        throw std::invalid_argument("min_kakeya: base line out of range");

    detail::SearchContext ctx;
    ctx.q = q;
    ctx.base_line = opt.base_line;
    ctx.prune = opt.prune;
    ctx.symmetry = opt.symmetry;
    ctx.off_base_points.resize(static_cast<std::size_t>(pl.size()));
    for (int p : pl.points_on_line(opt.base_line)) {
        std::vector<int> cand;
        for (int l : pl.lines_through_point(p))
            if (l != opt.base_line) cand.push_back(l);
        for (int l : cand) {
            auto& off = ctx.off_base_points[static_cast<std::size_t>(l)];
            if (off.empty())
                for (int x : pl.points_on_line(l))
                    if (!pl.incident(x, opt.base_line)) off.push_back(x);
        }
        ctx.candidates.push_back(std::move(cand));
    }

    const int levels = static_cast<int>(ctx.candidates.size());
    const int seed = opt.incumbent.value_or(INT_MAX);
    SearchResult res;
    res.q = q;

    const int split = ctx.symmetry ? 2 : 0;
    if (opt.workers <= 1 || split >= levels) {
        detail::SearchShard shard;
        shard.best = seed;
        PointSet covered = pl.empty_set();
        std::vector<int> assignment;
        detail::search_dfs(ctx, 0, covered, 0, assignment, shard);
        if (shard.witnesses.empty())
            throw std::logic_error("min_kakeya: incumbent size was never attained");
        res.min_size = shard.best;
        res.nodes = shard.nodes;
        res.witnesses = std::move(shard.witnesses);
        return res;
    }

    // Fix the forced prefix (levels below the split have a single allowed
    // candidate), then partition the split level's candidates across workers.
    PointSet prefix_set = pl.empty_set();
    std::vector<int> prefix;
    int prefix_count = 0;
    for (int lv = 0; lv < split; ++lv) {
        const int line = ctx.candidates[static_cast<std::size_t>(lv)][0];
        for (int p : ctx.off_base_points[static_cast<std::size_t>(line)])
            if (!prefix_set.test(p)) {
                prefix_set.set(p);
                ++prefix_count;
            }
        prefix.push_back(line);
    }
    const auto& split_cand = ctx.candidates[static_cast<std::size_t>(split)];
    std::vector<detail::SearchShard> shards(split_cand.size());
    parallel_chunks(split_cand.size(), opt.workers, [&](int, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            detail::SearchShard& shard = shards[i];
            shard.best = seed;
            PointSet covered = prefix_set;
            std::vector<int> assignment = prefix;
            int count = prefix_count;
            const int line = split_cand[i];
            std::vector<int> added;
            for (int p : ctx.off_base_points[static_cast<std::size_t>(line)])
                if (!covered.test(p)) {
                    covered.set(p);
                    ++count;
                }
            assignment.push_back(line);
            detail::search_dfs(ctx, split + 1, covered, count, assignment, shard);
        }
    });

    int best = INT_MAX;
    long long nodes = static_cast<long long>(split) + 1;  // forced prefix placements
    for (const auto& s : shards) {
        nodes += s.nodes;
        if (!s.witnesses.empty() && s.best < best) best = s.best;
    }
    if (best == INT_MAX)
        throw std::logic_error("min_kakeya: incumbent size was never attained");
    res.min_size = best;
    res.nodes = nodes;
    for (auto& s : shards)
        if (!s.witnesses.empty() && s.best == best)
            for (auto& w : s.witnesses) res.witnesses.push_back(std::move(w));
    return res;
}

// ---------------------------------------------------------------------------
// Lower-bound ladder
// ---------------------------------------------------------------------------

struct BoundEntry {
    std::string name;
    long long excess_num = 0;  // bound = q(q+1)/2 + excess, excess as a fraction
    long long excess_den = 1;
    int effective = 0;         // q(q+1)/2 + ceil(excess)
    bool in_hypothesis = true;
};

struct BoundLadder {
    int q = 0;
    int base = 0;  // q(q+1)/2
    std::vector<BoundEntry> entries;
    std::optional<int> exact;  // exact minimum, when known
    /// True orderings among the bounds: Faber <= Cooper <= sharp always
    /// (odd q >= 3), Blokhuis-Bruen <= sharp inside its q >= 7 hypothesis,
    /// and every in-hypothesis bound <= the exact minimum when known.
    bool consistent = true;
};

/// The historical lower bounds on the minimum Kakeya size for odd q, as
/// excesses over q(q+1)/2: Blokhuis-Bruen (q+2)/3 for odd q >= 7, Faber
/// q/3, Cooper (5q-1)/14, and the sharp value (q-1)/2.
inline BoundLadder bound_ladder(int q, std::optional<int> exact = {}) {
    if (q < 3 || q % 2 == 0) throw std::invalid_argument("bound_ladder: q must be odd, q >= 3");
    BoundLadder lad;
    lad.q = q;
    lad.base = q * (q + 1) / 2;
    lad.exact = exact;
    const auto add = [&](std::string name, long long num, long long den, bool hyp) {
        BoundEntry e;
        e.name = std::move(name);
        e.excess_num = num;
        e.excess_den = den;
        e.effective = lad.base + static_cast<int>((num + den - 1) / den);
        e.in_hypothesis = hyp;
        lad.entries.push_back(e);
    };
    add("blokhuis-bruen", q + 2, 3, q >= 7);
    add("faber", q, 3, true);
    add("cooper", 5LL * q - 1, 14, true);
    add("sharp", q - 1, 2, true);

    const auto leq = [](const BoundEntry& a, const BoundEntry& b) {
        return a.excess_num * b.excess_den <= b.excess_num * a.excess_den;
    };
    const BoundEntry& bb = lad.entries[0];
    const BoundEntry& faber = lad.entries[1];
    const BoundEntry& cooper = lad.entries[2];
    const BoundEntry& sharp = lad.entries[3];
    lad.consistent = leq(faber, cooper) && leq(cooper, sharp);
    if (bb.in_hypothesis) lad.consistent = lad.consistent && leq(bb, sharp);
    if (exact)
        for (const auto& e : lad.entries)
            if (e.in_hypothesis) lad.consistent = lad.consistent && e.effective <= *exact;
    return lad;
}

// ---------------------------------------------------------------------------
// Blocking sets and dual blocking sets
// ---------------------------------------------------------------------------

/// True iff some full line is contained in the set.
inline bool contains_full_line(const Plane& pl, const PointSet& s) {
    for (int l = 0; l < pl.size(); ++l)
        if (is_subset(pl.line_mask(l), s)) return true;
    return false;
}

/// A blocking set meets every line and contains none.
inline bool is_blocking_set(const Plane& pl, const PointSet& s) {
    for (int l = 0; l < pl.size(); ++l) {
        const long long m = count_and(pl.line_mask(l), s);
        if (m == 0 || m == pl.q() + 1) return false;
    }
    return true;
}

/// The plane minus the union of two distinct lines: q^2 - q points.
inline PointSet two_line_complement(const Plane& pl, int l1, int l2) {
    if (l1 == l2) throw std::invalid_argument("two_line_complement: lines must be distinct");
    PointSet s = pl.line_mask(l1);
    s |= pl.line_mask(l2);
    return s.complement();
}

/// The pair of lines whose complement equals the set, if any.
inline std::optional<std::pair<int, int>> as_two_line_complement(const Plane& pl,
                                                                 const PointSet& s) {
    for (int i = 0; i < pl.size(); ++i)
        for (int j = i + 1; j < pl.size(); ++j)
            if (s == two_line_complement(pl, i, j)) return std::make_pair(i, j);
    return std::nullopt;
}

/// A configuration realizing the set exactly, if the set is a Kakeya set.
/// Tries every line disjoint from the set as the base; per base point the
/// candidate lines are those contained in the set off the base line.
inline std::optional<KakeyaConfig> as_kakeya_set(const Plane& pl, const PointSet& s,
                                                 long long tuple_budget = 1LL << 22) {
    for (int ell = 0; ell < pl.size(); ++ell) {
        if (count_and(pl.line_mask(ell), s) != 0) continue;
        std::vector<std::vector<int>> cand;
        bool feasible = true;
        long long tuples = 1;
        for (int p : pl.points_on_line(ell)) {
            std::vector<int> cs;
            for (int l : pl.lines_through_point(p)) {
                if (l == ell) continue;
                PointSet off = pl.line_mask(l);
                off.subtract(pl.line_mask(ell));
                if (is_subset(off, s)) cs.push_back(l);
            }
            if (cs.empty()) {
                feasible = false;
                break;
            }
            tuples *= static_cast<long long>(cs.size());
            if (tuples > tuple_budget)
                throw std::runtime_error("as_kakeya_set: candidate tuple budget exceeded");
            cand.push_back(std::move(cs));
        }
        if (!feasible) continue;
        std::vector<std::size_t> idx(cand.size(), 0);
        while (true) {
            PointSet u = pl.empty_set();
            for (std::size_t i = 0; i < cand.size(); ++i)
                u |= pl.line_mask(cand[i][idx[i]]);
            u.subtract(pl.line_mask(ell));
            if (u == s) {
                KakeyaConfig cfg;
                cfg.base_line = ell;
                for (std::size_t i = 0; i < cand.size(); ++i) cfg.assigned.push_back(cand[i][idx[i]]);
                return cfg;
            }
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == cand[i].size()) idx[i++] = 0;
            if (i == idx.size()) break;
        }
    }
    return std::nullopt;
}

/// A configuration whose realized Kakeya set is contained in the given set,
/// if one exists (certificate that the set contains a Kakeya set).
inline std::optional<KakeyaConfig> kakeya_subset_certificate(const Plane& pl, const PointSet& s) {
    for (int ell = 0; ell < pl.size(); ++ell) {
        KakeyaConfig cfg;
        cfg.base_line = ell;
        bool feasible = true;
        for (int p : pl.points_on_line(ell)) {
            int pick = -1;
            for (int l : pl.lines_through_point(p)) {
                if (l == ell) continue;
                PointSet off = pl.line_mask(l);
                off.subtract(pl.line_mask(ell));
                if (is_subset(off, s)) {
                    pick = l;
                    break;
                }
            }
            if (pick < 0) {
                feasible = false;
                break;
            }
            cfg.assigned.push_back(pick);
        }
        if (feasible) return cfg;
    }
    return std::nullopt;
}

/// A pair of lines whose complement is contained in the set, if any.
inline std::optional<std::pair<int, int>> two_line_complement_subset_certificate(
    const Plane& pl, const PointSet& s) {
    for (int i = 0; i < pl.size(); ++i)
        for (int j = i + 1; j < pl.size(); ++j)
            if (is_subset(two_line_complement(pl, i, j), s)) return std::make_pair(i, j);
    return std::nullopt;
}

/// All blocking sets of a tiny plane (q <= 4) as bitmasks over point
/// indices, via a full 2^theta subset sweep, plus the minimal ones.
struct BlockingFamily {
    int theta = 0;
    long long blocking_count = 0;
    std::vector<std::uint32_t> minimal;
    int minimal_min_size = 0;
};

inline BlockingFamily enumerate_blocking_sets(const Plane& pl) {
    const int theta = pl.size();
    if (theta > 21)
        throw std::invalid_argument("enumerate_blocking_sets: q > 4 is out of budget");
    std::vector<std::uint32_t> line_masks(static_cast<std::size_t>(theta));
    for (int l = 0; l < theta; ++l) {
        std::uint32_t m = 0;
        for (int p : pl.points_on_line(l)) m |= 1u << p;
        line_masks[static_cast<std::size_t>(l)] = m;
    }
    const auto blocking = [&](std::uint32_t s) {
        for (std::uint32_t lm : line_masks) {
            const std::uint32_t x = s & lm;
            if (x == 0 || x == lm) return false;
        }
        return true;
    };
    BlockingFamily fam;
    fam.theta = theta;
    fam.minimal_min_size = theta + 1;
    const std::uint32_t full = (theta == 32) ? ~0u : ((1u << theta) - 1);
    for (std::uint32_t s = 0; s <= full; ++s) {
        if (!blocking(s)) continue;
        ++fam.blocking_count;
        bool minimal = true;
        for (int p = 0; p < theta && minimal; ++p)
            if ((s >> p) & 1u) minimal = !blocking(s & ~(1u << p));
        if (minimal) {
            fam.minimal.push_back(s);
            const int sz = std::popcount(s);
            if (sz < fam.minimal_min_size) fam.minimal_min_size = sz;
        }
    }
    return fam;
}

namespace detail {

inline std::uint32_t to_mask(const Plane& pl, const PointSet& s) {
    if (pl.size() > 32) throw std::invalid_argument("to_mask: plane too large");
    std::uint32_t m = 0;
    for (int p : s.indices()) m |= 1u << p;
    return m;
}

inline PointSet from_mask(const Plane& pl, std::uint32_t m) {
    PointSet s = pl.empty_set();
    for (int p = 0; p < pl.size(); ++p)
        if ((m >> p) & 1u) s.set(p);
    return s;
}

/// Meeting every minimal blocking set suffices: any blocking set can be
/// stripped point by point to a minimal blocking subset.
inline bool meets_all_minimal_blocking(std::uint32_t s, const BlockingFamily& fam) {
    for (std::uint32_t b : fam.minimal)
        if ((s & b) == 0) return false;
    return true;
}

}  // namespace detail

enum class BlockingClass { kakeya, two_line_complement, other };

inline const char* to_string(BlockingClass c) {
    switch (c) {
        case BlockingClass::kakeya: return "kakeya";
        case BlockingClass::two_line_complement: return "two-line-complement";
        default: return "other";
    }
}

struct BlockingReport {
    PointSet set;
    bool is_blocking = false;
    bool is_dual_blocking = false;
    bool is_minimal = false;  // meaningful only when method == "exact"
    BlockingClass tag = BlockingClass::other;
    /// "exact" (q <= 4, against the full minimal-blocking family),
    /// "contains-line", "kakeya-subset", "two-line-complement-subset",
    /// or "no-certificate" (undetermined, larger q without a certificate).
    std::string method;
};

/// Dual blocking test: the set must contain no line and meet every blocking
/// set. Exact for q <= 4; for larger q a subset certificate (a contained
/// Kakeya set or two-line complement, both known dual blocking) is sought.
inline BlockingReport dual_blocking_check(const Plane& pl, const PointSet& s,
                                          const BlockingFamily* family = nullptr) {
    BlockingReport rep;
    rep.set = s;
    rep.is_blocking = is_blocking_set(pl, s);
    if (as_kakeya_set(pl, s))
        rep.tag = BlockingClass::kakeya;
    else if (as_two_line_complement(pl, s))
        rep.tag = BlockingClass::two_line_complement;

    if (contains_full_line(pl, s)) {
        rep.method = "contains-line";
        return rep;
    }
    if (pl.size() <= 21) {
        BlockingFamily local;
        if (!family) {
            local = enumerate_blocking_sets(pl);
            family = &local;
        }
        const std::uint32_t m = detail::to_mask(pl, s);
        rep.method = "exact";
        rep.is_dual_blocking = detail::meets_all_minimal_blocking(m, *family);
        if (rep.is_dual_blocking) {
            rep.is_minimal = true;
            for (int p = 0; p < pl.size() && rep.is_minimal; ++p)
                if ((m >> p) & 1u)
                    rep.is_minimal = !detail::meets_all_minimal_blocking(m & ~(1u << p), *family);
        }
        return rep;
    }
    if (kakeya_subset_certificate(pl, s)) {
        rep.is_dual_blocking = true;
        rep.method = "kakeya-subset";
    } else if (two_line_complement_subset_certificate(pl, s)) {
        rep.is_dual_blocking = true;
        rep.method = "two-line-complement-subset";
    } else {
        rep.method = "no-certificate";
    }
    return rep;
}

/// Full census of dual blocking sets for q = 3, with every minimal one
/// classified. Kakeya sets are dual blocking yet never minimal here: each
/// strictly contains a two-line complement.
struct DualBlockingCensus {
    int q = 0;
    long long blocking_count = 0;
    long long minimal_blocking_count = 0;
    int minimal_blocking_min_size = 0;
    long long dual_blocking_count = 0;
    int dual_blocking_min_size = 0;
    std::vector<BlockingReport> minimal;  // ascending mask order
    long long kakeya_count = 0;
    long long two_line_count = 0;
    long long other_count = 0;
    /// The sharp odd-q Kakeya floor q(q+1)/2 + (q-1)/2, and whether some
    /// dual blocking set beats it (at q = 3 the two-line complements do).
    int odd_kakeya_floor = 0;
    bool min_below_kakeya_floor = false;
};

inline DualBlockingCensus minimal_dual_blocking_enumeration(const Plane& pl) {
    if (pl.q() != 3)
        throw std::invalid_argument("minimal_dual_blocking_enumeration: only q = 3 is in budget");
    const int theta = pl.size();
    const BlockingFamily fam = enumerate_blocking_sets(pl);

    std::vector<std::uint32_t> line_masks(static_cast<std::size_t>(theta));
    for (int l = 0; l < theta; ++l) line_masks[static_cast<std::size_t>(l)] =
        detail::to_mask(pl, pl.line_mask(l));
    const auto line_free = [&](std::uint32_t s) {
        for (std::uint32_t lm : line_masks)
            if ((s & lm) == lm) return false;
        return true;
    };

    DualBlockingCensus cz;
    cz.q = pl.q();
    cz.blocking_count = fam.blocking_count;
    cz.minimal_blocking_count = static_cast<long long>(fam.minimal.size());
    cz.minimal_blocking_min_size = fam.minimal_min_size;
    cz.odd_kakeya_floor = minimum_kakeya_size_formula(pl.q());

    std::vector<std::uint32_t> dual;
    const std::uint32_t full = (1u << theta) - 1;
    for (std::uint32_t s = 0; s <= full; ++s)
        if (line_free(s) && detail::meets_all_minimal_blocking(s, fam)) dual.push_back(s);
    cz.dual_blocking_count = static_cast<long long>(dual.size());
    cz.dual_blocking_min_size = theta + 1;
    for (std::uint32_t s : dual)
        cz.dual_blocking_min_size = std::min(cz.dual_blocking_min_size, std::popcount(s));
    cz.min_below_kakeya_floor = cz.dual_blocking_min_size < cz.odd_kakeya_floor;

    // dual[] is sorted ascending by construction; minimality by single-point
    // removal suffices because subsets of a line-free set stay line-free.
    const auto is_dual = [&](std::uint32_t s) {
        return std::binary_search(dual.begin(), dual.end(), s);
    };
    for (std::uint32_t s : dual) {
        bool minimal = true;
        for (int p = 0; p < theta && minimal; ++p)
            if ((s >> p) & 1u) minimal = !is_dual(s & ~(1u << p));
        if (!minimal) continue;
        BlockingReport rep;
        rep.set = detail::from_mask(pl, s);
        rep.is_blocking = is_blocking_set(pl, rep.set);
        rep.is_dual_blocking = true;
        rep.is_minimal = true;
        rep.method = "exact";
        if (as_kakeya_set(pl, rep.set))
            rep.tag = BlockingClass::kakeya;
        else if (as_two_line_complement(pl, rep.set))
            rep.tag = BlockingClass::two_line_complement;
        else
            rep.tag = BlockingClass::other;
        switch (rep.tag) {
            case BlockingClass::kakeya: ++cz.kakeya_count; break;
            case BlockingClass::two_line_complement: ++cz.two_line_count; break;
            default: ++cz.other_count; break;
        }
        cz.minimal.push_back(std::move(rep));
    }
    return cz;
}

}  // namespace kakeya
