#include <catch_amalgamated.hpp>

#include <kakeya/kakeya.hpp>

#include <algorithm>
#include <set>

using namespace kakeya;

namespace {

Plane make_plane(int q) {
    switch (q) {
        case 4: return Plane{Field(2, 2)};
        case 8: return Plane{Field(2, 3)};
        case 9: return Plane{Field(3, 2)};
        case 16: return Plane{Field(2, 4)};
        default: return Plane{Field(q, 1)};
    }
}

// Independent realization oracle: per-point census over the whole plane.
long long census_size(const Plane& pl, const KakeyaConfig& cfg) {
    long long n = 0;
    for (int p = 0; p < pl.size(); ++p) {
        if (pl.incident(p, cfg.base_line)) continue;
        bool covered = false;
        for (int l : cfg.assigned) covered = covered || pl.incident(p, l);
        if (covered) ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("config validation") {
    const Plane pl = make_plane(3);
    KakeyaConfig cfg = construct_pencil_config(pl, pl.size() - 1);
    REQUIRE_NOTHROW(validate_config(pl, cfg));

    KakeyaConfig bad = cfg;
    bad.assigned.pop_back();
    REQUIRE_THROWS_AS(validate_config(pl, bad), std::invalid_argument);  // wrong count

    bad = cfg;
    bad.assigned[0] = cfg.base_line;
    REQUIRE_THROWS_AS(validate_config(pl, bad), std::invalid_argument);  // equals base

    bad = cfg;
    std::swap(bad.assigned[0], bad.assigned[1]);  // lines no longer pass their points
    REQUIRE_THROWS_AS(validate_config(pl, bad), std::invalid_argument);

    bad = cfg;
    bad.base_line = pl.size();
    REQUIRE_THROWS_AS(validate_config(pl, bad), std::invalid_argument);
}

TEST_CASE("pencil configuration realizes the full affine plane") {
    for (int q : {3, 4, 5, 7}) {
        CAPTURE(q);
        const Plane pl = make_plane(q);
        int apex = 0;
        while (pl.incident(apex, 0)) ++apex;
        const KakeyaConfig cfg = construct_pencil_config(pl, apex, 0);
        const KakeyaAnalysis a = realize(pl, cfg);
        CHECK(a.size == q * q);
        CHECK(a.multiplicity[static_cast<std::size_t>(apex)] == q + 1);
        CHECK(a.sigma == static_cast<long long>(q) * (q - 1) / 2);
        CHECK(verify_incidence_formula(pl, cfg).holds);
        CHECK(census_size(pl, cfg) == q * q);
    }
}

TEST_CASE("hyperoval construction attains the even minimum") {
    for (int q : {4, 8, 16}) {
        CAPTURE(q);
        const Plane pl = make_plane(q);
        const KakeyaConfig cfg = construct_hyperoval_kakeya(pl);
        const KakeyaAnalysis a = realize(pl, cfg);
        CHECK(a.size == q * (q + 1) / 2);
        CHECK(a.sigma == 0);
        const IncidenceCheck ic = verify_incidence_formula(pl, cfg);
        CHECK(ic.holds);
        CHECK(ic.mult_total == static_cast<long long>(q) * (q + 1));
        CHECK(census_size(pl, cfg) == a.size);
    }
    REQUIRE_THROWS_AS(construct_hyperoval_kakeya(make_plane(5)), std::invalid_argument);
}

TEST_CASE("oval construction attains the odd minimum for every free choice") {
    for (int q : {3, 5, 7, 9}) {
        CAPTURE(q);
        const Plane pl = make_plane(q);
        const KakeyaConfig cfg = construct_oval_kakeya(pl);
        const KakeyaAnalysis a = realize(pl, cfg);
        CHECK(a.size == q * (q + 1) / 2 + (q - 1) / 2);
        CHECK(a.sigma == (q - 1) / 2);
        CHECK(verify_incidence_formula(pl, cfg).holds);
        CHECK(census_size(pl, cfg) == a.size);
    }
    REQUIRE_THROWS_AS(construct_oval_kakeya(make_plane(4)), std::invalid_argument);

    // at q = 5: every admissible line for the exceptional point gives 17
    const Plane pl = make_plane(5);
    std::set<int> sizes;
    int accepted = 0;
    for (int l = 0; l < pl.size(); ++l) {
        try {
            const KakeyaConfig cfg = construct_oval_kakeya(pl, l);
            sizes.insert(realize(pl, cfg).size);
            ++accepted;
        } catch (const std::invalid_argument&) {
        }
    }
    CHECK(accepted == 5);  // the q lines through the exceptional point, minus the base
    CHECK(sizes == std::set<int>{17});
}

TEST_CASE("incidence formula holds on seeded random configurations") {
    for (int q : {3, 5, 7}) {
        CAPTURE(q);
        const Plane pl = make_plane(q);
        Rng rng(20260826);
        for (int i = 0; i < 300; ++i) {
            const KakeyaConfig cfg = random_config(pl, rng);
            const IncidenceCheck ic = verify_incidence_formula(pl, cfg);
            CHECK(ic.holds);
            CHECK(ic.size == ic.expected);
            CHECK(ic.mult_total == static_cast<long long>(q) * (q + 1));
            CHECK(ic.size == census_size(pl, cfg));
        }
    }
}

TEST_CASE("sigma recomputes from the multiplicity census") {
    const Plane pl = make_plane(5);
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        const KakeyaConfig cfg = random_config(pl, rng);
        const KakeyaAnalysis a = realize(pl, cfg);
        long long sigma = 0;
        for (int p = 0; p < pl.size(); ++p) {
            const long long m = a.multiplicity[static_cast<std::size_t>(p)];
            if (!pl.incident(p, cfg.base_line) && m >= 1) sigma += (m - 1) * (m - 2) / 2;
        }
        CHECK(a.sigma == sigma);
    }
}

TEST_CASE("canonical arcs have no three collinear points") {
    for (int q : {3, 4, 5, 7, 8, 9}) {
        CAPTURE(q);
        const Plane pl = make_plane(q);
        const PointSet conic = canonical_conic(pl);
        CHECK(conic.count() == q + 1);
        int max_secant = 0;
        for (int l = 0; l < pl.size(); ++l)
            max_secant = std::max(max_secant, count_and(pl.line_mask(l), conic));
        CHECK(max_secant == 2);
        if (q % 2 == 0) {
            const PointSet hyper = canonical_hyperoval(pl);
            CHECK(hyper.count() == q + 2);
            int hmax = 0;
            for (int l = 0; l < pl.size(); ++l)
                hmax = std::max(hmax, count_and(pl.line_mask(l), hyper));
            CHECK(hmax == 2);
        }
    }
}

TEST_CASE("extremal spectra for the conic plus an outside point") {
    const auto expect = [](int q) {
        return std::vector<long long>{
            static_cast<long long>(q - 1) * (q - 1) / 2, 3LL * (q - 1) / 2,
            (static_cast<long long>(q) * q + 5) / 2, (q - 1) / 2};
    };
    for (int q : {3, 5, 7}) {
        CAPTURE(q);
        const Plane pl = make_plane(q);
        const PointSet omega = canonical_extremal_omega(pl);
        REQUIRE(omega.count() == q + 2);
        const Spectrum s = intersection_spectrum(pl, omega);
        REQUIRE(s.a.size() == static_cast<std::size_t>(q) + 2);
        const auto e = expect(q);
        for (int i = 0; i <= 3; ++i) CHECK(s.a[static_cast<std::size_t>(i)] == e[static_cast<std::size_t>(i)]);
        for (std::size_t i = 4; i < s.a.size(); ++i) CHECK(s.a[i] == 0);
        CHECK(s.lines_meeting == (static_cast<long long>(q) * q + 4 * q + 1) / 2);
        CHECK(excess_f(pl, omega) == (q - 1) / 2);
    }
}

TEST_CASE("spectrum identities hold on random sets of any size") {
    const Plane pl = make_plane(7);
    Rng rng(99);
    for (int i = 0; i < 100; ++i) {
        const int k = 1 + static_cast<int>(rng.bounded(20));
        PointSet s = pl.empty_set();
        for (int j : random_combination(rng, pl.size(), k)) s.set(j);
        REQUIRE_NOTHROW(intersection_spectrum(pl, s));  // identities enforced inside
    }
    REQUIRE_THROWS_AS(excess_f(pl, pl.empty_set()), std::invalid_argument);
}

TEST_CASE("spectrum rejects sets from another geometry") {
    const Plane p3 = make_plane(3);
    const Plane p5 = make_plane(5);
    REQUIRE_THROWS_AS(intersection_spectrum(p3, p5.empty_set()), std::invalid_argument);
}
