#include <catch_amalgamated.hpp>

#include <kakeya/segre.hpp>

#include <algorithm>
#include <vector>

using namespace kakeya;

namespace {

Plane make_plane(int q) {
    switch (q) {
        case 4: return Plane{Field(2, 2)};
        case 8: return Plane{Field(2, 3)};
        case 9: return Plane{Field(3, 2)};
        default: return Plane{Field(q, 1)};
    }
}

SegreFrame standard_frame(const Plane& pl) {
    return SegreFrame::make(pl, pl.index_of({1, 0, 0}), pl.index_of({0, 1, 0}),
                            pl.index_of({0, 0, 1}), pl.index_of({1, 1, 1}));
}

// all q^(q+1) assignments over the fixed base line 0, in odometer order
std::vector<KakeyaConfig> all_configs(const Plane& pl) {
    std::vector<std::vector<int>> cand;
    for (int p : pl.points_on_line(0)) {
        std::vector<int> cs;
        for (int l : pl.lines_through_point(p))
            if (l != 0) cs.push_back(l);
        cand.push_back(cs);
    }
    std::vector<KakeyaConfig> out;
    std::vector<std::size_t> idx(cand.size(), 0);
    while (true) {
        KakeyaConfig cfg;
        cfg.base_line = 0;
        for (std::size_t i = 0; i < cand.size(); ++i) cfg.assigned.push_back(cand[i][idx[i]]);
        out.push_back(cfg);
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == cand[i].size()) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return out;
}

}  // namespace

TEST_CASE("frame construction validates its four points") {
    const Plane pl = make_plane(5);
    const int e1 = pl.index_of({1, 0, 0});
    const int e2 = pl.index_of({0, 1, 0});
    const int e3 = pl.index_of({1, 1, 0});  // collinear with the first two
    REQUIRE_THROWS_AS(SegreFrame::make(pl, e1, e2, e3, pl.index_of({1, 1, 1})),
                      std::invalid_argument);
    // unit on a side of the triangle
    REQUIRE_THROWS_AS(SegreFrame::make(pl, e1, e2, pl.index_of({0, 0, 1}),
                                       pl.index_of({1, 1, 0})),
                      std::invalid_argument);
}

TEST_CASE("frame sends its points to the reference quadrilateral") {
    for (int q : {3, 4, 5, 7, 9}) {
        CAPTURE(q);
        const Plane pl = make_plane(q);
        const SegreFrame fr = standard_frame(pl);
        const auto u = fr.coords(pl, fr.unit);
        CHECK(u == std::array<Elt, 3>{1, 1, 1});
        const std::array<int, 3> base = {fr.e1, fr.e2, fr.e3};
        for (int i = 0; i < 3; ++i) {
            const auto y = fr.coords(pl, base[static_cast<std::size_t>(i)]);
            for (int j = 0; j < 3; ++j)
                CHECK((y[static_cast<std::size_t>(j)] != 0) == (i == j));
        }
    }
}

TEST_CASE("triple coordinates multiply to one and reject side points") {
    for (int q : {3, 5, 7}) {
        CAPTURE(q);
        const Plane pl = make_plane(q);
        const Field& f = pl.field();
        const SegreFrame fr = standard_frame(pl);
        int off_side = 0, on_side = 0;
        for (int p = 0; p < pl.size(); ++p) {
            const auto y = fr.coords(pl, p);
            if (y[0] != 0 && y[1] != 0 && y[2] != 0) {
                const auto t = triple_coords(pl, fr, p);
                CHECK(f.mul(t[0], f.mul(t[1], t[2])) == 1);
                ++off_side;
            } else {
                REQUIRE_THROWS_AS(triple_coords(pl, fr, p), std::domain_error);
                ++on_side;
            }
        }
        CHECK(on_side == 3 * q);  // the three sides share the three vertices
        CHECK(off_side == pl.size() - 3 * q);
    }
}

TEST_CASE("componentwise triple products obey the telescoping identity") {
    const Plane pl = make_plane(7);
    const Field& f = pl.field();
    const SegreFrame fr = standard_frame(pl);
    Rng rng(1234);
    std::vector<int> admissible;
    for (int p = 0; p < pl.size(); ++p) {
        const auto y = fr.coords(pl, p);
        if (y[0] != 0 && y[1] != 0 && y[2] != 0) admissible.push_back(p);
    }
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<int> pts;
        const int k = 1 + static_cast<int>(rng.bounded(10));
        for (int i = 0; i < k; ++i)
            pts.push_back(admissible[rng.bounded(admissible.size())]);
        const TripleProducts tp = segre_products(pl, fr, pts);
        CHECK(f.mul(tp.p1, f.mul(tp.p2, tp.p3)) == 1);
    }
}

TEST_CASE("tangent and trisecant meet the nucleus line at opposite spots") {
    for (int q : {3, 5, 7, 9}) {
        CAPTURE(q);
        const Plane pl = make_plane(q);
        const Field& f = pl.field();
        const PointSet omega = canonical_extremal_omega(pl);
        const auto survey = mu_lambda_survey(pl, omega);
        REQUIRE_FALSE(survey.empty());
        for (const auto& rep : survey) {
            CHECK(rep.holds);
            CHECK(rep.mu == f.neg(rep.lambda));
            CHECK(rep.lambda != 0);
        }
    }
    // frozen witness for q = 5, first one-tangent point in index order
    const Plane p5 = make_plane(5);
    const auto survey = mu_lambda_survey(p5, canonical_extremal_omega(p5));
    REQUIRE_FALSE(survey.empty());
    CHECK(survey.front().lambda == 1);
    CHECK(survey.front().mu == 4);
}

TEST_CASE("mu-lambda verification rejects unsuitable inputs") {
    const Plane p4 = make_plane(4);
    const PointSet hyper = canonical_hyperoval(p4);
    REQUIRE_THROWS_AS(verify_mu_lambda(p4, hyper, hyper.indices().front()),
                      std::invalid_argument);  // six nuclei, not two

    const Plane p5 = make_plane(5);
    const PointSet omega = canonical_extremal_omega(p5);
    const auto nuclei = internal_nuclei(p5, omega);
    REQUIRE_THROWS_AS(verify_mu_lambda(p5, omega, nuclei.front()), std::invalid_argument);
}

TEST_CASE("one-tangent points of the extremal set form the conic relation") {
    for (int q : {5, 7}) {
        CAPTURE(q);
        const Plane pl = make_plane(q);
        const ConicRelationReport rep = verify_conic_relation(pl, canonical_extremal_omega(pl));
        CHECK(rep.all_hold);
        REQUIRE_FALSE(rep.rows.empty());
        for (const auto& row : rep.rows) {
            CHECK(row.nondegenerate);
            CHECK(row.relation_holds);
            CHECK(row.lambda_holds);
            CHECK(row.trisecant_holds);
        }
    }
    // q = 3 has no admissible point off the chosen secant: vacuously true
    const Plane p3 = make_plane(3);
    const ConicRelationReport rep3 = verify_conic_relation(p3, canonical_extremal_omega(p3));
    CHECK(rep3.rows.empty());
    CHECK(rep3.all_hold);

    REQUIRE_THROWS_AS(verify_conic_relation(make_plane(4), canonical_hyperoval(make_plane(4))),
                      std::invalid_argument);
}

TEST_CASE("triple point census over every configuration at q = 3") {
    const Plane pl = make_plane(3);
    const auto configs = all_configs(pl);
    REQUIRE(configs.size() == 81);
    int max_exceptional = 0;
    for (const auto& cfg : configs) {
        const TriplePointReport rep = triple_point_census(pl, cfg);
        CHECK(rep.odd_hypothesis);
        CHECK(rep.holds);
        max_exceptional = std::max(max_exceptional, rep.exceptional);
    }
    CHECK(max_exceptional == 1);  // the bound is tight
}

TEST_CASE("triple point census on random configurations at q = 5 and 7") {
    for (int q : {5, 7}) {
        CAPTURE(q);
        const Plane pl = make_plane(q);
        Rng rng(777);
        for (int i = 0; i < 200; ++i) {
            const TriplePointReport rep = triple_point_census(pl, random_config(pl, rng));
            CHECK(rep.odd_hypothesis);
            CHECK(rep.holds);
        }
    }
}

TEST_CASE("even order is out of hypothesis and the hyperoval has no triple points") {
    const Plane pl = make_plane(4);
    const TriplePointReport rep = triple_point_census(pl, construct_hyperoval_kakeya(pl));
    CHECK_FALSE(rep.odd_hypothesis);
    CHECK(rep.holds);  // vacuous without the hypothesis
    CHECK(rep.exceptional == pl.q() + 1);
}
