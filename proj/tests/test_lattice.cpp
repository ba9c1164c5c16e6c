#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "fano/lattice.hpp"
#include "fano/rng.hpp"
#include "fano/runner.hpp"
#include "oracles.hpp"

using namespace fano;

TEST_CASE("smith normal form examples") {
    CHECK(smith_normal_form(IMat::identity(3)).d == IMat::identity(3));
    auto s1 = smith_normal_form(IMat::from({{3, 0}, {0, 4}}));
    CHECK(s1.diagonal() == std::vector<Int>{1, 12});
    auto s2 = smith_normal_form(IMat::from({{2, 1}, {1, 2}}));
    CHECK(s2.diagonal() == std::vector<Int>{1, 3});
}

TEST_CASE("smith normal form soundness on random matrices") {
    Rng rng(0x51f);
    for (int trial = 0; trial < 300; ++trial) {
        size_t r = 1 + rng.below(4), c = 1 + rng.below(4);
        IMat m(r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) m(i, j) = Int(rng.int_in(-9, 9));
        SnfResult s = smith_normal_form(m);
        CHECK(s.u * m * s.v == s.d);
        Int du = det(s.u), dv = det(s.v);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
        auto diag = s.diagonal();
        for (size_t i = 0; i + 1 < diag.size(); ++i) {
            CHECK(diag[i] >= 0);
            if (diag[i] != 0) CHECK(diag[i + 1] % diag[i] == 0);
        }
        // off-diagonal zero
        for (size_t i = 0; i < s.d.rows; ++i)
            for (size_t j = 0; j < s.d.cols; ++j)
                if (i != j) CHECK(s.d(i, j) == 0);
    }
}

TEST_CASE("discriminant groups") {
    CHECK(discriminant_group(IntLattice::from({{3}})).invariant_factors == std::vector<Int>{3});
    DiscriminantGroup g = discriminant_group(IntLattice::from({{3, 0}, {0, 4}}));
    CHECK(g.invariant_factors == std::vector<Int>{12});
    CHECK(g.order() == 12);
    CHECK(discriminant_group(IntLattice::from({{0, 1}, {1, 0}})).trivial());
    CHECK_THROWS_AS(discriminant_group(IntLattice::from({{1, 1}, {1, 1}})), std::invalid_argument);
}

TEST_CASE("|A_L| = |det| for random nondegenerate lattices") {
    Rng rng(0xabcd);
    int done = 0;
    while (done < 300) {
        size_t n = 1 + rng.below(5);
        IMat g(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) {
                g(i, j) = Int(rng.int_in(-9, 9));
                g(j, i) = g(i, j);
            }
        IntLattice L(g);
        Int d = det(g);
        if (d == 0) continue;
        ++done;
        Int order = discriminant_group(L).order();
        CHECK(order == (d < 0 ? -d : d));
    }
}

TEST_CASE("orthogonal complements") {
    IntLattice U = IntLattice::from({{0, 1}, {1, 0}});
    IntLattice c1 = orthogonal_complement(U, IMat::from({{1, 1}}));
    CHECK(c1.gram == IMat::from({{-2}}));
    IntLattice I2 = IntLattice::from({{1, 0}, {0, 1}});
    CHECK(orthogonal_complement(I2, IMat::from({{1, 0}})).gram == IMat::from({{1}}));
    CHECK_THROWS_AS(orthogonal_complement(I2, IMat::from({{2, 0}})), std::invalid_argument);
}

TEST_CASE("glue lemma examples") {
    GlueResult g1 = glue_verify(IntLattice::from({{0, 1}, {1, 0}}), IMat::from({{1, 1}}));
    CHECK(g1.ok);
    CHECK(g1.factors_sub == std::vector<Int>{2});
    CHECK(g1.factors_comp == std::vector<Int>{2});

    GlueResult g2 = glue_verify(IntLattice::from({{1, 0}, {0, 1}}), IMat::from({{1, 0}}));
    CHECK(g2.ok);
    CHECK(g2.factors_sub.empty());

    // rank-3 sublattice of discriminant 3 inside the standard cubic lattice
    IntLattice I3(IMat::identity(3));
    GlueResult g3 = glue_verify(I3, IMat::from({{1, 1, 1}}));
    CHECK(g3.ok);
    CHECK(g3.factors_sub == std::vector<Int>{3});

    // the same line inside the rank-8 standard lattice
    GlueResult g8 = glue_verify(IntLattice(IMat::identity(8)),
                                IMat::from({{1, 1, 1, 0, 0, 0, 0, 0}}));
    CHECK(g8.ok);
    CHECK(g8.factors_sub == std::vector<Int>{3});
    CHECK(g8.factors_comp == std::vector<Int>{3});

    CHECK_THROWS_AS(glue_verify(IntLattice::from({{2}}), IMat::from({{1}})), std::invalid_argument);
    CHECK_THROWS_AS(glue_verify(IntLattice::from({{1, 0}, {0, 1}}), IMat::from({{2, 0}})),
                    std::invalid_argument);
    // isotropic line in the hyperbolic plane: meets its complement
    CHECK_THROWS_AS(glue_verify(IntLattice::from({{0, 1}, {1, 0}}), IMat::from({{1, 0}})),
                    std::invalid_argument);
}

TEST_CASE("glue lemma on 200 seeded instances") {
    Rng rng(0x91117);
    int done = 0;
    while (done < 200) {
        IntLattice L(IMat::identity(1));
        IMat sub;
        if (!random_glue_instance(rng, L, sub)) continue;
        ++done;
        GlueResult res = glue_verify(L, sub);
        INFO("gram " << L.gram.str() << " sub " << sub.str());
        CHECK(res.ok);
    }
}

TEST_CASE("neg_id_test") {
    CHECK_FALSE(neg_id_test(IntLattice::from({{3}})));
    CHECK(neg_id_test(IntLattice::from({{2}})));
    CHECK_FALSE(neg_id_test(IntLattice::from({{3, 0}, {0, 4}})));
    CHECK(neg_id_test(IntLattice::from({{0, 1}, {1, 0}})));
    for (long long n = 2; n <= 10; ++n) CHECK_FALSE(neg_id_test(IntLattice::from({{3, 0}, {0, 2 * n}})));
}

TEST_CASE("exclude_order_two on the rank-1 lattice (3)") {
    OrderTwoReport rep = exclude_order_two({IMat::from({{3}}), 0});
    CHECK(rep.excluded);
    REQUIRE(rep.isometries.size() == 1);  // only the identity fixes h
    CHECK(rep.isometries[0].induces_id);
    CHECK_FALSE(rep.isometries[0].induces_neg_id);
}

TEST_CASE("exclude_order_two on (3) + (2n), n >= 2") {
    for (long long n = 2; n <= 10; ++n) {
        OrderTwoReport rep = exclude_order_two({IMat::from({{3, 0}, {0, 2 * n}}), 0});
        INFO("n = " << n);
        CHECK(rep.excluded);
        // the two isometries fixing h are Id and Id + (-Id)
        REQUIRE(rep.isometries.size() == 2);
        for (const auto& e : rep.isometries) {
            CHECK_FALSE(e.induces_neg_id);
            if (e.nontrivial) CHECK_FALSE(e.induces_id);
        }
    }
}

TEST_CASE("exclude_order_two boundary (3) + (2): not excluded by the test") {
    OrderTwoReport rep = exclude_order_two({IMat::from({{3, 0}, {0, 2}}), 0});
    CHECK_FALSE(rep.excluded);
    // the culprit: Id + (-Id) induces the identity on Z/3 + Z/2
    bool culprit = false;
    for (const auto& e : rep.isometries)
        if (e.nontrivial && e.induces_id) culprit = true;
    CHECK(culprit);
}

TEST_CASE("exclude_order_two input validation") {
    CHECK_THROWS_AS(exclude_order_two({IMat::from({{-3}}), 0}), std::invalid_argument);
    CHECK_THROWS_AS(exclude_order_two({IMat::from({{4}}), 0}), std::invalid_argument);
}

TEST_CASE("induced discriminant action is well-defined on coset representatives") {
    // For each enumerated isometry and every class of A_L (all groups here
    // have order <= 48), the image must not depend on the chosen lift:
    // shifting a representative by any lattice basis vector leaves its
    // coordinates unchanged, and the action is additive across classes.
    std::vector<IMat> grams{IMat::from({{3}}), IMat::from({{3, 0}, {0, 4}}),
                            IMat::from({{3, 0}, {0, 8}}), IMat::from({{3, 1}, {1, 4}}),
                            IMat::from({{3, 0}, {0, 16}})};
    for (const IMat& gm : grams) {
        IntLattice L(gm);
        DiscriminantGroup A = discriminant_group(L);
        REQUIRE(A.order() <= 48);
        SnfResult snf = smith_normal_form(L.gram);
        IMat uinv = unimodular_inverse(snf.u);
        Int dg = det(L.gram);
        const size_t n = L.rank();

        // rational lifts of the generators, as num/dg in lattice coordinates
        std::vector<std::vector<Int>> gen_lifts;
        std::vector<Int> orders;
        for (size_t i = 0; i < n; ++i) {
            if (snf.d(i, i) == 1) continue;
            orders.push_back(snf.d(i, i));
            std::vector<Int> col(n), num(n);
            for (size_t r = 0; r < n; ++r) col[r] = uinv(r, i);
            for (size_t k = 0; k < n; ++k) {
                IMat mk = L.gram;
                for (size_t r = 0; r < n; ++r) mk(r, k) = col[r];
                num[k] = det(mk);
            }
            gen_lifts.push_back(std::move(num));
        }

        for (const IMat& g : isometries_fixing(L, 0)) {
            auto base = disc_action(L, g);

            // every class: coordinates (c_1..c_m) with c_j in [0, d_j)
            std::vector<std::vector<Int>> classes{{}};
            for (const Int& d : orders) {
                std::vector<std::vector<Int>> next;
                for (const auto& c : classes)
                    for (Int v = 0; v < d; ++v) {
                        auto e = c;
                        e.push_back(v);
                        next.push_back(std::move(e));
                    }
                classes = std::move(next);
            }
            for (const auto& cls : classes) {
                // lift of the class and its expected image by additivity
                std::vector<Int> lift(n, Int(0));
                std::vector<Int> expected(orders.size(), Int(0));
                for (size_t j = 0; j < orders.size(); ++j) {
                    for (size_t r = 0; r < n; ++r) lift[r] += cls[j] * gen_lifts[j][r];
                    for (size_t t = 0; t < orders.size(); ++t)
                        expected[t] += cls[j] * base[j][t];
                }
                for (size_t t = 0; t < orders.size(); ++t) {
                    expected[t] %= orders[t];
                    if (expected[t] < 0) expected[t] += orders[t];
                }
                // several representatives of the same class
                for (size_t shift = 0; shift <= n; ++shift) {
                    std::vector<Int> rep = lift;
                    if (shift > 0) rep[shift - 1] += dg;  // + a lattice basis vector
                    std::vector<Int> gy(n, Int(0));
                    for (size_t r = 0; r < n; ++r)
                        for (size_t c = 0; c < n; ++c) gy[r] += g(r, c) * rep[c];
                    CHECK(disc_coordinates(L, snf, gy, dg) == expected);
                }
            }
        }
    }
}

TEST_CASE("phi_inverse") {
    CHECK(phi_inverse(1) == std::vector<long long>{1, 2});
    CHECK(phi_inverse(2) == std::vector<long long>{3, 4, 6});
    CHECK(phi_inverse(22) == std::vector<long long>{23, 46});
    CHECK(phi_inverse(11).empty());
    // consistency with the direct gcd count, including beyond the search bound
    for (long long k = 1; k <= 12; ++k) {
        std::vector<long long> naive;
        for (long long m = 1; m <= 2 * k * k + 8; ++m)
            if (oracles::phi_naive(m) == k) naive.push_back(m);
        CHECK(phi_inverse(k) == naive);
    }
}

TEST_CASE("classify_aut rank 1") {
    PhiClassification c = classify_aut(1);
    CHECK(c.rank_t == 22);
    CHECK(c.allowed_phi == std::vector<long long>{1, 2, 22});
    CHECK(c.phi_preimage == std::set<long long>{1, 2, 3, 4, 6, 23, 46});
    CHECK(c.final_set == std::set<long long>{1, 3});
    CHECK(c.flagged_extras == std::vector<long long>{4, 6});
    std::map<long long, std::string> reasons;
    for (const auto& e : c.exclusions) reasons[e.m] = e.reason;
    CHECK(reasons.at(2) == "order-two-discriminant");
    CHECK(reasons.at(23) == "external-citation");
    CHECK(reasons.at(46) == "external-citation");
    CHECK(reasons.at(4) == "open-question");
    CHECK(reasons.at(6) == "open-question");
}

TEST_CASE("classify_aut rank 2") {
    PhiClassification c = classify_aut(2);
    CHECK(c.rank_t == 21);
    CHECK(c.allowed_phi == std::vector<long long>{1});
    CHECK(c.final_set == std::set<long long>{1});
    CHECK(c.flagged_extras.empty());
}

TEST_CASE("classify_aut with all exclusions disabled") {
    PhiClassification c = classify_aut(1, ClassifyOptions{false, false});
    CHECK(c.final_set == std::set<long long>{1, 2, 3, 23, 46});
    CHECK(c.flagged_extras == std::vector<long long>{4, 6});
    for (const auto& e : c.exclusions) CHECK(e.reason == "open-question");
}
