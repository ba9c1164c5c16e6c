#include <catch2/catch_amalgamated.hpp>

#include "fano/monodromy.hpp"
#include "fano/rng.hpp"

using namespace fano;

TEST_CASE("cyclotomic field arithmetic") {
    Cyclo w = Cyclo::omega();
    CHECK(w * w == Cyclo::omega_sq());
    CHECK(w * w * w == Cyclo(1));
    CHECK(w != Cyclo(1));
    CHECK(Cyclo(1) + w + w * w == Cyclo(0));
    Cyclo x(Rat(3, 7), Rat(-2, 5));
    CHECK(x * x.inverse() == Cyclo(1));
    CHECK(x.conj().conj() == x);
    CHECK((x * x.conj()).b == 0);  // norms are rational
}

TEST_CASE("milnor numbers") {
    CHECK(milnor_number({3, 2, 2, 2, 2}) == 2);
    CHECK(milnor_number({2, 2, 2, 2, 2}) == 1);
    CHECK(milnor_number({3, 3, 2, 2, 2}) == 4);
    CHECK_THROWS_AS(milnor_number({3, 1}), std::invalid_argument);
}

TEST_CASE("the A2 lattice") {
    MilnorLattice L = a2_lattice();
    CHECK(L.det() == 3);
    CHECK(L.gram[0][0] == 2);
    CHECK(L.gram[1][1] == 2);
    CHECK(L.gram[0][1] == -1);
    CHECK(L.gram[1][0] == -1);
}

TEST_CASE("Picard-Lefschetz reflections") {
    CycVec d1{Cyclo(1), Cyclo(0)}, d2{Cyclo(0), Cyclo(1)};
    CHECK(pl_reflect(d1, 0) == CycVec{Cyclo(-1), Cyclo(0)});
    CHECK(pl_reflect(d2, 0) == CycVec{Cyclo(1), Cyclo(1)});
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        CycVec z{Cyclo(Rat(rng.int_in(-9, 9), 1 + rng.below(5)), Rat(rng.int_in(-9, 9))),
                 Cyclo(Rat(rng.int_in(-9, 9)), Rat(rng.int_in(-9, 9), 1 + rng.below(3)))};
        for (size_t k = 0; k < 2; ++k) CHECK(pl_reflect(pl_reflect(z, k), k) == z);
    }
}

TEST_CASE("local monodromy has order three with eigenvalues w, w^2") {
    CHECK(validate_conventions());
    LocalMonodromy r = local_monodromy();
    CHECK(r.m[0][0] + r.m[1][1] == -1);  // trace of x^2 + x + 1
    // r^3 = Id
    long long a = r.m[0][0], b = r.m[0][1], c = r.m[1][0], d = r.m[1][1];
    long long m2[2][2] = {{a * a + b * c, a * b + b * d}, {c * a + d * c, c * b + d * d}};
    long long m3[2][2] = {{m2[0][0] * a + m2[0][1] * c, m2[0][0] * b + m2[0][1] * d},
                          {m2[1][0] * a + m2[1][1] * c, m2[1][0] * b + m2[1][1] * d}};
    CHECK(m3[0][0] == 1);
    CHECK(m3[1][1] == 1);
    CHECK(m3[0][1] == 0);
    CHECK(m3[1][0] == 0);
    // determinant one, so the eigenvalue multiset is {w, w^2}
    CHECK(a * d - b * c == 1);
}

TEST_CASE("exact eigenbasis") {
    LocalMonodromy r = local_monodromy();
    auto [vw, vw2] = eigenbasis(r);
    auto apply = [&](const CycVec& v) {
        return CycVec{Cyclo(r.m[0][0]) * v[0] + Cyclo(r.m[0][1]) * v[1],
                      Cyclo(r.m[1][0]) * v[0] + Cyclo(r.m[1][1]) * v[1]};
    };
    CHECK(apply(vw) == CycVec{Cyclo::omega() * vw[0], Cyclo::omega() * vw[1]});
    CHECK(apply(vw2) == CycVec{Cyclo::omega_sq() * vw2[0], Cyclo::omega_sq() * vw2[1]});
    // independence
    CHECK_FALSE((vw[0] * vw2[1] - vw[1] * vw2[0]).is_zero());
    // Galois conjugation omega -> omega^2 swaps the eigenvectors up to scalar
    CycVec conj{vw[0].conj(), vw[1].conj()};
    Cyclo cross = conj[0] * vw2[1] - conj[1] * vw2[0];
    CHECK(cross.is_zero());
}

TEST_CASE("global representation structure") {
    for (int m : {1, 2, 5}) {
        GlobalRep rep = build_global(m);
        CHECK(rep.dim() == static_cast<size_t>(2 * m));
        for (const CycMat& g : generators(rep)) CHECK(preserves_form(rep, g));
        // disjoint local operators commute
        if (m >= 2) {
            CHECK(mat_mul(rep.local_ops[0], rep.local_ops[1]) ==
                  mat_mul(rep.local_ops[1], rep.local_ops[0]));
        }
        // r_i is the identity outside its block
        for (int i = 0; i < m; ++i)
            for (size_t r = 0; r < rep.dim(); ++r)
                for (size_t c = 0; c < rep.dim(); ++c) {
                    bool in_block = r / 2 == static_cast<size_t>(i) && c / 2 == static_cast<size_t>(i);
                    if (!in_block)
                        CHECK(rep.local_ops[static_cast<size_t>(i)][r][c] ==
                              (r == c ? Cyclo(1) : Cyclo(0)));
                }
    }
    CHECK_THROWS_AS(build_global(0), std::invalid_argument);
}

TEST_CASE("decompose_rep yields exactly two m-dimensional invariant subspaces") {
    for (int m = 1; m <= 8; ++m) {
        GlobalRep rep = build_global(m);
        auto subs = decompose_rep(rep);
        REQUIRE(subs.size() == 2);
        CHECK(subs[0].size() == static_cast<size_t>(m));
        CHECK(subs[1].size() == static_cast<size_t>(m));
        CHECK(subspace_invariant(rep, subs[0]));
        CHECK(subspace_invariant(rep, subs[1]));
        // trivial intersection: the union is a basis
        CycSpan both(rep.dim());
        size_t inserted = 0;
        for (const auto& fam : subs)
            for (const auto& v : fam)
                if (both.insert(v)) ++inserted;
        CHECK(inserted == rep.dim());
    }
}

TEST_CASE("random closures contain an eigenspace family") {
    Rng rng(0xc105);
    for (int m : {1, 2, 3, 5, 8}) {
        GlobalRep rep = build_global(m);
        auto subs = decompose_rep(rep);
        CycSpan hw(rep.dim()), hw2(rep.dim());
        for (const auto& v : subs[0]) hw.insert(v);
        for (const auto& v : subs[1]) hw2.insert(v);
        for (int trial = 0; trial < 40; ++trial) {
            CycVec v = random_vector(rng, rep.dim());
            CycSpan closure = invariant_closure(rep, v);
            bool cw = true, cw2 = true;
            for (const auto& b : hw.basis)
                if (!closure.contains(b)) cw = false;
            for (const auto& b : hw2.basis)
                if (!closure.contains(b)) cw2 = false;
            INFO("m=" << m << " trial=" << trial);
            CHECK((cw || cw2));
        }
    }
}

TEST_CASE("closure of an eigenvector is exactly its family") {
    GlobalRep rep = build_global(4);
    auto subs = decompose_rep(rep);
    CycSpan closure = invariant_closure(rep, subs[0][2]);
    CHECK(closure.rank() == 4);
    for (const auto& v : subs[0]) CHECK(closure.contains(v));
    for (const auto& v : subs[1]) CHECK_FALSE(closure.contains(v));
}
