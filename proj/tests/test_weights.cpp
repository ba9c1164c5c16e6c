#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "fano/rng.hpp"
#include "fano/weights.hpp"
#include "oracles.hpp"

using namespace fano;

TEST_CASE("rho_sort on the trivial weight") {
    RhoSortResult r = rho_sort(Weight{0, 0, 0, 0, 0, 0});
    REQUIRE_FALSE(r.singular);
    CHECK(r.degree == 0);
    CHECK(r.dominant == Weight{0, 0, 0, 0, 0, 0});
}

TEST_CASE("rho_sort on the dualizing weight concentrates in top degree") {
    RhoSortResult r = rho_sort(Weight{-7, -5, 0, 0, 0, 0});
    REQUIRE_FALSE(r.singular);
    CHECK(r.degree == 9);
    CHECK(r.dominant == Weight{-2, -2, -2, -2, -2, -2});
}

TEST_CASE("rho_sort detects singular weights") {
    CHECK(rho_sort(Weight{0, 1, 0, 0, 0, 0}).singular);
}

TEST_CASE("weyl_dimension basics") {
    CHECK(weyl_dimension(Weight{0, 0, 0, 0, 0, 0}) == 1);
    CHECK(weyl_dimension(Weight{1, 0, 0, 0, 0, 0}) == 6);
    CHECK(weyl_dimension(Weight{1, 1, 0, 0, 0, 0}) == 15);
    CHECK_THROWS_AS(weyl_dimension(Weight{0, 1}), std::invalid_argument);
}

TEST_CASE("weyl_dimension equals the tableau count") {
    // all dominant shapes with entries in [0,4], ranks up to 6
    for (int n = 2; n <= 6; ++n) {
        std::vector<std::vector<long long>> shapes{{}};
        for (int row = 0; row < n; ++row) {
            std::vector<std::vector<long long>> next;
            for (const auto& s : shapes) {
                long long cap = s.empty() ? 4 : s.back();
                for (long long v = 0; v <= cap; ++v) {
                    auto t = s;
                    t.push_back(v);
                    next.push_back(std::move(t));
                }
            }
            shapes = std::move(next);
        }
        for (const auto& s : shapes) {
            INFO("n=" << n << " shape=" << partition_str(Partition(s.begin(), s.end())));
            CHECK(weyl_dimension(Weight(std::vector<long long>(s))) == oracles::ssyt_count(s, n));
        }
    }
}

TEST_CASE("rho_sort output is independent of pre-permutation") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        size_t n = 5;
        std::vector<long long> lam(n);
        for (auto& v : lam) v = rng.int_in(-6, 6);
        RhoSortResult base = rho_sort(Weight(std::vector<long long>(lam)));

        // permute lambda + rho, subtract rho back
        std::vector<long long> shifted(n);
        for (size_t i = 0; i < n; ++i) shifted[i] = lam[i] + static_cast<long long>(n - 1 - i);
        std::vector<size_t> perm(n);
        for (size_t i = 0; i < n; ++i) perm[i] = i;
        for (size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        std::vector<long long> permuted(n);
        for (size_t i = 0; i < n; ++i)
            permuted[i] = shifted[perm[i]] - static_cast<long long>(n - 1 - i);
        RhoSortResult moved = rho_sort(Weight(std::move(permuted)));

        REQUIRE(base.singular == moved.singular);
        if (!base.singular) CHECK(base.dominant == moved.dominant);
    }
}

TEST_CASE("lr_multiply small products") {
    auto prod = lr_multiply({1}, {1}, 2);
    REQUIRE(prod.size() == 2);
    CHECK(prod.at({2}) == 1);
    CHECK(prod.at({1, 1}) == 1);

    auto cg = lr_multiply({3}, {3}, 2);
    REQUIRE(cg.size() == 4);
    for (const Partition& p : {Partition{6}, Partition{5, 1}, Partition{4, 2}, Partition{3, 3}})
        CHECK(cg.at(p) == 1);

    auto trunc = lr_multiply({1, 1}, {1}, 2);
    REQUIRE(trunc.size() == 1);
    CHECK(trunc.at({2, 1}) == 1);
}

TEST_CASE("lr_multiply respects total dimension") {
    for (int n = 2; n <= 4; ++n) {
        std::vector<Partition> shapes;
        for (long long a = 0; a <= 3; ++a)
            for (long long b = 0; b <= a; ++b) shapes.push_back(trim(Partition{a, b}));
        for (const auto& mu : shapes)
            for (const auto& nu : shapes) {
                auto pad = [n](Partition p) {
                    p.resize(static_cast<size_t>(n), 0);
                    return Weight(std::vector<long long>(p.begin(), p.end()));
                };
                Int lhs(0);
                for (const auto& [lam, mult] : lr_multiply(mu, nu, n))
                    lhs += mult * weyl_dimension(pad(lam));
                CHECK(lhs == weyl_dimension(pad(mu)) * weyl_dimension(pad(nu)));
            }
    }
}
