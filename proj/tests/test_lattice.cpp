#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <bit>
#include <utility>
#include <vector>

#include "latlin/lattice.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using latlin::ElemId;
using latlin::FiniteLattice;
using testutil::CoverList;
using testutil::cube_covers;
using testutil::kM3Covers;
using testutil::kN5Covers;

namespace {

void check_against_oracle(const FiniteLattice& L, const CoverList& covers) {
    testutil::OrderOracle ora(L.size(), covers);
    const int n = static_cast<int>(L.size());
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            CAPTURE(x, y);
            CHECK(L.leq(x, y) == ora.le[x][y]);
            CHECK(L.join(x, y) == ora.lub(x, y));
            CHECK(L.meet(x, y) == ora.glb(x, y));
        }
}

void check_lattice_laws(const FiniteLattice& L) {
    const int n = static_cast<int>(L.size());
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            CAPTURE(x, y);
            CHECK(L.join(x, y) == L.join(y, x));
            CHECK(L.meet(x, y) == L.meet(y, x));
            CHECK(L.join(x, x) == x);
            CHECK(L.meet(x, x) == x);
            CHECK(L.join(x, L.meet(x, y)) == x);
            CHECK(L.meet(x, L.join(x, y)) == x);
            CHECK(L.leq(x, y) == (L.join(x, y) == y));
            CHECK(L.leq(x, y) == (L.meet(x, y) == x));
        }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                CHECK(L.join(x, L.join(y, z)) == L.join(L.join(x, y), z));
                CHECK(L.meet(x, L.meet(y, z)) == L.meet(L.meet(x, y), z));
            }
}

}  // namespace

TEST_CASE("diamond M3 matches the brute-force oracle") {
    auto L = FiniteLattice::from_covers(5, kM3Covers);
    check_against_oracle(L, kM3Covers);
    check_lattice_laws(L);
    CHECK(L.bottom() == 0);
    CHECK(L.top() == 4);
    CHECK(L.atoms() == std::vector<ElemId>{1, 2, 3});
}

TEST_CASE("pentagon N5 matches the brute-force oracle") {
    auto L = FiniteLattice::from_covers(5, kN5Covers);
    check_against_oracle(L, kN5Covers);
    check_lattice_laws(L);
    CHECK(L.atoms() == std::vector<ElemId>{1, 2});
}

TEST_CASE("subset cube matches the brute-force oracle") {
    auto L = FiniteLattice::from_covers(8, cube_covers());
    check_against_oracle(L, cube_covers());
    check_lattice_laws(L);
    CHECK(L.bottom() == 0);
    CHECK(L.top() == 7);
    CHECK(L.atoms() == std::vector<ElemId>{1, 2, 4});
    for (int s = 0; s < 8; ++s) {
        CHECK(L.join(s, 7 - s) == 7);
        CHECK(L.meet(s, 7 - s) == 0);
    }
}

TEST_CASE("a single element is a lattice") {
    auto L = FiniteLattice::from_covers(1, {});
    CHECK(L.size() == 1);
    CHECK(L.bottom() == 0);
    CHECK(L.top() == 0);
    CHECK(L.join(0, 0) == 0);
    CHECK(L.meet(0, 0) == 0);
    CHECK(L.atoms().empty());
    CHECK(L.height(0) == 0);
}

TEST_CASE("posets without a unique top or bottom are rejected") {
    CHECK_THROWS_AS(FiniteLattice::from_covers(3, {{0, 1}, {0, 2}}), latlin::NoTop);
    CHECK_THROWS_AS(FiniteLattice::from_covers(3, {{1, 0}, {2, 0}}), latlin::NoBottom);
    // Two components: no unique bottom either.
    CHECK_THROWS_AS(FiniteLattice::from_covers(4, {{0, 1}, {2, 3}}), latlin::NoBottom);
}

TEST_CASE("cyclic cover relations are rejected with the cycle") {
    try {
        FiniteLattice::from_covers(3, {{0, 1}, {1, 2}, {2, 0}});
        FAIL("expected CycleDetected");
    } catch (const latlin::CycleDetected& e) {
        // The reported walk must actually be a cycle in the input.
        REQUIRE(e.path.size() >= 2);
        const CoverList edges = {{0, 1}, {1, 2}, {2, 0}};
        for (std::size_t i = 0; i < e.path.size(); ++i) {
            auto lo = e.path[i];
            auto hi = e.path[(i + 1) % e.path.size()];
            CHECK(std::find(edges.begin(), edges.end(), std::make_pair(lo, hi)) != edges.end());
        }
    }
    CHECK_THROWS_AS(FiniteLattice::from_covers(2, {{0, 0}}), latlin::CycleDetected);
}

TEST_CASE("a bounded poset that is not a lattice is rejected with the least bad pair") {
    // Double diamond: 1 and 2 have two minimal upper bounds (3 and 4).
    const CoverList covers = {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}};
    try {
        FiniteLattice::from_covers(6, covers);
        FAIL("expected NotALattice");
    } catch (const latlin::NotALattice& e) {
        CHECK(e.x == 1);
        CHECK(e.y == 2);
    }
}

TEST_CASE("malformed ids and labels are rejected") {
    CHECK_THROWS_AS(FiniteLattice::from_covers(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteLattice::from_covers(2, {{-1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteLattice::from_covers(2, {{0, 1}}, {"only-one"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(FiniteLattice::from_covers(0, {}), std::invalid_argument);
}

TEST_CASE("redundant cover input collapses to the canonical cover relation") {
    // Chain 0 < 1 < 2 given with the redundant pair (0, 2).
    auto L = FiniteLattice::from_covers(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(L.covers() == CoverList{{0, 1}, {1, 2}});

    // Round trip: rebuilding from the canonical covers gives the same order.
    auto cube = FiniteLattice::from_covers(8, cube_covers());
    auto again = FiniteLattice::from_covers(cube.size(), cube.covers());
    CHECK(cube.same_order(again));
    CHECK(again.covers() == cube.covers());

    // Ids are preserved exactly as given, never renumbered: build a chain
    // with ids out of natural order.
    auto twisted = FiniteLattice::from_covers(3, {{0, 2}, {2, 1}});
    CHECK(twisted.bottom() == 0);
    CHECK(twisted.top() == 1);
    CHECK(twisted.leq(2, 1));
    CHECK_FALSE(twisted.leq(1, 2));
    CHECK_FALSE(twisted.same_order(L));
}

TEST_CASE("cover accessors agree with is_cover") {
    auto L = FiniteLattice::from_covers(5, kN5Covers);
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y) {
            const auto& ups = L.covers_up(x);
            const bool listed = std::find(ups.begin(), ups.end(), y) != ups.end();
            CHECK(listed == L.is_cover(x, y));
            const auto& downs = L.covers_down(y);
            CHECK((std::find(downs.begin(), downs.end(), x) != downs.end()) ==
                  L.is_cover(x, y));
        }
    // covers() reports the canonical relation as sorted (lo, hi) pairs.
    auto sorted = kN5Covers;
    std::sort(sorted.begin(), sorted.end());
    CHECK(L.covers() == sorted);
}

TEST_CASE("heights count longest chains from bottom") {
    auto chainish = FiniteLattice::from_covers(3, {{0, 1}, {1, 2}});
    CHECK(chainish.height(0) == 0);
    CHECK(chainish.height(1) == 1);
    CHECK(chainish.height(2) == 2);

    auto cube = FiniteLattice::from_covers(8, cube_covers());
    for (int s = 0; s < 8; ++s) CHECK(cube.height(s) == std::popcount(unsigned(s)));

    auto n5 = FiniteLattice::from_covers(5, kN5Covers);
    CHECK(n5.height(4) == 3);  // longest route via 0 < 2 < 3 < 4
    CHECK(n5.height(1) == 1);
}

TEST_CASE("labels are carried through") {
    auto L = FiniteLattice::from_covers(3, {{0, 1}, {1, 2}}, {"zero", "mid", "one"});
    REQUIRE(L.has_labels());
    CHECK(L.label(1) == "mid");
    CHECK(L.labels().size() == 3);
    auto bare = FiniteLattice::from_covers(3, {{0, 1}, {1, 2}});
    CHECK_FALSE(bare.has_labels());
}

TEST_CASE("join_set folds joins over a list") {
    auto cube = FiniteLattice::from_covers(8, cube_covers());
    CHECK(cube.join_set({}) == 0);
    CHECK(cube.join_set({1, 2}) == 3);
    CHECK(cube.join_set({1, 2, 4}) == 7);
    CHECK(cube.join_set({5}) == 5);
}

TEST_CASE("intervals are sublattices with ambient id maps") {
    auto cube = FiniteLattice::from_covers(8, cube_covers());

    SECTION("[bottom, top] is the whole lattice") {
        auto iv = latlin::interval(cube, 0, 7);
        CHECK(iv.lattice.same_order(cube));
        for (int i = 0; i < 8; ++i) CHECK(iv.to_ambient[i] == i);
    }
    SECTION("[x, x] is a point") {
        auto iv = latlin::interval(cube, 5, 5);
        CHECK(iv.lattice.size() == 1);
        CHECK(iv.to_ambient == std::vector<ElemId>{5});
    }
    SECTION("[bottom, coatom] is a square") {
        auto iv = latlin::interval(cube, 0, 3);
        REQUIRE(iv.lattice.size() == 4);
        CHECK(iv.to_ambient == std::vector<ElemId>{0, 1, 2, 3});
        // Joins/meets agree with the ambient lattice through the id map.
        const auto& L = iv.lattice;
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) {
                CHECK(iv.to_ambient[L.join(ElemId(a), ElemId(b))] ==
                      cube.join(iv.to_ambient[a], iv.to_ambient[b]));
                CHECK(iv.to_ambient[L.meet(ElemId(a), ElemId(b))] ==
                      cube.meet(iv.to_ambient[a], iv.to_ambient[b]));
            }
    }
    SECTION("incomparable endpoints are rejected") {
        CHECK_THROWS_AS(latlin::interval(cube, 1, 2), latlin::NotComparable);
    }
    SECTION("labels restrict to the interval") {
        auto chain = FiniteLattice::from_covers(3, {{0, 1}, {1, 2}}, {"a", "b", "c"});
        auto iv = latlin::interval(chain, 1, 2);
        REQUIRE(iv.lattice.has_labels());
        CHECK(iv.lattice.label(0) == "b");
        CHECK(iv.lattice.label(1) == "c");
    }
}

TEST_CASE("gradedness check finds rank functions or a two-chain witness") {
    CHECK(latlin::is_graded(FiniteLattice::from_covers(8, cube_covers())).holds);
    CHECK(latlin::is_graded(FiniteLattice::from_covers(5, kM3Covers)).holds);
    CHECK(latlin::is_graded(FiniteLattice::from_covers(1, {})).holds);

    auto n5 = FiniteLattice::from_covers(5, kN5Covers);
    auto r = latlin::is_graded(n5);
    REQUIRE_FALSE(r.holds);
    CHECK(r.witness.at("element") == 4);
    REQUIRE(r.witness.chains.size() == 2);
    CHECK(r.witness.chains[0] == std::vector<ElemId>{0, 1, 4});
    CHECK(r.witness.chains[1] == std::vector<ElemId>{0, 2, 3, 4});
    // Replay: both are maximal chains to the witness element of different
    // lengths, stepping through covers only.
    for (const auto& chain : r.witness.chains) {
        REQUIRE(chain.size() >= 2);
        CHECK(chain.front() == n5.bottom());
        CHECK(chain.back() == r.witness.at("element"));
        for (std::size_t i = 0; i + 1 < chain.size(); ++i)
            CHECK(n5.is_cover(chain[i], chain[i + 1]));
    }
    CHECK(r.witness.chains[0].size() != r.witness.chains[1].size());
}

TEST_CASE("atomic cover property check") {
    CHECK(latlin::has_atomic_cover_property(FiniteLattice::from_covers(8, cube_covers())).holds);
    CHECK(latlin::has_atomic_cover_property(FiniteLattice::from_covers(5, kM3Covers)).holds);
    CHECK(latlin::has_atomic_cover_property(FiniteLattice::from_covers(3, {{0, 1}, {1, 2}})).holds);

    SECTION("five-element counterexample, joining an atom skips a level") {
        auto L = FiniteLattice::from_covers(5, {{0, 1}, {0, 2}, {1, 3}, {3, 4}, {2, 4}});
        auto r = latlin::has_atomic_cover_property(L);
        REQUIRE_FALSE(r.holds);
        CHECK(r.witness.at("x") == 1);
        CHECK(r.witness.at("atom") == 2);
        // Replay: the atom is not below x, yet x v atom does not cover x.
        const ElemId x = r.witness.at("x"), a = r.witness.at("atom");
        CHECK_FALSE(L.leq(a, x));
        CHECK_FALSE(L.is_cover(x, L.join(x, a)));
    }
    SECTION("pentagon fails it too") {
        auto r = latlin::has_atomic_cover_property(FiniteLattice::from_covers(5, kN5Covers));
        REQUIRE_FALSE(r.holds);
        CHECK(r.witness.at("x") == 2);
        CHECK(r.witness.at("atom") == 1);
    }
    SECTION("jobs parameter does not change the witness") {
        auto L = FiniteLattice::from_covers(5, {{0, 1}, {0, 2}, {1, 3}, {3, 4}, {2, 4}});
        auto r1 = latlin::has_atomic_cover_property(L, 1);
        auto r4 = latlin::has_atomic_cover_property(L, 4);
        CHECK(r1.holds == r4.holds);
        CHECK(r1.witness.parts == r4.witness.parts);
    }
}

TEST_CASE("atomistic check") {
    CHECK(latlin::is_atomistic(FiniteLattice::from_covers(8, cube_covers())).holds);
    CHECK(latlin::is_atomistic(FiniteLattice::from_covers(5, kM3Covers)).holds);
    CHECK(latlin::is_atomistic(FiniteLattice::from_covers(2, {{0, 1}})).holds);
    CHECK(latlin::is_atomistic(FiniteLattice::from_covers(1, {})).holds);

    auto chain3 = FiniteLattice::from_covers(3, {{0, 1}, {1, 2}});
    auto r = latlin::is_atomistic(chain3);
    REQUIRE_FALSE(r.holds);
    // Replay: the witness element is not the join of the atoms below it.
    const ElemId x = r.witness.at("element");
    REQUIRE(x >= 0);
    std::vector<ElemId> below;
    for (ElemId a : chain3.atoms())
        if (chain3.leq(a, x)) below.push_back(a);
    CHECK(chain3.join_set(below) != x);

    auto n5 = latlin::is_atomistic(FiniteLattice::from_covers(5, kN5Covers));
    CHECK_FALSE(n5.holds);
}
