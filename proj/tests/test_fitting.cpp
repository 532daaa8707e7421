#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "latlin/fitting.hpp"
#include "latlin/gf.hpp"
#include "latlin/instances.hpp"
#include "fixtures.hpp"

using latlin::ElemId;
using latlin::FiniteLattice;
using latlin::JoinEndo;

namespace {

// Replays a decomposition against direct powers of f.
void check_chains_are_power_values(const JoinEndo& f, const latlin::FittingResult& res) {
    const FiniteLattice& L = f.lattice();
    REQUIRE(res.im_chain.size() == res.r);
    REQUIRE(res.ker_chain.size() == res.r);
    for (std::size_t i = 1; i <= res.r; ++i) {
        auto fi = latlin::power(f, i);
        CHECK(res.im_chain[i - 1] == fi.image());
        CHECK(res.ker_chain[i - 1] == fi.kernel());
    }
    // Image chain descends weakly, kernel chain ascends weakly.
    for (std::size_t i = 1; i < res.r; ++i) {
        CHECK(L.leq(res.im_chain[i], res.im_chain[i - 1]));
        CHECK(L.leq(res.ker_chain[i - 1], res.ker_chain[i]));
    }
    // Both stay put beyond r.
    for (std::size_t extra = 1; extra <= 2; ++extra) {
        auto fx = latlin::power(f, res.r + extra);
        CHECK(fx.image() == res.im_r);
        CHECK(fx.kernel() == res.ker_r);
    }
    CHECK(res.join_ok == (L.join(res.im_r, res.ker_r) == L.top()));
    CHECK(res.meet_ok == (L.meet(res.im_r, res.ker_r) == L.bottom()));
}

}  // namespace

TEST_CASE("iterate stabilization chains") {
    auto cube = testutil::make_cube();

    SECTION("idempotent maps stabilize immediately") {
        for (const auto& table : {std::vector<ElemId>{0, 1, 2, 3, 4, 5, 6, 7},
                                  std::vector<ElemId>(8, 0),
                                  std::vector<ElemId>{0, 1, 0, 1, 0, 1, 0, 1},
                                  std::vector<ElemId>{0, 1, 1, 1, 4, 5, 5, 5}}) {
            JoinEndo f(cube, table);
            auto im = latlin::image_stabilization(f);
            CHECK(im.exponent == 1);
            CHECK(im.chain == std::vector<ElemId>{f.image()});
            auto ker = latlin::kernel_stabilization(f);
            CHECK(ker.exponent == 1);
            CHECK(ker.chain == std::vector<ElemId>{f.kernel()});
        }
    }
    SECTION("a chain map that keeps sliding stabilizes later") {
        auto chain4 = testutil::make_chain(4);
        JoinEndo g(chain4, {0, 0, 1, 3});
        auto im = latlin::image_stabilization(g);
        CHECK(im.exponent == 1);  // g(3) = 3 pins the image at once
        CHECK(im.chain == std::vector<ElemId>{3});
        auto ker = latlin::kernel_stabilization(g);
        CHECK(ker.exponent == 2);  // kernel grows 1, then 2, then stays
        CHECK(ker.chain == std::vector<ElemId>{1, 2});
    }
    SECTION("chains match direct power computations") {
        auto sl = latlin::subspace_lattice(2, 3);
        auto j = latlin::gf::GFMatrix::from_entries(2, 3, 3, {0, 1, 0, 0, 0, 1, 0, 0, 0});
        auto f = latlin::induced_endo(sl, j);
        auto im = latlin::image_stabilization(f);
        auto ker = latlin::kernel_stabilization(f);
        CHECK(im.exponent == 3);
        CHECK(ker.exponent == 3);
        for (std::size_t i = 1; i <= im.exponent; ++i)
            CHECK(im.chain[i - 1] == latlin::power(f, i).image());
        for (std::size_t i = 1; i <= ker.exponent; ++i)
            CHECK(ker.chain[i - 1] == latlin::power(f, i).kernel());
    }
}

TEST_CASE("image-kernel join and meet checks") {
    auto cube = testutil::make_cube();
    JoinEndo proj(cube, {0, 1, 0, 1, 0, 1, 0, 1});
    JoinEndo fold(cube, {0, 1, 1, 1, 4, 5, 5, 5});

    SECTION("an idempotent projection splits the cube") {
        CHECK(latlin::check_image_kernel_join(proj).holds);
        CHECK(latlin::check_image_kernel_meet(proj).holds);
    }
    SECTION("join check refuses maps without kernel complements") {
        try {
            latlin::check_image_kernel_join(fold);
            FAIL("expected HypothesisUnmet");
        } catch (const latlin::HypothesisUnmet& e) {
            CHECK(e.which == "jnb2");
        }
        // The meet side only needs exact preimages, which fold has.
        CHECK(latlin::check_image_kernel_meet(fold).holds);
    }
    SECTION("unstabilized maps are refused") {
        auto chain4 = testutil::make_chain(4);
        JoinEndo slide(chain4, {0, 0, 1, 2});
        try {
            latlin::check_image_kernel_join(slide);
            FAIL("expected HypothesisUnmet");
        } catch (const latlin::HypothesisUnmet& e) {
            CHECK(e.which == "image_stable");
        }
        try {
            latlin::check_image_kernel_meet(slide);
            FAIL("expected HypothesisUnmet");
        } catch (const latlin::HypothesisUnmet& e) {
            CHECK(e.which == "kernel_stable");
        }
    }
    SECTION("job count does not change verdicts") {
        CHECK(latlin::check_image_kernel_join(proj, 4).holds);
        CHECK(latlin::check_image_kernel_meet(proj, 4).holds);
    }
}

TEST_CASE("iterate decomposition on idempotent maps") {
    auto cube = testutil::make_cube();

    for (const auto& table : {std::vector<ElemId>{0, 1, 2, 3, 4, 5, 6, 7},
                              std::vector<ElemId>(8, 0),
                              std::vector<ElemId>{0, 1, 0, 1, 0, 1, 0, 1}}) {
        JoinEndo f(cube, table);
        auto res = latlin::fitting_decomposition(f);
        CHECK(res.r == 1);
        CHECK(res.join_ok);
        CHECK(res.meet_ok);
        REQUIRE(res.min_split_r.has_value());
        CHECK(*res.min_split_r == 1);
        check_chains_are_power_values(f, res);
    }
    JoinEndo id = JoinEndo::identity(cube);
    auto res = latlin::fitting_decomposition(id);
    CHECK(res.im_r == cube.top());
    CHECK(res.ker_r == cube.bottom());
}

TEST_CASE("iterate decomposition of a nilpotent matrix map is degenerate") {
    auto sl = latlin::subspace_lattice(2, 3);
    auto j = latlin::gf::GFMatrix::from_entries(2, 3, 3, {0, 1, 0, 0, 0, 1, 0, 0, 0});
    auto f = latlin::induced_endo(sl, j);

    auto res = latlin::fitting_decomposition(f);
    CHECK(res.r == 3);
    CHECK(res.im_r == sl.lattice.bottom());
    CHECK(res.ker_r == sl.lattice.top());
    CHECK(res.join_ok);
    CHECK(res.meet_ok);
    REQUIRE(res.min_split_r.has_value());
    CHECK(*res.min_split_r == 3);
    check_chains_are_power_values(f, res);

    // The image chain is the flag it collapses through, named explicitly.
    auto plane = sl.index_of(latlin::gf::Subspace::span(2, 3, {{1, 0, 0}, {0, 1, 0}}));
    auto line = sl.index_of(latlin::gf::Subspace::span(2, 3, {{1, 0, 0}}));
    CHECK(res.im_chain == std::vector<ElemId>{plane, line, sl.lattice.bottom()});
    CHECK(res.ker_chain == std::vector<ElemId>{line, plane, sl.lattice.top()});
}

TEST_CASE("iterate decomposition of a block matrix splits properly") {
    auto sl = latlin::subspace_lattice(2, 4);
    // Invertible block on e1,e2; nilpotent block on e3,e4.
    auto a = latlin::gf::GFMatrix::from_entries(
        2, 4, 4, {1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0});
    auto f = latlin::induced_endo(sl, a);

    auto res = latlin::fitting_decomposition(f);
    CHECK(res.r == 2);
    CHECK(res.join_ok);
    CHECK(res.meet_ok);
    REQUIRE(res.min_split_r.has_value());
    CHECK(*res.min_split_r == 2);
    check_chains_are_power_values(f, res);

    // Cross-check the stabilized pair against the matrix oracle at A^r.
    auto a_r = a.pow(res.r);
    CHECK(res.im_r == sl.index_of(latlin::gf::matrix_column_space(a_r)));
    CHECK(res.ker_r == sl.index_of(latlin::gf::matrix_kernel(a_r)));
    CHECK(res.im_r ==
          sl.index_of(latlin::gf::Subspace::span(2, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}})));
    CHECK(res.ker_r ==
          sl.index_of(latlin::gf::Subspace::span(2, 4, {{0, 0, 1, 0}, {0, 0, 0, 1}})));
}

TEST_CASE("decomposition without the hypotheses decays visibly") {
    auto cube = testutil::make_cube();
    JoinEndo fold(cube, {0, 1, 1, 1, 4, 5, 5, 5});

    SECTION("enforcement rejects the fold for missing kernel complements") {
        try {
            latlin::fitting_decomposition(fold);
            FAIL("expected HypothesisUnmet");
        } catch (const latlin::HypothesisUnmet& e) {
            CHECK(e.which == "jnb2");
            CHECK(e.detail.witness.at("x") == 1);
            CHECK(e.detail.witness.at("y") == 3);
        }
    }
    SECTION("without enforcement the failed join is reported as data") {
        auto res = latlin::fitting_decomposition(fold, false);
        CHECK(res.r == 1);
        CHECK_FALSE(res.join_ok);  // image 5 and kernel 0 join to 5, not top
        CHECK(res.meet_ok);
        CHECK_FALSE(res.min_split_r.has_value());
        check_chains_are_power_values(fold, res);
    }
    SECTION("a chain map failing exact preimages keeps a fat meet") {
        auto chain4 = testutil::make_chain(4);
        JoinEndo g(chain4, {0, 0, 1, 3});
        try {
            latlin::fitting_decomposition(g);
            FAIL("expected HypothesisUnmet");
        } catch (const latlin::HypothesisUnmet& e) {
            CHECK(e.which == "jnb3");
        }
        auto res = latlin::fitting_decomposition(g, false);
        CHECK(res.r == 2);
        CHECK(res.join_ok);
        CHECK_FALSE(res.meet_ok);  // im 3 meets kernel 2 at 2
        CHECK_FALSE(res.min_split_r.has_value());
        check_chains_are_power_values(g, res);
    }
}
