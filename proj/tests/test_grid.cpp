#include <doctest.h>

#include <cmath>

#include "envlab/grid.hpp"
#include "envlab/rng.hpp"

using namespace envlab;

TEST_CASE("disk grid: counts, classification, spacing") {
    const GridPtr g = make_grid(DomainSpec::disk(1.0), 101);
    CHECK(g->spacing == doctest::Approx(0.02));

    // interior nodes are exactly the lattice points with |z| < 1 - spacing
    long expected = 0;
    for (int j = 0; j < 101; ++j)
        for (int i = 0; i < 101; ++i) {
            const double x = -1.0 + 0.02 * i, y = -1.0 + 0.02 * j;
            if (std::hypot(x, y) < 1.0 - g->spacing) ++expected;
        }
    CHECK(static_cast<long>(g->interior_nodes.size()) == expected);

    // boundary nodes live on |z| = 1 after projection and within one spacing before it
    for (int idx : g->boundary_nodes) {
        CHECK(std::hypot(g->coord_x[idx], g->coord_y[idx]) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::hypot(g->lattice_x(idx), g->lattice_y(idx)) >= 1.0 - g->spacing - 1e-12);
    }

    // no interior node touches an exterior one
    for (int idx : g->interior_nodes) {
        for (int nb : {idx - 1, idx + 1, idx - g->nx, idx + g->nx}) CHECK(!g->is_exterior(nb));
    }
}

TEST_CASE("rectangle grid: n=8 has a 6x6 interior block") {
    const GridPtr g = make_grid(DomainSpec::rectangle(1.0), 8);
    CHECK(g->interior_nodes.size() == 36);
    CHECK(g->boundary_nodes.size() == 64 - 36);
}

TEST_CASE("build_grid rejects tiny lattices") {
    CHECK_THROWS_AS(build_grid(DomainSpec::disk(1.0), 4), error);
    CHECK_THROWS_AS(build_grid(DomainSpec::disk(1.0), 7), error);
    CHECK_NOTHROW(build_grid(DomainSpec::disk(1.0), 8));
}

TEST_CASE("annulus grid classifies two boundary rings") {
    const GridPtr g = make_grid(DomainSpec::annulus(0.5, 1.0), 64);
    CHECK(!g->interior_nodes.empty());
    bool inner = false, outer = false;
    for (int idx : g->boundary_nodes) {
        const double r = std::hypot(g->coord_x[idx], g->coord_y[idx]);
        if (std::abs(r - 0.5) < 1e-12) inner = true;
        if (std::abs(r - 1.0) < 1e-12) outer = true;
        CHECK((std::abs(r - 0.5) < 1e-12 || std::abs(r - 1.0) < 1e-12));
    }
    CHECK(inner);
    CHECK(outer);
    for (int idx : g->interior_nodes)
        for (int nb : {idx - 1, idx + 1, idx - g->nx, idx + g->nx}) CHECK(!g->is_exterior(nb));
}

TEST_CASE("generator catalogue values") {
    const GridPtr g = make_grid(DomainSpec::disk(1.0), 101);

    const Field c3 = make_field(g, GeneratorSpec::constant(3.0));
    for (int idx : g->interior_nodes) CHECK(c3.values[idx] == 3.0);

    // holder_cusp(1, 0): -|z|; node (0.5, 0) exists on the n=101 lattice
    const Field cusp = make_field(g, GeneratorSpec::holder_cusp(1.0, 0.0, 0.0));
    const int p = g->index(75, 50);
    CHECK(g->coord_x[p] == doctest::Approx(0.5));
    CHECK(cusp.values[p] == doctest::Approx(-0.5));

    // radial_log floor: max(log r, -1) = -1 at r = e^{-2}
    const GeneratorSpec rl = GeneratorSpec::radial_log(1.0, 0.0, -1.0);
    CHECK(rl.evaluate(std::exp(-2.0), 0.0) == doctest::Approx(-1.0));
    CHECK(rl.evaluate(std::exp(-0.5), 0.0) == doctest::Approx(-0.5));

    CHECK_THROWS_AS(GeneratorSpec::parse("no_such_generator(1)"), error);
    CHECK_THROWS_AS(GeneratorSpec::holder_cusp(1.5, 0.0, 0.0), error);
    CHECK(GeneratorSpec::parse("smooth_bump(0.1, 0, 0.5, -1)").evaluate(0.1, 0.0) ==
          doctest::Approx(-1.0));
}

TEST_CASE("laplacian: exact on quadratics, zero on harmonics") {
    // dyadic spacing (2/16) keeps the stencil arithmetic exact
    const GridPtr g = make_grid(DomainSpec::rectangle(1.0), 17);
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1), c = rng.uniform(-1, 1);
        const double d = rng.uniform(-1, 1), e = rng.uniform(-1, 1), f0 = rng.uniform(-1, 1);
        const Field f = make_field(g, [=](double x, double y) {
            return a * x * x + b * x * y + c * y * y + d * x + e * y + f0;
        });
        const Field lap = laplacian(f);
        for (int idx : g->interior_nodes)
            CHECK(std::abs(lap.values[idx] - (2 * a + 2 * c)) <= 1e-12);
    }

    const Field re = make_field(g, [](double x, double) { return x; });
    const Field lap_re = laplacian(re);
    for (int idx : g->interior_nodes) CHECK(lap_re.values[idx] == 0.0);
}

TEST_CASE("second differences") {
    // rectangle: boundary nodes sit on the lattice, so the stencil identities
    // below are exact; disk boundary projection would add O(spacing) terms
    const GridPtr g = make_grid(DomainSpec::rectangle(1.0), 101);

    const Field lin = make_field(g, [](double x, double y) { return 2 * x - 3 * y + 1; });
    const Field sd_lin = second_difference(lin, 1, 0);
    for (int idx : g->interior_nodes)
        if (!std::isnan(sd_lin.values[idx]))
            CHECK(std::abs(sd_lin.values[idx]) <= 1e-13);

    const Field sq = make_field(g, [](double x, double) { return x * x; });
    const Field sd_sq = second_difference(sq, 1, 0);
    const double sp2 = g->spacing * g->spacing;
    for (int idx : g->interior_nodes)
        if (!std::isnan(sd_sq.values[idx]))
            CHECK(std::abs(sd_sq.values[idx] - 2.0 * sp2) <= 1e-12);

    // -|x| at the origin: u(h) + u(-h) - 2u(0) = -2h; disk grid
    const GridPtr gd = make_grid(DomainSpec::disk(1.0), 101);
    const Field cusp = make_field(gd, [](double x, double y) { return -std::hypot(x, y); });
    const int center = gd->index(50, 50);
    const Field sd_cusp = second_difference(cusp, 1, 0);
    CHECK(sd_cusp.values[center] == doctest::Approx(-2.0 * gd->spacing));

    // linearity in the field argument
    const Field f1 = make_field(g, [](double x, double y) { return std::sin(3 * x) + y * y; });
    const Field f2 = make_field(g, [](double x, double y) { return std::cos(2 * y) - x; });
    const Field combo = field_axpy(2.0, f1, -0.5, f2);
    const Field lhs = second_difference(combo, 2, 1);
    const Field rhs =
        field_axpy(2.0, second_difference(f1, 2, 1), -0.5, second_difference(f2, 2, 1));
    for (int idx = 0; idx < g->size(); ++idx) {
        if (std::isnan(lhs.values[idx]) || std::isnan(rhs.values[idx])) {
            CHECK(std::isnan(lhs.values[idx]) == std::isnan(rhs.values[idx]));
            continue;
        }
        CHECK(std::abs(lhs.values[idx] - rhs.values[idx]) <= 1e-12);
    }
}

TEST_CASE("bilinear interpolation reproduces affine data") {
    const GridPtr g = make_grid(DomainSpec::disk(1.0), 21);
    const Field f = make_field(g, [](double x, double y) { return 1 + 2 * x + 3 * y; });
    CHECK(interpolate(f, 0.123, -0.256) == doctest::Approx(1 + 2 * 0.123 - 3 * 0.256));
}
