#include <doctest.h>

#include "ocorg/serialization.hpp"
#include "ocorg/simulator.hpp"

using namespace ocorg;

namespace {

ClosedLoop scalar_loop() {
    PlantModel plant;
    plant.A = Matrix{{0.5}};
    plant.B = Matrix{{1.0}};
    plant.B_w = Matrix{{1.0}};
    plant.C_o = Matrix{{1.0}};
    plant.D = Matrix{{0.0}};
    plant.D_w = Matrix{{0.0}};
    return make_closed_loop(plant, Matrix{{0.0}});
}

}  // namespace

TEST_CASE("Matrix JSON round-trip preserves every bit") {
    Matrix m(2, 3);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = uniform_pm1(1, i, j) * 1e3;
    const Matrix back = matrix_from_json(to_json(m));
    REQUIRE(back.rows() == 2);
    REQUIRE(back.cols() == 3);
    CHECK((back - m).max_abs() == 0.0);
}

TEST_CASE("HPolytope JSON round-trip") {
    const HPolytope poly = HPolytope::box({-1.0, -2.5}, {1.0, 0.75});
    const HPolytope back = hpolytope_from_json(to_json(poly));
    REQUIRE(back.num_rows() == poly.num_rows());
    CHECK((back.H() - poly.H()).max_abs() == 0.0);
    for (std::size_t i = 0; i < poly.num_rows(); ++i) CHECK(back.h()[i] == poly.h()[i]);
}

TEST_CASE("SupportSet JSON round-trip preserves the support function") {
    SupportSet s;
    s.terms.push_back({Matrix{{1.0, 0.3}, {0.0, 1.0}}, {-1, -2}, {1, 2}});
    s.terms.push_back({Matrix{{0.5, 0.0}, {0.1, 0.5}}, {-1, -1}, {1, 1}});
    s.multiplier = 1.25;
    const SupportSet back = support_set_from_json(to_json(s));
    REQUIRE(back.terms.size() == 2);
    CHECK(back.multiplier == s.multiplier);
    for (int d = 0; d < 16; ++d) {
        const Vector c{uniform_pm1(3, d, 0), uniform_pm1(3, d, 1)};
        CHECK(back.support(c) == s.support(c));
    }
}

TEST_CASE("MAS JSON round-trip preserves membership decisions") {
    const ClosedLoop cl = scalar_loop();
    const SupportSet W = SupportSet::mapped_box(Matrix::identity(1), {-0.05}, {0.05});
    const MasResult mas = compute_mas_lambda(cl, HPolytope::box(-1.0, 1.0, 1), W, 0.9);
    const json j = mas_to_json(mas, 0.9, 1e-6);
    CHECK(j.at("schema") == "ocorg-mas-1");
    const MasResult back = mas_from_json(j);
    CHECK(back.k_star == mas.k_star);
    CHECK(back.rows_raw == mas.rows_raw);
    CHECK(back.m == mas.m);
    CHECK(back.n == mas.n);
    for (int iv = -10; iv <= 10; ++iv)
        for (int ie = -10; ie <= 10; ++ie)
            CHECK(back.member({0.05 * iv}, {0.1 * ie}, 1e-9) ==
                  mas.member({0.05 * iv}, {0.1 * ie}, 1e-9));
}

TEST_CASE("RPI JSON round-trip preserves the support function") {
    const SupportSet W = SupportSet::mapped_box(Matrix::identity(2), {-0.1, -0.1}, {0.1, 0.1});
    const Matrix A{{0.5, 0.1}, {0.0, 0.4}};
    const RPIApprox rpi = rpi_outer_approx(A, Matrix::identity(2), W, 0.1);
    const RPIApprox back = rpi_from_json(rpi_to_json(rpi));
    CHECK(back.s == rpi.s);
    CHECK(back.alpha == rpi.alpha);
    for (int d = 0; d < 16; ++d) {
        const Vector c{uniform_pm1(4, d, 0), uniform_pm1(4, d, 1)};
        CHECK(back.support(c) == rpi.support(c));
    }
}

TEST_CASE("polygon_csv layout") {
    const std::string csv = polygon_csv({{1.0, 2.0}, {-0.5, 0.25}});
    CHECK(csv == "x,y\n1,2\n-0.5,0.25\n");
}

TEST_CASE("content_hash is stable and input-sensitive") {
    const std::string a = content_hash("hello");
    CHECK(a == content_hash("hello"));
    CHECK(a != content_hash("hello "));
    CHECK(a.size() == 16);
    for (char c : a) CHECK(((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')));
}
