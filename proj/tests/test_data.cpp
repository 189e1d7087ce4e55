// SPDX-License-Identifier: Apache-2.0
#include "bjorling/bjorling_data.hpp"
#include "bjorling/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace bjorling;

namespace {

constexpr double kPi = std::numbers::pi;

VecExpr3 vec(const char* x, const char* y, const char* z) { return parse_vec_expr({x, y, z}); }

} // namespace

TEST_CASE("validate_data on the reference data sets")
{
    SUBCASE("wing-like circle data")
    {
        const auto d = make_data({"cos(s)", "sin(s)", "0"}, {"0", "0", "1"}, 0.0, 2.0 * kPi);
        const auto r = validate_data(d, 1024, 1e-12);
        CHECK(r.pass);
        CHECK(r.r_len <= 1e-15);
        CHECK(r.r_orth <= 1e-15);
        CHECK(r.r_reg == doctest::Approx(1.0));
    }
    SUBCASE("Enneper plane-curve data")
    {
        const auto d = make_data({"0", "-s*(1-s^2/3)/3", "-(s^2)/3"}, {"(1+s^2)/3", "0", "0"}, -1.0, 1.0);
        const auto r = validate_data(d, 1024, 1e-12);
        CHECK(r.pass);
        CHECK(r.r_len <= 1e-12);
        CHECK(r.r_orth <= 1e-12);
    }
    SUBCASE("Enneper core curve, |beta'| = |B| = 2")
    {
        const auto d = make_data({"-cos(s)-cos(3*s)/3", "sin(s)-sin(3*s)/3", "sin(2*s)"},
                                 {"cos(s)+cos(3*s)", "2*cos(2*s)*sin(s)", "-2*sin(2*s)"}, 0.0, 2.0 * kPi);
        const auto r = validate_data(d, 1024, 1e-12);
        CHECK(r.pass);
        for (double s : {0.1, 1.0, 2.5}) {
            CHECK(norm(d.field_at(s)) == doctest::Approx(2.0).epsilon(1e-14));
        }
    }
    SUBCASE("corrected Moebius data")
    {
        const auto d = make_data({"cos(2*s)/2", "sin(2*s)/2", "0"},
                                 {"cos(s)*cos(2*s)", "cos(s)*sin(2*s)", "sin(s)"}, 0.0, 2.0 * kPi);
        CHECK(validate_data(d, 1024, 1e-12).pass);
    }
    SUBCASE("scaled field fails the length condition")
    {
        const auto d = make_data({"cos(s)", "sin(s)", "0"}, {"0", "0", "1.1"}, 0.0, 2.0 * kPi);
        const auto r = validate_data(d);
        CHECK_FALSE(r.pass);
        CHECK(r.r_len == doctest::Approx(0.1));
    }
}

TEST_CASE("uncorrected Moebius caption data fail orthogonality with residual |sin 2s|/2")
{
    // beta = (cos 2s, sin 2s, 0)/2 with B = cos s (cos s, sin s, 0) + sin s e3:
    // <beta', B> = cos s (-sin 2s cos s + cos 2s sin s) = -cos s sin s = -sin(2s)/2.
    const auto d = make_data({"cos(2*s)/2", "sin(2*s)/2", "0"}, {"cos(s)*cos(s)", "cos(s)*sin(s)", "sin(s)"}, 0.0,
                             2.0 * kPi);
    const auto r = validate_data(d, 1024, 1e-12);
    CHECK_FALSE(r.pass);
    CHECK(r.r_orth == doctest::Approx(0.5).epsilon(1e-4));
    const double s = r.s_orth;
    CHECK(std::abs(std::sin(2.0 * s)) == doctest::Approx(1.0).epsilon(1e-4));
    const double s_first = std::fmod(s, kPi / 2.0);
    CHECK(s_first == doctest::Approx(kPi / 4.0).epsilon(1e-2));
}

TEST_CASE("from_normal_field builds B = n ^ beta'")
{
    SUBCASE("vertical line")
    {
        const auto d = from_normal_field(vec("0", "0", "s"), vec("1", "0", "0"), 0.0, 1.0);
        const Vec3 b = d.field_at(0.4);
        CHECK(norm(b - Vec3{0.0, -1.0, 0.0}) <= 1e-15);
    }
    SUBCASE("circle with outward normal")
    {
        const auto d = from_normal_field(vec("cos(s)", "sin(s)", "0"), vec("cos(s)", "sin(s)", "0"), 0.0, 2.0 * kPi);
        for (double s : {0.0, 1.3, 4.0}) {
            CHECK(norm(d.field_at(s) - Vec3{0.0, 0.0, 1.0}) <= 1e-15);
        }
        CHECK(validate_data(d, 1024, 1e-13).pass);
    }
    SUBCASE("helicoidal field")
    {
        const auto d = from_normal_field(vec("0", "0", "s"), vec("cos(s)", "sin(s)", "0"), 0.0, 2.0 * kPi);
        for (double s : {0.2, 2.0}) {
            const Vec3 n{std::cos(s), std::sin(s), 0.0};
            CHECK(norm(d.field_at(s) - cross(n, Vec3{0.0, 0.0, 1.0})) <= 1e-15);
        }
    }
    SUBCASE("preconditions")
    {
        CHECK_THROWS_AS(from_normal_field(vec("0", "0", "s"), vec("2", "0", "0"), 0.0, 1.0), DataError);
        CHECK_THROWS_AS(from_normal_field(vec("0", "0", "s"), vec("0", "0", "1"), 0.0, 1.0), DataError);
    }
}

TEST_CASE("geodesic_data")
{
    const auto d = geodesic_data(vec("cos(s)", "sin(s)", "0"), 0.0, 2.0 * kPi);
    for (double s : {0.0, 2.0}) {
        CHECK(norm(d.field_at(s) - Vec3{0.0, 0.0, -1.0}) <= 1e-14);
    }
    CHECK(validate_data(d).pass);
    CHECK_THROWS_AS(geodesic_data(vec("0", "0", "s"), 0.0, 1.0), DataError);
    CHECK_THROWS_AS(geodesic_data(vec("2*cos(s)", "2*sin(s)", "0"), 0.0, 1.0), DataError);
}

TEST_CASE("classify_periodicity")
{
    const auto moebius = make_data({"cos(2*s)/2", "sin(2*s)/2", "0"},
                                   {"cos(s)*cos(2*s)", "cos(s)*sin(2*s)", "sin(s)"}, 0.0, 2.0 * kPi);
    CHECK(classify_periodicity(moebius, kPi).kind == PeriodKind::Moebius);
    CHECK(classify_periodicity(moebius, 2.0 * kPi).kind == PeriodKind::Periodic);

    const auto helicoid = make_data({"0", "0", "s"}, {"cos(s)", "sin(s)", "0"}, 0.0, 2.0 * kPi);
    const auto p = classify_periodicity(helicoid, 2.0 * kPi);
    CHECK(p.kind == PeriodKind::Helicoidal);
    CHECK(norm(p.shift - Vec3{0.0, 0.0, 2.0 * kPi}) <= 1e-12);

    const auto circle = make_data({"cos(s)", "sin(s)", "0"}, {"0", "0", "1"}, 0.0, 2.0 * kPi);
    CHECK(classify_periodicity(circle, 2.0 * kPi).kind == PeriodKind::Periodic);
    CHECK(classify_periodicity(circle, 1.0).kind == PeriodKind::None);
}

TEST_CASE("antipodal antisymmetry")
{
    CHECK(check_antipodal_antisymmetry(PrescribedH{parse_expr("z", VarSet::sphere())}));
    CHECK_FALSE(check_antipodal_antisymmetry(PrescribedH{parse_expr("1", VarSet::sphere())}));
    CHECK(check_antipodal_antisymmetry(PrescribedH{parse_expr("x*y*z", VarSet::sphere())}));
    CHECK_FALSE(check_antipodal_antisymmetry(PrescribedH{parse_expr("x*x", VarSet::sphere())}));
    CHECK(PrescribedH::parse("z").antisym);
    CHECK_FALSE(PrescribedH::parse("-1").antisym);

    // Stable under doubling the sample count for low-degree polynomials.
    for (const char* h : {"z", "x*y + z^3", "x^2*y - z", "1 + x"}) {
        const PrescribedH f{parse_expr(h, VarSet::sphere())};
        CHECK(check_antipodal_antisymmetry(f, 512) == check_antipodal_antisymmetry(f, 1024));
    }
    for (const Vec3& p : sphere_samples(100)) {
        CHECK(norm(p) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("bended helicoid data")
{
    for (int k : {1, 3, 7}) {
        CAPTURE(k);
        const auto d = make_bended_helicoid_data(1.0, k);
        CHECK(validate_data(d, 1024, 1e-12).pass);
        CHECK(classify_periodicity(d, 2.0 * kPi).kind == PeriodKind::Moebius);
    }
    const auto one = make_bended_helicoid_data(1.0, 1);
    const double s = 0.7;
    const Vec3 expected = std::cos(s / 2) * Vec3{std::cos(s), std::sin(s), 0.0} + std::sin(s / 2) * Vec3{0.0, 0.0, 1.0};
    CHECK(norm(one.field_at(s) - expected) <= 1e-15);

    CHECK_THROWS_AS(make_bended_helicoid_data(1.0, 2), DataError);
    const auto even = make_bended_helicoid_data(1.0, 2, true);
    CHECK(classify_periodicity(even, 2.0 * kPi).kind == PeriodKind::Periodic);
    CHECK_THROWS_AS(make_bended_helicoid_data(-1.0, 1), DataError);
}
