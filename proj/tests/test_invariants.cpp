#include <catch2/catch_amalgamated.hpp>

#include "enorbit/canonical.hpp"
#include "enorbit/invariants.hpp"

using namespace enorbit;

namespace {

Scalar rat(long n, long d = 1) { return Scalar(Rational(n, d)); }

const std::vector<GroupDescriptor> kAll = {GroupDescriptor::gl(2), GroupDescriptor::sp(2),
                                           GroupDescriptor::o_odd(2), GroupDescriptor::o_even(2)};

Scalar eval_generator(const GeneratorId& g, const GroupDescriptor& d, const Mat& x, const Mat& u,
                      const Mat& v) {
    const auto pw = power_chain(x, g.power);
    switch (g.type) {
        case GeneratorType::TracePower: return pw[g.power].trace();
        case GeneratorType::Mu: return (v * pw[g.power] * u)(0, 0);
        case GeneratorType::Eta:
            return ((pw[g.power] * u).transpose() * standard_form(d) * u)(0, 0);
    }
    fail(errc::internal, "bad generator");
}

// coefficient of t in f(base + t * dir), extracted by exact interpolation
Scalar expansion_linear_coeff(const GeneratorId& g, const EnhancedPoint& p, const Tangent& dir) {
    const std::size_t deg = g.power + 2;
    Mat vandermonde(deg + 1, deg + 1), values(deg + 1, 1);
    for (std::size_t i = 0; i <= deg; ++i) {
        const Scalar t = rat(static_cast<long>(i));
        Scalar power(1);
        for (std::size_t j = 0; j <= deg; ++j) {
            vandermonde(i, j) = power;
            power *= t;
        }
        const Mat x = p.X + t * dir.dX;
        const Mat u = p.u + t * dir.du;
        const Mat v = p.group.kind == GroupKind::GL ? p.v + t * dir.dv : Mat();
        values(i, 0) = eval_generator(g, p.group, x, u, v);
    }
    const auto coeffs = solve_linear(vandermonde, values);
    REQUIRE(coeffs.has_value());
    return (*coeffs)(1, 0);
}

} // namespace

TEST_CASE("quotient map on the canonical examples") {
    // GL_2, (J_2, (3,5), (1,0)): traces vanish, mu = (3, 5)
    const EnhancedPoint p = build_nilpotent({GroupKind::GL, 2, 2, {rat(3), rat(5)}});
    const InvariantVector iv = quotient_map(p);
    REQUIRE(iv.traces == std::vector<Scalar>{rat(0), rat(0)});
    REQUIRE(iv.pairings == std::vector<Scalar>{rat(3), rat(5)});

    // Sp_2 canonical k=1: eta_1 = u_2^2 = 1
    const EnhancedPoint q = build_nilpotent({GroupKind::SP, 1, 1, {rat(0), rat(1)}});
    const InvariantVector jv = quotient_map(q);
    REQUIRE(jv.traces == std::vector<Scalar>{rat(0)});
    REQUIRE(jv.pairings == std::vector<Scalar>{rat(1)});

    for (const auto& d : kAll) {
        const InvariantVector zv = quotient_map(zero_point(d));
        REQUIRE(zv.traces_vanish());
        for (const auto& s : zv.pairings) REQUIRE(s.is_zero());
    }
}

TEST_CASE("invariant vector layout sizes") {
    REQUIRE(quotient_map(zero_point(GroupDescriptor::gl(3))).pairings.size() == 3);
    REQUIRE(quotient_map(zero_point(GroupDescriptor::sp(3))).pairings.size() == 3);
    REQUIRE(quotient_map(zero_point(GroupDescriptor::o_odd(3))).pairings.size() == 4);
    REQUIRE(quotient_map(zero_point(GroupDescriptor::o_even(3))).pairings.size() == 3);
}

TEST_CASE("quotient map is G- and MVW-invariant") {
    for (const auto& d : kAll)
        for (std::uint64_t t = 0; t < 25; ++t) {
            auto [e, p] = sample(d, 7000 + 13 * t);
            const InvariantVector iv = quotient_map(p);
            REQUIRE(quotient_map(act(e, p)) == iv);
            REQUIRE(quotient_map(act(twisted_element(e, d), p)) == iv);
        }
}

TEST_CASE("parity vanishing on form-preserving inputs") {
    for (const auto& d : {GroupDescriptor::sp(2), GroupDescriptor::o_odd(2),
                          GroupDescriptor::o_even(2)}) {
        for (std::uint64_t t = 0; t < 10; ++t) {
            auto [e, p] = sample(d, 600 + t);
            const auto pw = power_chain(p.X, 2 * d.m());
            const Mat b = standard_form(d);
            for (std::size_t i = 1; i <= d.m(); i += 2) REQUIRE(pw[i].trace().is_zero());
            for (std::size_t j = 0; j < d.m(); ++j) {
                const Scalar eta = ((pw[j] * p.u).transpose() * b * p.u)(0, 0);
                const bool must_vanish = d.symplectic_like() ? j % 2 == 0 : j % 2 == 1;
                if (must_vanish) REQUIRE(eta.is_zero());
            }
        }
    }
}

TEST_CASE("jet evaluation on the worked examples") {
    // f = tr(X^2) at X = J_2 in direction e_{2,1}: value 0, derivative 2
    const EnhancedPoint p = make_point(GroupDescriptor::gl(2), Mat::jordan(2),
                                       Mat::zeros(2, 1), Mat::zeros(1, 2));
    Tangent dir = zero_tangent(p.group);
    dir.dX = Mat::unit(2, 1, 2);
    const auto [val, der] = jet_eval({GeneratorType::TracePower, 2}, p, dir);
    REQUIRE(val == rat(0));
    REQUIRE(der == rat(2));

    // zero direction: zero derivative
    const auto [v0, d0] = jet_eval({GeneratorType::TracePower, 2}, p, zero_tangent(p.group));
    REQUIRE(d0 == rat(0));

    // mu_0 = v u at (J_2, (3,5), (1,0)), direction du = e_1: derivative v e_1 = 1
    const EnhancedPoint q = build_nilpotent({GroupKind::GL, 2, 2, {rat(3), rat(5)}});
    Tangent du = zero_tangent(q.group);
    du.du(0, 0) = rat(1);
    const auto [mv, md] = jet_eval({GeneratorType::Mu, 0}, q, du);
    REQUIRE(mv == rat(3));
    REQUIRE(md == rat(1));
}

TEST_CASE("jet derivatives agree with the exact polynomial expansion") {
    int checked = 0;
    for (const auto& d : kAll) {
        detail::Lcg rng(1234 + d.m());
        for (int t = 0; t < 7; ++t) {
            auto [e, p] = sample(d, 4000 + 3 * t);
            Tangent dir = zero_tangent(d);
            dir.dX = detail::random_matrix(rng, d.m(), d.m()); // any direction, not only g
            dir.du = detail::random_matrix(rng, d.m(), 1);
            if (d.kind == GroupKind::GL) dir.dv = detail::random_matrix(rng, 1, d.m());
            for (const auto& gen : generators_for(d)) {
                const auto [val, der] = jet_eval(gen, p, dir);
                REQUIRE(der == expansion_linear_coeff(gen, p, dir));
                REQUIRE(val == eval_generator(gen, d, p.X, p.u, p.v));
                ++checked;
            }
        }
    }
    REQUIRE(checked >= 100);
}

TEST_CASE("jacobian ranks") {
    // GL_n at x(n, y): full rank 2n
    for (std::size_t n = 1; n <= 3; ++n) {
        NilpotentSeed s{GroupKind::GL, n, n, {}};
        s.coeffs.assign(n, rat(1));
        REQUIRE(invariant_jacobian_rank(build_nilpotent(s)) == 2 * n);
    }
    // all generators have degree >= 2: zero differential at the origin
    REQUIRE(invariant_jacobian_rank(zero_point(GroupDescriptor::sp(2))) == 0);
    REQUIRE(invariant_jacobian_rank(zero_point(GroupDescriptor::o_even(2))) == 0);
    // Sp_2n maximal point: rank 2n
    for (std::size_t n = 1; n <= 3; ++n) {
        NilpotentSeed s{GroupKind::SP, n, n, {}};
        s.coeffs.assign(2 * n, rat(1));
        const EnhancedPoint p = build_nilpotent(s);
        REQUIRE(invariant_jacobian_rank(p) == 2 * n);
        REQUIRE(invariant_jacobian_rank(p) <= generators_for(p.group).size());
    }
}

TEST_CASE("closed orbit equality") {
    const EnhancedPoint a = build_nilpotent({GroupKind::GL, 2, 2, {rat(3), rat(5)}});
    const EnhancedPoint b = build_nilpotent({GroupKind::GL, 2, 2, {rat(3), rat(5)}});
    const EnhancedPoint c = build_nilpotent({GroupKind::GL, 2, 2, {rat(3), rat(7)}});
    REQUIRE(closed_orbit_equal(a, b));
    REQUIRE(!closed_orbit_equal(a, c));

    // Sp_1 canonical with u = (0,1) and u = (0,-1): same closed orbit
    const EnhancedPoint s1 = build_nilpotent({GroupKind::SP, 1, 1, {rat(0), rat(1)}});
    const EnhancedPoint s2 = build_nilpotent({GroupKind::SP, 1, 1, {rat(0), rat(-1)}});
    REQUIRE(closed_orbit_equal(s1, s2));

    const EnhancedPoint other = zero_point(GroupDescriptor::sp(2));
    REQUIRE_THROWS_AS(closed_orbit_equal(s1, other), Error);
}
