#include <catch2/catch_amalgamated.hpp>

#include "enorbit/json_io.hpp"

using namespace enorbit;

namespace {
Scalar rat(long n, long d = 1) { return Scalar(Rational(n, d)); }
}

TEST_CASE("scalar serialization") {
    REQUIRE(to_json(rat(-3, 2)) == json("-3/2"));
    REQUIRE(to_json(rat(7)) == json("7"));
    REQUIRE(scalar_from_json(json("5/10")) == rat(1, 2));
    REQUIRE(scalar_from_json(json(4)) == rat(4));

    const Scalar q = Scalar::quadratic(Rational(1, 3), Rational(-2), 2);
    REQUIRE(scalar_from_json(to_json(q)) == q);
    REQUIRE_THROWS_AS(scalar_from_json(json::array()), Error);
    REQUIRE_THROWS_AS(scalar_from_json(json{{"a", "1"}}), Error);
}

TEST_CASE("point round trip") {
    const EnhancedPoint p = build_nilpotent({GroupKind::SP, 2, 1, {rat(1), rat(-2)}});
    const EnhancedPoint q = point_from_json(to_json(p));
    REQUIRE(q.group == p.group);
    REQUIRE(q.X == p.X);
    REQUIRE(q.u == p.u);

    const EnhancedPoint gl = build_nilpotent({GroupKind::GL, 2, 2, {rat(3), rat(5)}});
    const EnhancedPoint gl2 = point_from_json(to_json(gl));
    REQUIRE(gl2.v == gl.v);

    // group may come from the surrounding context
    json bare = to_json(gl);
    bare.erase("group");
    const EnhancedPoint gl3 = point_from_json(bare, GroupDescriptor::gl(2));
    REQUIRE(gl3.X == gl.X);
    REQUIRE_THROWS_AS(point_from_json(bare), Error);

    // membership violations are schema errors
    json broken = to_json(p);
    broken["X"][0][0] = "1";
    REQUIRE_THROWS_AS(point_from_json(broken), Error);
}

TEST_CASE("seed round trips") {
    const NilpotentSeed s{GroupKind::OEVEN, 3, 2, {rat(1), rat(0), rat(2), rat(0)}};
    const NilpotentSeed s2 = nilpotent_seed_from_json(to_json(s));
    REQUIRE(s2.kind == s.kind);
    REQUIRE(s2.n == s.n);
    REQUIRE(s2.k == s.k);
    REQUIRE(s2.coeffs == s.coeffs);

    const ClosedSeed c{GroupKind::SP, 2, NilpotentSeed{GroupKind::SP, 1, 0, {}},
                       {{Rational(1), NilpotentSeed{GroupKind::GL, 1, 1, {rat(1)}}}}};
    const ClosedSeed c2 = closed_seed_from_json(to_json(c));
    REQUIRE(c2.blocks.size() == 1);
    REQUIRE(c2.blocks[0].c == Rational(1));
    REQUIRE(c2.zero.has_value());
    REQUIRE(build_closed(c2).X == build_closed(c).X);

    json invalid = to_json(s);
    invalid["k"] = 9; // jet order above the rank
    REQUIRE_THROWS_AS(nilpotent_seed_from_json(invalid), Error);
}

TEST_CASE("invariant vectors and elements") {
    const EnhancedPoint p = build_nilpotent({GroupKind::OODD, 2, 1, {rat(1), rat(1), rat(2)}});
    const InvariantVector iv = quotient_map(p);
    const InvariantVector iv2 = invariants_from_json(to_json(iv));
    REQUIRE(iv2 == iv);

    auto [e, pt] = sample(GroupDescriptor::sp(2), 5);
    const MvwElement e2 = mvw_from_json(to_json(e));
    REQUIRE(e2.g == e.g);
    REQUIRE(e2.delta == e.delta);
    REQUIRE_THROWS_AS(mvw_from_json(json{{"g", to_json(e.g)}, {"delta", 3}}), Error);
}

TEST_CASE("gram descriptors round trip") {
    const GroupDescriptor g = GroupDescriptor::from_gram(standard_form(GroupDescriptor::o_odd(1)));
    const GroupDescriptor g2 = group_from_json(to_json(g));
    REQUIRE(g2 == g);
    REQUIRE(kind_from_string("oeven") == GroupKind::OEVEN);
    REQUIRE_THROWS_AS(kind_from_string("so"), Error);
}
