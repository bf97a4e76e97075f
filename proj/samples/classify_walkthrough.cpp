// Walk one point through the whole pipeline: build, invariants, closedness,
// representative, descent.

#include <iostream>

#include <enorbit/enorbit.hpp>

using namespace enorbit;

int main() {
    // the rank-2 symplectic canonical point with jet order 1
    NilpotentSeed seed{GroupKind::SP, 2, 1, {Scalar(0), Scalar(3)}};
    EnhancedPoint x = build_nilpotent(seed);
    std::cout << "X = " << x.X.str() << "\nu = " << x.u.str() << "\n";

    InvariantVector iv = quotient_map(x);
    std::cout << "pairings:";
    for (const auto& s : iv.pairings) std::cout << " " << s.str();
    std::cout << "\n";

    ClassificationReport r = classify(x);
    std::cout << "closed: " << (r.closed ? "yes" : "no") << ", orbit dim " << r.orbit_dim
              << ", stabilizer dim " << r.stabilizer_dim << "\n";

    // re-solve the same fiber from its invariants alone
    EnhancedPoint y = representative_from_invariants(x.group, iv);
    std::cout << "re-solved representative u = " << y.u.str() << "\n";
    std::cout << "same closed orbit: " << (closed_orbit_equal(x, y) ? "yes" : "no") << "\n";

    DescendantReport d = descend({GroupKind::SP, 2, seed, {}});
    std::cout << "descendant: mult_k = " << d.mult_k << ", gamma = " << d.gamma
              << ", dim N = " << d.normal_dim << "\n";
    return 0;
}
