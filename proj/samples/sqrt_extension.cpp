// Representatives whose coefficients leave the rationals: one square root is
// allocated on demand, and the result re-verifies exactly.

#include <iostream>

#include <enorbit/enorbit.hpp>

using namespace enorbit;

int main() {
    const GroupDescriptor sp1 = GroupDescriptor::sp(1);
    for (long target : {4, 2, 12}) {
        InvariantVector iv{GroupKind::SP, 1, {Scalar(0)}, {Scalar(target)}};
        EnhancedPoint p = representative_from_invariants(sp1, iv);
        std::cout << "eta_1 = " << target << "  ->  u = " << p.u.str()
                  << "  (round trip " << (quotient_map(p) == iv ? "exact" : "BROKEN") << ")\n";
    }

    // a second extension cannot be represented
    try {
        InvariantVector iv{GroupKind::SP, 1, {Scalar(0)}, {Scalar(-2)}};
        representative_from_invariants(sp1, iv);
    } catch (const Error& e) {
        std::cout << "eta_1 = -2 -> " << e.what() << "\n";
    }
    return 0;
}
