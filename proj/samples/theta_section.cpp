// Level-1 A2 theta functions: evaluate, then check the transformation law at one point.
#include <cstdio>

#include "ellkit/ellkit.hpp"

using namespace ellkit;

int main() {
    const RootDatum d = build_root_datum("A2");
    const UpperHalfPoint tau(Complex(0.1, 1.2));
    const SigmaCPoint h{{Complex(0.3, 0.05), Complex(-0.2, 0.1)}};
    for (const Weight& lam : enumerate_level_k(d, 1)) {
        const ThetaSeries theta = theta_lambda(d, {lam, 1, 0}, 30);
        const SectionValue v = evaluate_section(d, theta, tau, h, 1.0);
        const TransformReport r = verify_section_transform(d, theta, tau, h, 1.0, CorootVector(IntVector{1, 0}), 1e-10);
        std::printf("lambda = (%ld, %ld): %zu terms, value %.12f%+.12fi, tail < %.1e, transform %s\n",
                    static_cast<long>(lam[0]), static_cast<long>(lam[1]), theta.series.size(), v.value.real(),
                    v.value.imag(), v.tail_bound, r.pass ? "ok" : "FAILED");
    }
}
