// Divisibility of theta differences along short Bruhat covers of the affine A1 Weyl group.
#include <iostream>

#include "ellkit/ellkit.hpp"

using namespace ellkit;

int main() {
    const RootDatum d = build_root_datum("A1");
    for (const Weight& lam : enumerate_level_k(d, 2)) {
        for (const BruhatCover& c : bruhat_cover_pairs(d, 3)) {
            const auto cert = check_cover_divisibility(d, {lam, 2, 0}, c, 12);
            std::cout << "lambda " << lam[0] << "  l(w) = " << c.length_w << "  alpha = " << c.alpha.finite[0]
                      << " + " << c.alpha.m << " delta  " << to_string(cert.verdict)
                      << (cert.verified ? " (quotient checked)" : "") << '\n';
        }
    }
}
