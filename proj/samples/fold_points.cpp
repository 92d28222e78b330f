// Fold a few rational points of the G2 Cartan into the fundamental alcove.
#include <iostream>

#include "ellkit/ellkit.hpp"

using namespace ellkit;

int main() {
    const RootDatum d = build_root_datum("G2");
    const std::vector<RationalCartanVector> points = {
        RationalCartanVector(RationalVector{make_rational(7, 3), make_rational(-5, 4)}),
        RationalCartanVector(RationalVector{Rational(0), Rational(0)}),
        RationalCartanVector(RationalVector{make_rational(1, 2), make_rational(13, 6)}),
    };
    for (const auto& h : points) {
        const FoldResult f = fold_to_alcove(d, h);
        std::cout << "h = (" << h[0] << ", " << h[1] << ") -> (" << f.point.point[0] << ", " << f.point.point[1]
                  << ")  walls:";
        for (int w : f.point.walls) std::cout << ' ' << w;
        std::cout << "  witness length " << affine_length(d, f.witness) << '\n';
    }
}
