// Prints the exact star discrepancy of the first N points of the 2D Halton
// sequence for N = 16, 32, ..., 1024, with N D*_N / (ln N)^2 alongside.

#include <cmath>
#include <iostream>

#include "qmclab/discrepancy/compute.hpp"
#include "qmclab/generators/spec_text.hpp"
#include "qmclab/generators/stream.hpp"

int main() {
    using namespace qmclab;
    const auto spec = parse_spec("halton{bases=2,3}", 1024);
    const auto points = stream(spec, 0, 1024);
    std::cout << "N\tD*_N\tN D*_N / (ln N)^2\n";
    for (std::size_t N = 16; N <= 1024; N *= 2) {
        const auto r = star_disc_2d_sweep(points.prefix(N));
        const double ln = std::log(static_cast<double>(N));
        std::cout << N << '\t' << to_string(r.value()) << '\t' << N * to_double(r.value()) / (ln * ln) << '\n';
    }
}
