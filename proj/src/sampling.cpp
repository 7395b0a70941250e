#include "isoprod/sampling.hpp"

#include <array>
#include <stdexcept>

namespace isoprod {

double halton(std::uint64_t index, unsigned base) {
    double f = 1.0;
    double r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

unsigned halton_base(unsigned dim) {
    static constexpr std::array<unsigned, 16> primes = {2,  3,  5,  7,  11, 13, 17, 19,
                                                        23, 29, 31, 37, 41, 43, 47, 53};
    if (dim >= primes.size()) throw std::invalid_argument("halton_base: dimension too large");
    return primes[dim];
}

double halton_in(double lo, double hi, std::uint64_t index, unsigned dim) {
    return lo + (hi - lo) * halton(index, halton_base(dim));
}

}  // namespace isoprod
