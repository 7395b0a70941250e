#pragma once

#include <cstdint>

namespace isoprod {

/// Radical-inverse (van der Corput) value of `index` in the given base.
/// halton(i, p_d) over the first primes gives a low-discrepancy sequence;
/// offsetting the index by a seed keeps runs reproducible.
double halton(std::uint64_t index, unsigned base);

/// d-th prime for use as a Halton base (d = 0 -> 2, 1 -> 3, ...).
unsigned halton_base(unsigned dim);

/// Point of [lo, hi] at Halton index `index` in base for dimension `dim`.
double halton_in(double lo, double hi, std::uint64_t index, unsigned dim);

}  // namespace isoprod
