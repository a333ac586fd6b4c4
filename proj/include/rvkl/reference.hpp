#pragma once
// Serial reference evaluators: direct transcriptions of the defining residue
// sums, in extended precision, with none of the pairing / batching / table
// machinery of the production kernel.  Tests check the fast kernel against
// these; the benchmark target compares their throughput.

#include <complex>
#include <cstdint>

#include "rvkl/kloosterman.hpp"

namespace rvkl::ref {

// S(m,n,c,nu^{2k}) for the given variant, summed term by term in long double.
std::complex<double> kloosterman(Variant v, int weight2k, int64_t m, int64_t n, int64_t c);

// K(rsq,n,c,nu^{2k}) / K~(rsq,n,c,nu^{2k}); window representatives taken
// literally from the definition.
std::complex<double> rv_kloosterman(Variant v, int weight2k, double rsq, int64_t n,
                                    int64_t c);

}  // namespace rvkl::ref
