#ifndef LACUNA_GENERATORS_HPP
#define LACUNA_GENERATORS_HPP

#include <cstdint>
#include <string>

#include "lacuna/core.hpp"
#include "lacuna/lacunary.hpp"

namespace lacuna {

/// Deterministic test-corpus sequences, addressed by descriptor:
///   "const:v"        constant v
///   "zero"           all zeros
///   "harmonic"       1/k
///   "alternating"    (-1)^k
///   "char:SET"       1 if k in SET else 0          (SET: index-set descriptor)
///   "spike:SET"      k if k in SET else 0
///   "geomdecay:q"    q^k                           (0 < q < 1)
///   "noisydecay:L"   L + u_k / k, u_k ~ U[-1,1]    (seeded)
///   "logdrift"       log(k)
/// All scalar; use embed_dim to lift into R^d along the first coordinate.
VectorSequence generate_sequence(const std::string& kind, std::uint64_t n,
                                 std::uint64_t seed = 0);

/// Scalar sequence lifted to R^d: coordinate 1 carries the values, the rest
/// copy them with alternating sign so every coordinate converges when the
/// scalar one does.
VectorSequence embed_dim(const VectorSequence& scalar, std::size_t dim);

/// Theta from a compact spec: "geom:RATIO:BLOCKS" | "power:ALPHA:BLOCKS" |
/// a comma list of cutoffs "0,2,4,8".
LacunarySequence parse_theta_spec(const std::string& spec);

} // namespace lacuna

#endif
