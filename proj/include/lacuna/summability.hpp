#ifndef LACUNA_SUMMABILITY_HPP
#define LACUNA_SUMMABILITY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lacuna/core.hpp"
#include "lacuna/lacunary.hpp"

namespace lacuna {

enum class Method { Ordinary, Sigma1, Wp, Ntheta, Stheta };

const char* method_name(Method m);
Method parse_method(const std::string& name);

/// Finite sampling of the "for every eps > 0" quantifier: eps_j = eps0 * ratio^j
/// for j = 0..steps, strictly decreasing. A deviation density below delta_tol
/// counts as vanishing.
struct EpsilonGrid {
    double eps0 = 1e-1;
    double ratio = 0.5;
    int steps = 6;
    double delta_tol = 1e-3;

    std::vector<double> values() const;
};

struct SummabilityVerdict {
    Method method = Method::Ordinary;
    std::optional<Vector> limit;       // candidate limit; required when summable
    bool summable = false;
    std::string limit_source;          // "given" | "auto-last" | "auto-block-median"

    /// block residuals (ntheta), prefix averages at checkpoints (sigma1/wp),
    /// or tail deviations (ordinary)
    std::vector<double> residuals;
    /// k_r per block for block methods; sampled n for prefix methods
    std::vector<std::uint64_t> checkpoints;

    /// stheta only: densities[j][r] = card{k in I_r : ||x_k - L|| >= eps_j} / h_r
    std::vector<double> epsilons;
    std::vector<std::vector<double>> densities;

    StabilizationPolicy policy;
    std::optional<EpsilonGrid> grid;
    double p = 1.0;                    // wp exponent
    std::size_t horizon_blocks = 0;    // R for block methods
};

/// Plain convergence at the horizon: candidate = x_N, summable iff every
/// deviation over the last `window` raw indices is below tol.
SummabilityVerdict ordinary_limit(const VectorSequence& x, NormKind norm,
                                  StabilizationPolicy policy = StabilizationPolicy::residual_default());

/// Candidate limit used when none is given to the block methods: the
/// coordinate-wise (lower) median of x_k over the final block I_R. A median
/// ignores the density-zero spikes that statistical convergence tolerates.
Vector block_median_candidate(const VectorSequence& x, const LacunarySequence& theta,
                              NormKind norm);

/// Strong lacunary evaluation: residual[r] = (1/h_r) sum_{k in I_r} ||x_k - L||,
/// summable iff the last `window` residuals are all below tol.
SummabilityVerdict ntheta(const VectorSequence& x, const std::optional<Vector>& limit,
                          const LacunarySequence& theta, NormKind norm,
                          StabilizationPolicy policy = StabilizationPolicy::residual_default());

/// Lacunary statistical evaluation: per eps in the grid, the block densities of
/// {k in I_r : ||x_k - L|| >= eps}; summable iff for every eps the last
/// `window` densities are below grid.delta_tol.
SummabilityVerdict stheta(const VectorSequence& x, const std::optional<Vector>& limit,
                          const LacunarySequence& theta, NormKind norm,
                          EpsilonGrid grid = {},
                          StabilizationPolicy policy = StabilizationPolicy::residual_default());

/// Strong p-Cesaro evaluation: rho_n = (1/n) sum_{i<=n} ||x_i - L||^p recorded
/// at `checkpoints` (default: powers of two plus the final index). p = 1 is
/// sigma1; summation order is fixed so the two traces agree bitwise.
SummabilityVerdict wp(const VectorSequence& x, const std::optional<Vector>& limit, double p,
                      NormKind norm,
                      StabilizationPolicy policy = StabilizationPolicy::residual_default(),
                      std::span<const std::uint64_t> checkpoints = {});

SummabilityVerdict sigma1(const VectorSequence& x, const std::optional<Vector>& limit,
                          NormKind norm,
                          StabilizationPolicy policy = StabilizationPolicy::residual_default(),
                          std::span<const std::uint64_t> checkpoints = {});

/// ||x||_theta = sup_r (1/h_r) sum_{k in I_r} ||x_k|| at the horizon.
double theta_norm(const VectorSequence& x, const LacunarySequence& theta, NormKind norm);

/// One representative per block, k'(r) in I_r, built by the nested-level
/// schedule: K_p = {k : ||x_k - L|| < 1/p}, m_p = first block from which every
/// block meets K_p, and k'(r) = the smallest index of I_r cap K_{level(r)}.
struct CauchyCertificate {
    std::vector<std::uint64_t> selected;    // k'(r), r = 1..R
    std::vector<int> level;                 // level used per block (0 before m_1)
    std::vector<std::size_t> thresholds;    // m_p (block index), p = 1..max_level
    int max_level = 0;
    Vector limit;                           // L-hat the schedule was built against
    std::vector<double> epsilons;
    std::vector<std::vector<double>> densities; // vs x_{k'(r)}, densities[j][r]
};

struct CauchyOutcome {
    bool cauchy = false;
    std::string reason;           // set when not Cauchy
    CauchyCertificate certificate;
};

CauchyOutcome stheta_cauchy(const VectorSequence& x, const LacunarySequence& theta,
                            NormKind norm, EpsilonGrid grid = {},
                            StabilizationPolicy policy = StabilizationPolicy::residual_default());

} // namespace lacuna

#endif
