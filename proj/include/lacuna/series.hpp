#ifndef LACUNA_SERIES_HPP
#define LACUNA_SERIES_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lacuna/core.hpp"
#include "lacuna/lacunary.hpp"
#include "lacuna/summability.hpp"

namespace lacuna {

using Rational = boost::multiprecision::cpp_rational;

enum class CoeffClass { C00, C0, Linf };

const char* coeff_class_name(CoeffClass c);
CoeffClass parse_coeff_class(const std::string& name);

/// Bounded coefficient sequence (a_i) with its declared class. The declaration
/// is validated against the stored prefix: linf needs |a_i| <= bound, c0
/// additionally needs the last window below tol, c00 needs it exactly zero.
struct Coefficients {
    CoeffClass cls = CoeffClass::Linf;
    std::vector<double> values;
    double bound = 0.0;

    static Coefficients make(CoeffClass cls, std::vector<double> values);
};

/// A series sum_i a_i x_i at a finite horizon, with cached partial sums
/// S_k = S_{k-1} + a_k x_k (the recurrence is the definition; the cached
/// values satisfy it bitwise).
class SeriesContext {
public:
    SeriesContext(VectorSequence terms, Coefficients coeffs, NormKind norm,
                  StabilizationPolicy validation_policy = StabilizationPolicy::residual_default());

    const VectorSequence& terms() const noexcept { return terms_; }
    const Coefficients& coeffs() const noexcept { return coeffs_; }
    NormKind norm() const noexcept { return norm_; }

    /// indices usable by every operation: min(#terms, #coeffs)
    std::size_t length() const noexcept;

    const VectorSequence& partial_sums() const;

private:
    VectorSequence terms_;
    Coefficients coeffs_;
    NormKind norm_;
    mutable std::optional<VectorSequence> sums_;
};

/// S_1..S_upto
VectorSequence partial_sums(const SeriesContext& ctx, std::size_t upto);

struct FunctionalTrace {
    std::string label;
    std::vector<std::uint64_t> checkpoints;
    std::vector<double> abs_partial;   // sum_{i<=n} |f(x_i)| at the checkpoints
    double final_sum = 0.0;
    bool divergent = false;            // tail failed to stabilize under the policy
};

struct WucReport {
    double H_estimate = 0.0;
    std::string method;                // "exact-coordinate-sup" | "greedy-sign-lower-bound"
    std::vector<FunctionalTrace> traces;
    std::vector<double> evaluated_pattern_norms;  // norms of sign patterns actually formed
};

/// Weak unconditional Cauchy check at the horizon: per functional, the
/// absolute-sum trace and a divergence flag; H = sup ||sum a_i x_i|| over
/// |a_i| <= 1, computed exactly for linf (coordinate functionals attain it)
/// and as a greedy sign-pattern lower bound otherwise.
WucReport wuc_check(const VectorSequence& terms, NormKind norm,
                    const std::vector<Functional>& battery,
                    StabilizationPolicy policy = StabilizationPolicy::residual_default());

struct MethodSpec {
    Method method = Method::Stheta;
    double p = 1.0;  // for wp
};

/// Runs the chosen evaluator on the partial-sum sequence of the series; the
/// verdict is horizon-relative membership of (a_i) in the matching space.
SummabilityVerdict membership(const SeriesContext& ctx, MethodSpec spec,
                              const LacunarySequence& theta, EpsilonGrid grid = {},
                              StabilizationPolicy policy = StabilizationPolicy::residual_default());

/// Source of functional values f(x_i). The symbolic kinds know their exact
/// rational form, which the certification path requires.
class FunctionalValues {
public:
    static FunctionalValues harmonic();                     // 1/i
    static FunctionalValues alternating_harmonic();         // (-1)^(i+1)/i
    static FunctionalValues constant(const Rational& c);    // c
    static FunctionalValues geometric(const Rational& ratio);  // ratio^i
    static FunctionalValues explicit_values(std::vector<double> values);
    /// "harmonic" | "altharmonic" | "constant[:c]" | "geometric[:num/den]" | "explicit:[...]"
    static FunctionalValues parse(const std::string& spec);

    double value(std::uint64_t i) const;
    Rational exact(std::uint64_t i) const;
    std::optional<std::uint64_t> natural_horizon() const;
    const std::string& descriptor() const noexcept { return descriptor_; }

private:
    enum class Kind { Harmonic, AlternatingHarmonic, Constant, Geometric, Explicit };
    FunctionalValues(Kind kind, Rational param, std::vector<double> values, std::string desc);

    Kind kind_;
    Rational param_;
    std::vector<double> values_;
    std::string descriptor_;
};

enum class CertMode { Exact, Float };

/// Divergent-coefficient construction: blocks (m_{p-1}, m_p] chosen so the
/// block sum of |f(x_i)| strictly exceeds 4^p, coefficients +-2^{-p} with the
/// sign of f(x_i) (zero counts as +). Then sigma_p = 2^{-p} * blocksum > 2^p.
struct CounterexampleResult {
    std::vector<std::uint64_t> boundaries;    // m_1 < ... < m_P
    std::vector<Rational> block_sums_exact;   // exact mode only
    std::vector<double> block_sums;           // float view of sigma-sums of |f|
    std::vector<double> block_error_bounds;   // float mode: n * eps * running sum
    bool exact = false;
    std::string fvals_descriptor;

    std::uint64_t last_index() const { return boundaries.empty() ? 0 : boundaries.back(); }
    /// 1-based block of index i (i <= m_P)
    int block_of_index(std::uint64_t i) const;
    /// |a_i| = 2^{-p(i)}
    double magnitude(std::uint64_t i) const;
    /// sigma_p as certified: exact ratio in exact mode, double otherwise
    double sigma(int p) const { return block_sums[static_cast<std::size_t>(p - 1)] ; }

    /// a_1..a_{m_P} materialized (signs re-read from the fvals source)
    std::vector<double> materialize_coeffs(const FunctionalValues& fvals) const;
    /// run-length encoding of the coefficient sequence: (value string, run length)
    std::vector<std::pair<std::string, std::uint64_t>> coeff_rle(const FunctionalValues& fvals) const;
};

CounterexampleResult build_counterexample(const FunctionalValues& fvals, int blocks,
                                          CertMode mode, std::uint64_t horizon);

/// Witness that a nondecreasing divergent scalar sequence is not summable:
/// for stheta, the first block from which every index deviates from L by >= eps;
/// for ntheta, the first block whose average of |S_k| exceeds each ladder rung.
struct DivergenceWitness {
    Method method = Method::Stheta;
    double limit = 0.0;
    double eps = 0.0;
    std::optional<std::size_t> first_fully_deviant_block;
    std::vector<std::pair<double, std::size_t>> ladder_hits;  // (A, first block r)
    std::string note;
};

DivergenceWitness divergence_witness(std::span<const double> sums, const LacunarySequence& theta,
                                     Method method, double limit = 0.0, double eps = 1.0,
                                     std::span<const double> ladder = {});

} // namespace lacuna

#endif
