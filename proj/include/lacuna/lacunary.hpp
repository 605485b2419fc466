#ifndef LACUNA_LACUNARY_HPP
#define LACUNA_LACUNARY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lacuna/error.hpp"

namespace lacuna {

/// Finite-horizon limit detection: a limit over r is accepted once the last
/// `window` values have spread (max - min) below `tol`; the reported estimate
/// is the mean of that window.
struct StabilizationPolicy {
    int window = 5;
    double tol = 1e-4;

    static StabilizationPolicy residual_default() { return {5, 1e-4}; }
    static StabilizationPolicy density_default() { return {5, 1e-3}; }
};

/// Cutoff sequence theta = (k_0, k_1, ..., k_R) with k_0 = 0, defining blocks
/// I_r = (k_{r-1}, k_r], block lengths h_r = k_r - k_{r-1} and ratios
/// q_r = k_r / k_{r-1} (q_1 undefined because k_0 = 0).
class LacunarySequence {
public:
    static LacunarySequence from_cutoffs(std::vector<std::uint64_t> cutoffs,
                                         std::string source = "");
    /// k_r = ceil(lambda^r), deduplicated, collected until `blocks` cutoffs.
    static LacunarySequence geometric(double lambda, int blocks);
    /// k_r = ceil(r^alpha), deduplicated, collected until `blocks` cutoffs.
    static LacunarySequence power(double alpha, int blocks);

    std::size_t blocks() const noexcept { return cutoffs_.size() - 1; }  // R
    std::uint64_t horizon() const noexcept { return cutoffs_.back(); }   // k_R

    /// k_r for r = 0..R
    std::uint64_t cutoff(std::size_t r) const { return cutoffs_.at(r); }
    const std::vector<std::uint64_t>& cutoffs() const noexcept { return cutoffs_; }

    /// h_r = k_r - k_{r-1}, r = 1..R
    std::uint64_t block_length(std::size_t r) const;
    /// q_r = k_r / k_{r-1}, defined for r >= 2 only
    double ratio(std::size_t r) const;

    /// unique r with k_{r-1} < k <= k_r; throws OutOfHorizon past k_R
    std::size_t block_of(std::uint64_t k) const;

    /// set when the prefix shows no block-length growth (h_R <= h_1); the
    /// defining condition h_r -> +inf cannot be verified at a finite horizon
    const std::optional<std::string>& warning() const noexcept { return warning_; }
    const std::string& source() const noexcept { return source_; }

private:
    LacunarySequence(std::vector<std::uint64_t> cutoffs, std::string source);

    std::vector<std::uint64_t> cutoffs_;
    std::string source_;
    std::optional<std::string> warning_;
};

/// Subset of N with decidable membership up to a working horizon. Supported
/// descriptors: "even" | "squares" | "multiples:m" | "explicit:[k1,k2,...]".
class IndexSet {
public:
    static IndexSet parse(const std::string& descriptor);
    static IndexSet explicit_set(std::vector<std::uint64_t> members);
    static IndexSet empty();

    bool contains(std::uint64_t k) const;
    /// card{k in (lo, hi] : k in set}
    std::uint64_t count_in(std::uint64_t lo, std::uint64_t hi) const;
    const std::string& descriptor() const noexcept { return descriptor_; }

private:
    enum class Kind { Even, Squares, Multiples, Explicit };
    IndexSet(Kind kind, std::uint64_t modulus, std::vector<std::uint64_t> members,
             std::string descriptor);

    Kind kind_;
    std::uint64_t modulus_ = 0;                // multiples:m
    std::vector<std::uint64_t> members_;       // explicit, sorted unique
    std::string descriptor_;
};

/// Per-block occupation fractions c_r = card(K cap I_r) / h_r and the
/// finite-horizon estimate of d_theta(K).
struct DensityTrace {
    std::vector<double> fractions;     // c_r, r = 1..R
    std::optional<double> estimate;    // empty <=> did not stabilize
    bool stabilized = false;
    StabilizationPolicy policy;
};

DensityTrace theta_density(const LacunarySequence& theta, const IndexSet& set,
                           StabilizationPolicy policy = StabilizationPolicy::density_default());

/// Shared verdict helper: mean of the last `window` values if their spread is
/// below tol, otherwise nullopt.
std::optional<double> stabilized_mean(const std::vector<double>& values,
                                      const StabilizationPolicy& policy);

} // namespace lacuna

#endif
