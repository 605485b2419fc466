#include "lacuna/summability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lacuna {

const char* method_name(Method m) {
    switch (m) {
        case Method::Ordinary: return "ordinary";
        case Method::Sigma1: return "sigma1";
        case Method::Wp: return "wp";
        case Method::Ntheta: return "ntheta";
        case Method::Stheta: return "stheta";
    }
    return "?";
}

Method parse_method(const std::string& name) {
    if (name == "ordinary") return Method::Ordinary;
    if (name == "sigma1") return Method::Sigma1;
    if (name == "wp") return Method::Wp;
    if (name == "ntheta") return Method::Ntheta;
    if (name == "stheta") return Method::Stheta;
    throw Error(Errc::ParseError, "unknown method '" + name + "'");
}

std::vector<double> EpsilonGrid::values() const {
    if (!(eps0 > 0.0) || !(ratio > 0.0) || !(ratio < 1.0) || steps < 0)
        throw Error(Errc::InvalidArgument, "epsilon grid needs eps0 > 0 and 0 < ratio < 1");
    std::vector<double> eps;
    eps.reserve(static_cast<std::size_t>(steps) + 1);
    double e = eps0;
    for (int j = 0; j <= steps; ++j) {
        eps.push_back(e);
        e *= ratio;
    }
    return eps;
}

namespace {

void require_horizon(const VectorSequence& x, const LacunarySequence& theta) {
    if (x.size() < theta.horizon())
        throw Error(Errc::HorizonTooShort,
                    "sequence has " + std::to_string(x.size()) + " terms but theta needs k_R = " +
                        std::to_string(theta.horizon()));
}

bool all_below(std::span<const double> tail, double tol) {
    for (double v : tail)
        if (!(v < tol)) return false;
    return true;
}

/// verdict rule shared by the residual-style methods: last `window` trace
/// values all strictly below tol (a trace shorter than the window fails)
bool last_window_below(const std::vector<double>& trace, const StabilizationPolicy& policy,
                       double tol) {
    const auto W = static_cast<std::size_t>(policy.window);
    if (trace.size() < W || W == 0) return false;
    return all_below(std::span(trace).last(W), tol);
}

std::vector<std::uint64_t> default_checkpoints(std::uint64_t n) {
    std::vector<std::uint64_t> cps;
    for (std::uint64_t c = 1; c < n; c *= 2) cps.push_back(c);
    cps.push_back(n);
    return cps;
}

double lower_median(std::vector<double>& scratch) {
    const std::size_t mid = (scratch.size() - 1) / 2;
    std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(mid),
                     scratch.end());
    return scratch[mid];
}

} // namespace

SummabilityVerdict ordinary_limit(const VectorSequence& x, NormKind norm,
                                  StabilizationPolicy policy) {
    SummabilityVerdict v;
    v.method = Method::Ordinary;
    v.policy = policy;
    v.limit = x.vector_at(x.size());
    v.limit_source = "auto-last";

    const auto W = std::min<std::size_t>(static_cast<std::size_t>(policy.window), x.size());
    bool ok = x.size() >= static_cast<std::size_t>(policy.window);
    const auto L = v.limit->span();
    for (std::size_t k = x.size() - W + 1; k <= x.size(); ++k) {
        const double dev = norm_diff(x.at(k), L, norm);
        v.residuals.push_back(dev);
        v.checkpoints.push_back(k);
        if (!(dev < policy.tol)) ok = false;
    }
    v.summable = ok;
    return v;
}

Vector block_median_candidate(const VectorSequence& x, const LacunarySequence& theta,
                              NormKind /*norm*/) {
    require_horizon(x, theta);
    const std::uint64_t lo = theta.cutoff(theta.blocks() - 1);
    const std::uint64_t hi = theta.cutoff(theta.blocks());
    std::vector<double> candidate(x.dim());
    std::vector<double> scratch;
    scratch.reserve(static_cast<std::size_t>(hi - lo));
    for (std::size_t j = 0; j < x.dim(); ++j) {
        scratch.clear();
        for (std::uint64_t k = lo + 1; k <= hi; ++k) scratch.push_back(x.at(k)[j]);
        candidate[j] = lower_median(scratch);
    }
    return Vector(std::move(candidate));
}

SummabilityVerdict ntheta(const VectorSequence& x, const std::optional<Vector>& limit,
                          const LacunarySequence& theta, NormKind norm,
                          StabilizationPolicy policy) {
    require_horizon(x, theta);
    SummabilityVerdict v;
    v.method = Method::Ntheta;
    v.policy = policy;
    v.horizon_blocks = theta.blocks();
    if (limit) {
        if (limit->dim() != x.dim())
            throw Error(Errc::DimensionMismatch, "limit dimension does not match sequence");
        v.limit = *limit;
        v.limit_source = "given";
    } else {
        v.limit = block_median_candidate(x, theta, norm);
        v.limit_source = "auto-block-median";
    }

    const auto L = v.limit->span();
    const std::size_t R = theta.blocks();
    v.residuals.reserve(R);
    v.checkpoints.reserve(R);
    for (std::size_t r = 1; r <= R; ++r) {
        double sum = 0.0;
        for (std::uint64_t k = theta.cutoff(r - 1) + 1; k <= theta.cutoff(r); ++k)
            sum += norm_diff(x.at(k), L, norm);
        v.residuals.push_back(sum / static_cast<double>(theta.block_length(r)));
        v.checkpoints.push_back(theta.cutoff(r));
    }
    v.summable = last_window_below(v.residuals, policy, policy.tol);
    return v;
}

SummabilityVerdict stheta(const VectorSequence& x, const std::optional<Vector>& limit,
                          const LacunarySequence& theta, NormKind norm, EpsilonGrid grid,
                          StabilizationPolicy policy) {
    require_horizon(x, theta);
    SummabilityVerdict v;
    v.method = Method::Stheta;
    v.policy = policy;
    v.grid = grid;
    v.epsilons = grid.values();
    v.horizon_blocks = theta.blocks();
    if (limit) {
        if (limit->dim() != x.dim())
            throw Error(Errc::DimensionMismatch, "limit dimension does not match sequence");
        v.limit = *limit;
        v.limit_source = "given";
    } else {
        v.limit = block_median_candidate(x, theta, norm);
        v.limit_source = "auto-block-median";
    }

    const auto L = v.limit->span();
    const std::size_t R = theta.blocks();
    const std::size_t J = v.epsilons.size();
    v.densities.assign(J, std::vector<double>(R, 0.0));
    std::vector<std::uint64_t> counts(J);
    for (std::size_t r = 1; r <= R; ++r) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::uint64_t k = theta.cutoff(r - 1) + 1; k <= theta.cutoff(r); ++k) {
            const double dev = norm_diff(x.at(k), L, norm);
            for (std::size_t j = 0; j < J; ++j)
                if (dev >= v.epsilons[j]) ++counts[j];
        }
        const auto h = static_cast<double>(theta.block_length(r));
        for (std::size_t j = 0; j < J; ++j)
            v.densities[j][r - 1] = static_cast<double>(counts[j]) / h;
        v.checkpoints.push_back(theta.cutoff(r));
    }
    v.summable = true;
    for (std::size_t j = 0; j < J; ++j)
        if (!last_window_below(v.densities[j], policy, grid.delta_tol)) v.summable = false;
    return v;
}

SummabilityVerdict wp(const VectorSequence& x, const std::optional<Vector>& limit, double p,
                      NormKind norm, StabilizationPolicy policy,
                      std::span<const std::uint64_t> checkpoints) {
    if (!(p > 0.0) || !std::isfinite(p))
        throw Error(Errc::BadExponent, "wp exponent must satisfy p > 0");
    SummabilityVerdict v;
    v.method = p == 1.0 ? Method::Sigma1 : Method::Wp;
    v.p = p;
    v.policy = policy;
    if (limit) {
        if (limit->dim() != x.dim())
            throw Error(Errc::DimensionMismatch, "limit dimension does not match sequence");
        v.limit = *limit;
        v.limit_source = "given";
    } else {
        v.limit = x.vector_at(x.size());
        v.limit_source = "auto-last";
    }

    std::vector<std::uint64_t> cps;
    if (checkpoints.empty()) {
        cps = default_checkpoints(x.size());
        checkpoints = cps;
    }
    for (std::uint64_t c : checkpoints)
        if (c < 1 || c > x.size())
            throw Error(Errc::HorizonTooShort,
                        "checkpoint " + std::to_string(c) + " outside the stored prefix");

    const auto L = v.limit->span();
    double acc = 0.0;  // left-to-right; order is part of the contract (p=1 == sigma1 bitwise)
    std::size_t next = 0;
    for (std::uint64_t k = 1; k <= x.size(); ++k) {
        const double dev = norm_diff(x.at(k), L, norm);
        acc += (p == 1.0) ? dev : std::pow(dev, p);
        while (next < checkpoints.size() && checkpoints[next] == k) {
            v.residuals.push_back(acc / static_cast<double>(k));
            v.checkpoints.push_back(k);
            ++next;
        }
        if (next >= checkpoints.size()) break;
    }
    v.summable = last_window_below(v.residuals, policy, policy.tol);
    return v;
}

SummabilityVerdict sigma1(const VectorSequence& x, const std::optional<Vector>& limit,
                          NormKind norm, StabilizationPolicy policy,
                          std::span<const std::uint64_t> checkpoints) {
    return wp(x, limit, 1.0, norm, policy, checkpoints);
}

double theta_norm(const VectorSequence& x, const LacunarySequence& theta, NormKind norm) {
    require_horizon(x, theta);
    double sup = 0.0;
    for (std::size_t r = 1; r <= theta.blocks(); ++r) {
        double sum = 0.0;
        for (std::uint64_t k = theta.cutoff(r - 1) + 1; k <= theta.cutoff(r); ++k)
            sum += lacuna::norm(x.at(k), norm);
        sup = std::max(sup, sum / static_cast<double>(theta.block_length(r)));
    }
    return sup;
}

CauchyOutcome stheta_cauchy(const VectorSequence& x, const LacunarySequence& theta,
                            NormKind norm, EpsilonGrid grid, StabilizationPolicy policy) {
    require_horizon(x, theta);
    CauchyOutcome out;
    CauchyCertificate& cert = out.certificate;
    cert.limit = block_median_candidate(x, theta, norm);
    cert.epsilons = grid.values();

    const std::size_t R = theta.blocks();
    const auto L = cert.limit.span();

    // Highest level each block supports: I_r meets K_p iff min dev in I_r < 1/p.
    constexpr int kLevelCap = 1 << 20;
    std::vector<int> block_cap(R + 1, 0);
    for (std::size_t r = 1; r <= R; ++r) {
        double mindev = std::numeric_limits<double>::infinity();
        for (std::uint64_t k = theta.cutoff(r - 1) + 1; k <= theta.cutoff(r); ++k)
            mindev = std::min(mindev, norm_diff(x.at(k), L, norm));
        if (mindev <= 0.0) {
            block_cap[r] = kLevelCap;
        } else {
            const double inv = 1.0 / mindev;
            block_cap[r] = inv >= kLevelCap ? kLevelCap
                                            : static_cast<int>(std::ceil(inv)) - 1;
        }
    }
    // suffix_cap[r] = min over r' >= r; nondecreasing in r
    std::vector<int> suffix_cap(R + 2, kLevelCap);
    for (std::size_t r = R; r >= 1; --r)
        suffix_cap[r] = std::min(block_cap[r], suffix_cap[r + 1]);

    // thresholds m_p: smallest block > m_{p-1} from which every block meets K_p
    std::size_t m_prev = 0;
    for (int p = 1;; ++p) {
        std::size_t m = m_prev + 1;
        while (m <= R && suffix_cap[m] < p) ++m;
        if (m > R) break;
        cert.thresholds.push_back(m);
        cert.max_level = p;
        m_prev = m;
    }

    // selection: smallest index of I_r cap K_{level(r)}
    cert.selected.resize(R);
    cert.level.resize(R);
    {
        int lvl = 0;
        std::size_t next_threshold = 0;
        for (std::size_t r = 1; r <= R; ++r) {
            while (next_threshold < cert.thresholds.size() &&
                   cert.thresholds[next_threshold] == r) {
                ++next_threshold;
                lvl = static_cast<int>(next_threshold);
            }
            cert.level[r - 1] = lvl;
            std::uint64_t pick = theta.cutoff(r - 1) + 1;
            if (lvl > 0) {
                const double bound = 1.0 / static_cast<double>(lvl);
                for (std::uint64_t k = theta.cutoff(r - 1) + 1; k <= theta.cutoff(r); ++k) {
                    if (norm_diff(x.at(k), L, norm) < bound) {
                        pick = k;
                        break;
                    }
                }
            }
            cert.selected[r - 1] = pick;
        }
    }

    // deviation densities against the representatives
    const std::size_t J = cert.epsilons.size();
    cert.densities.assign(J, std::vector<double>(R, 0.0));
    std::vector<std::uint64_t> counts(J);
    for (std::size_t r = 1; r <= R; ++r) {
        std::fill(counts.begin(), counts.end(), 0);
        const auto rep = x.at(cert.selected[r - 1]);
        for (std::uint64_t k = theta.cutoff(r - 1) + 1; k <= theta.cutoff(r); ++k) {
            const double dev = norm_diff(x.at(k), rep, norm);
            for (std::size_t j = 0; j < J; ++j)
                if (dev >= cert.epsilons[j]) ++counts[j];
        }
        const auto h = static_cast<double>(theta.block_length(r));
        for (std::size_t j = 0; j < J; ++j)
            cert.densities[j][r - 1] = static_cast<double>(counts[j]) / h;
    }

    if (cert.max_level == 0) {
        out.cauchy = false;
        out.reason = "schedule stalled: K_1 misses at least one block in every tail";
        return out;
    }
    for (std::size_t j = 0; j < J; ++j) {
        bool ok = true;
        const auto W = static_cast<std::size_t>(policy.window);
        if (cert.densities[j].size() < W || W == 0) ok = false;
        else
            for (std::size_t r = R - W; r < R; ++r)
                if (!(cert.densities[j][r] < grid.delta_tol)) ok = false;
        if (!ok) {
            out.cauchy = false;
            out.reason = "deviation density at eps=" + std::to_string(cert.epsilons[j]) +
                         " does not vanish over the final window";
            return out;
        }
    }
    out.cauchy = true;
    return out;
}

} // namespace lacuna
