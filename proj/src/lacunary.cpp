#include "lacuna/lacunary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lacuna {

LacunarySequence::LacunarySequence(std::vector<std::uint64_t> cutoffs, std::string source)
    : cutoffs_(std::move(cutoffs)), source_(std::move(source)) {
    const std::size_t R = blocks();
    const std::uint64_t h1 = cutoffs_[1] - cutoffs_[0];
    const std::uint64_t hR = cutoffs_[R] - cutoffs_[R - 1];
    if (hR <= h1 && R >= 2) {
        std::ostringstream os;
        os << "no block-length growth across horizon (h_1=" << h1 << ", h_R=" << hR
           << "); h_r -> +inf looks implausible for this prefix";
        warning_ = os.str();
    }
}

LacunarySequence LacunarySequence::from_cutoffs(std::vector<std::uint64_t> cutoffs,
                                                std::string source) {
    if (cutoffs.size() < 2)
        throw Error(Errc::InvalidArgument, "need at least k_0 and k_1");
    if (cutoffs.front() != 0)
        throw Error(Errc::NotStartingAtZero, "k_0 must be 0");
    for (std::size_t i = 1; i < cutoffs.size(); ++i)
        if (cutoffs[i] <= cutoffs[i - 1])
            throw Error(Errc::NotStrictlyIncreasing,
                        "cutoffs must be strictly increasing (violated at position " +
                            std::to_string(i) + ")");
    return LacunarySequence(std::move(cutoffs), std::move(source));
}

LacunarySequence LacunarySequence::geometric(double lambda, int blocks) {
    if (!(lambda > 1.0))
        throw Error(Errc::BadGeneratorParam, "geometric ratio must exceed 1");
    if (blocks < 1) throw Error(Errc::BadGeneratorParam, "need at least one block");
    std::vector<std::uint64_t> cutoffs{0};
    double p = 1.0;
    while (cutoffs.size() < static_cast<std::size_t>(blocks) + 1) {
        p *= lambda;
        auto k = static_cast<std::uint64_t>(std::ceil(p));
        if (k > cutoffs.back()) cutoffs.push_back(k);
    }
    std::ostringstream os;
    os << "geom:" << lambda << ":" << blocks;
    return LacunarySequence(std::move(cutoffs), os.str());
}

LacunarySequence LacunarySequence::power(double alpha, int blocks) {
    if (!(alpha > 1.0))
        throw Error(Errc::BadGeneratorParam, "power exponent must exceed 1");
    if (blocks < 1) throw Error(Errc::BadGeneratorParam, "need at least one block");
    std::vector<std::uint64_t> cutoffs{0};
    for (std::uint64_t r = 1; cutoffs.size() < static_cast<std::size_t>(blocks) + 1; ++r) {
        auto k = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(r), alpha)));
        if (k > cutoffs.back()) cutoffs.push_back(k);
    }
    std::ostringstream os;
    os << "power:" << alpha << ":" << blocks;
    return LacunarySequence(std::move(cutoffs), os.str());
}

std::uint64_t LacunarySequence::block_length(std::size_t r) const {
    if (r < 1 || r > blocks())
        throw Error(Errc::InvalidArgument, "block index out of range");
    return cutoffs_[r] - cutoffs_[r - 1];
}

double LacunarySequence::ratio(std::size_t r) const {
    if (r < 2 || r > blocks())
        throw Error(Errc::InvalidArgument,
                    "q_r is defined for 2 <= r <= R only (q_1 is undefined since k_0 = 0)");
    return static_cast<double>(cutoffs_[r]) / static_cast<double>(cutoffs_[r - 1]);
}

std::size_t LacunarySequence::block_of(std::uint64_t k) const {
    if (k == 0) throw Error(Errc::InvalidArgument, "sequence indices start at 1");
    if (k > horizon())
        throw Error(Errc::OutOfHorizon, "index " + std::to_string(k) + " exceeds k_R = " +
                                            std::to_string(horizon()));
    // first cutoff >= k; cutoffs are strictly increasing
    auto it = std::lower_bound(cutoffs_.begin(), cutoffs_.end(), k);
    return static_cast<std::size_t>(it - cutoffs_.begin());
}

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

} // namespace

IndexSet::IndexSet(Kind kind, std::uint64_t modulus, std::vector<std::uint64_t> members,
                   std::string descriptor)
    : kind_(kind), modulus_(modulus), members_(std::move(members)),
      descriptor_(std::move(descriptor)) {}

IndexSet IndexSet::parse(const std::string& descriptor) {
    if (descriptor == "even") return IndexSet(Kind::Even, 2, {}, descriptor);
    if (descriptor == "squares") return IndexSet(Kind::Squares, 0, {}, descriptor);
    if (descriptor.rfind("multiples:", 0) == 0) {
        std::uint64_t m = 0;
        try {
            m = std::stoull(descriptor.substr(10));
        } catch (const std::exception&) {
            throw Error(Errc::ParseError, "bad multiples descriptor '" + descriptor + "'");
        }
        if (m == 0) throw Error(Errc::ParseError, "multiples modulus must be positive");
        return IndexSet(Kind::Multiples, m, {}, descriptor);
    }
    if (descriptor.rfind("explicit:", 0) == 0) {
        std::string body = descriptor.substr(9);
        if (body.size() < 2 || body.front() != '[' || body.back() != ']')
            throw Error(Errc::ParseError, "explicit descriptor needs [k1,k2,...]");
        std::vector<std::uint64_t> members;
        std::stringstream ss(body.substr(1, body.size() - 2));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            try {
                members.push_back(std::stoull(tok));
            } catch (const std::exception&) {
                throw Error(Errc::ParseError, "bad index '" + tok + "' in explicit set");
            }
        }
        return explicit_set(std::move(members));
    }
    throw Error(Errc::ParseError, "unknown index-set descriptor '" + descriptor + "'");
}

IndexSet IndexSet::explicit_set(std::vector<std::uint64_t> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return IndexSet(Kind::Explicit, 0, std::move(members), "explicit");
}

IndexSet IndexSet::empty() { return explicit_set({}); }

bool IndexSet::contains(std::uint64_t k) const {
    switch (kind_) {
        case Kind::Even: return k % 2 == 0;
        case Kind::Squares: {
            std::uint64_t r = isqrt(k);
            return r * r == k;
        }
        case Kind::Multiples: return k % modulus_ == 0;
        case Kind::Explicit:
            return std::binary_search(members_.begin(), members_.end(), k);
    }
    return false;
}

std::uint64_t IndexSet::count_in(std::uint64_t lo, std::uint64_t hi) const {
    if (hi <= lo) return 0;
    switch (kind_) {
        case Kind::Even: return hi / 2 - lo / 2;
        case Kind::Squares: return isqrt(hi) - isqrt(lo);
        case Kind::Multiples: return hi / modulus_ - lo / modulus_;
        case Kind::Explicit: {
            auto a = std::upper_bound(members_.begin(), members_.end(), lo);
            auto b = std::upper_bound(members_.begin(), members_.end(), hi);
            return static_cast<std::uint64_t>(b - a);
        }
    }
    return 0;
}

std::optional<double> stabilized_mean(const std::vector<double>& values,
                                      const StabilizationPolicy& policy) {
    const auto W = static_cast<std::size_t>(policy.window);
    if (values.size() < W || W == 0) return std::nullopt;
    double lo = values.back(), hi = values.back(), sum = 0.0;
    for (std::size_t i = values.size() - W; i < values.size(); ++i) {
        lo = std::min(lo, values[i]);
        hi = std::max(hi, values[i]);
        sum += values[i];
    }
    if (hi - lo < policy.tol) return sum / static_cast<double>(W);
    return std::nullopt;
}

DensityTrace theta_density(const LacunarySequence& theta, const IndexSet& set,
                           StabilizationPolicy policy) {
    DensityTrace trace;
    trace.policy = policy;
    const std::size_t R = theta.blocks();
    trace.fractions.reserve(R);
    for (std::size_t r = 1; r <= R; ++r) {
        const std::uint64_t count = set.count_in(theta.cutoff(r - 1), theta.cutoff(r));
        trace.fractions.push_back(static_cast<double>(count) /
                                  static_cast<double>(theta.block_length(r)));
    }
    trace.estimate = stabilized_mean(trace.fractions, policy);
    trace.stabilized = trace.estimate.has_value();
    return trace;
}

} // namespace lacuna
