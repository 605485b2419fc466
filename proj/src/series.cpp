#include "lacuna/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lacuna {

const char* coeff_class_name(CoeffClass c) {
    switch (c) {
        case CoeffClass::C00: return "c00";
        case CoeffClass::C0: return "c0";
        case CoeffClass::Linf: return "linf";
    }
    return "?";
}

CoeffClass parse_coeff_class(const std::string& name) {
    if (name == "c00") return CoeffClass::C00;
    if (name == "c0") return CoeffClass::C0;
    if (name == "linf") return CoeffClass::Linf;
    throw Error(Errc::ParseError, "unknown coefficient class '" + name + "'");
}

Coefficients Coefficients::make(CoeffClass cls, std::vector<double> values) {
    Coefficients c;
    c.cls = cls;
    c.values = std::move(values);
    c.bound = 0.0;
    for (double a : c.values) c.bound = std::max(c.bound, std::fabs(a));
    return c;
}

SeriesContext::SeriesContext(VectorSequence terms, Coefficients coeffs, NormKind norm,
                             StabilizationPolicy validation_policy)
    : terms_(std::move(terms)), coeffs_(std::move(coeffs)), norm_(norm) {
    if (coeffs_.values.empty())
        throw Error(Errc::InvalidArgument, "coefficient sequence must be non-empty");
    const std::size_t n = length();
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(coeffs_.values[i]))
            throw Error(Errc::InvalidArgument, "coefficients must be finite");
        if (std::fabs(coeffs_.values[i]) > coeffs_.bound)
            throw Error(Errc::InvalidArgument,
                        "|a_" + std::to_string(i + 1) + "| exceeds the declared bound");
    }
    const auto W = std::min<std::size_t>(static_cast<std::size_t>(validation_policy.window), n);
    if (coeffs_.cls != CoeffClass::Linf) {
        for (std::size_t i = n - W; i < n; ++i) {
            const double a = std::fabs(coeffs_.values[i]);
            if (coeffs_.cls == CoeffClass::C00 && a != 0.0)
                throw Error(Errc::InvalidArgument,
                            "declared c00 but tail entry a_" + std::to_string(i + 1) +
                                " is nonzero");
            if (coeffs_.cls == CoeffClass::C0 && !(a < validation_policy.tol))
                throw Error(Errc::InvalidArgument,
                            "declared c0 but tail entry a_" + std::to_string(i + 1) +
                                " is not below tol");
        }
    }
}

std::size_t SeriesContext::length() const noexcept {
    return std::min(terms_.size(), coeffs_.values.size());
}

const VectorSequence& SeriesContext::partial_sums() const {
    if (!sums_) {
        const std::size_t n = length();
        const std::size_t d = terms_.dim();
        std::vector<double> flat(n * d, 0.0);
        std::vector<double> acc(d, 0.0);
        for (std::size_t k = 1; k <= n; ++k) {
            const auto x = terms_.at(k);
            const double a = coeffs_.values[k - 1];
            for (std::size_t j = 0; j < d; ++j) acc[j] += a * x[j];
            std::copy(acc.begin(), acc.end(), flat.begin() + static_cast<std::ptrdiff_t>((k - 1) * d));
        }
        sums_ = VectorSequence(d, std::move(flat), "partial-sums");
    }
    return *sums_;
}

VectorSequence partial_sums(const SeriesContext& ctx, std::size_t upto) {
    if (upto < 1 || upto > ctx.length())
        throw Error(Errc::HorizonTooShort,
                    "requested S_1..S_" + std::to_string(upto) + " but only " +
                        std::to_string(ctx.length()) + " indices are available");
    const VectorSequence& all = ctx.partial_sums();
    std::vector<double> flat(all.flat().begin(),
                             all.flat().begin() + static_cast<std::ptrdiff_t>(upto * all.dim()));
    return VectorSequence(all.dim(), std::move(flat), "partial-sums");
}

WucReport wuc_check(const VectorSequence& terms, NormKind norm,
                    const std::vector<Functional>& battery, StabilizationPolicy policy) {
    if (battery.empty()) throw Error(Errc::EmptyBattery, "functional battery must be non-empty");
    WucReport report;
    const std::size_t n = terms.size();
    const std::size_t d = terms.dim();

    std::vector<std::uint64_t> cps;
    for (std::uint64_t c = 1; c < n; c *= 2) cps.push_back(c);
    cps.push_back(n);

    const auto W = std::min<std::size_t>(static_cast<std::size_t>(policy.window), n);
    for (std::size_t fi = 0; fi < battery.size(); ++fi) {
        const Functional& f = battery[fi];
        if (f.dim() != d)
            throw Error(Errc::DimensionMismatch, "battery functional dimension mismatch");
        FunctionalTrace trace;
        trace.label = "f" + std::to_string(fi + 1);
        double acc = 0.0;
        double window_start = 0.0;  // T_{n-W}; |f| terms are nonnegative so T is monotone
        std::size_t next = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            if (k == n - W + 1) window_start = acc;
            acc += std::fabs(f(terms.at(k)));
            if (next < cps.size() && cps[next] == k) {
                trace.checkpoints.push_back(k);
                trace.abs_partial.push_back(acc);
                ++next;
            }
        }
        trace.final_sum = acc;
        trace.divergent = !(acc - window_start < policy.tol);
        report.traces.push_back(std::move(trace));
    }

    if (norm == NormKind::Linf) {
        // sup over |a_i|<=1 of ||sum a_i x_i||_inf is attained coordinate-wise
        report.method = "exact-coordinate-sup";
        double best = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            double s = 0.0;
            for (std::size_t k = 1; k <= n; ++k) s += std::fabs(terms.at(k)[j]);
            best = std::max(best, s);
        }
        report.H_estimate = best;
    } else {
        report.method = "greedy-sign-lower-bound";
        std::vector<double> acc(d, 0.0), plus(d), minus(d);
        double best = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            const auto x = terms.at(k);
            for (std::size_t j = 0; j < d; ++j) {
                plus[j] = acc[j] + x[j];
                minus[j] = acc[j] - x[j];
            }
            const double np = lacuna::norm(plus, norm);
            const double nm = lacuna::norm(minus, norm);
            acc = np >= nm ? plus : minus;
            const double running = std::max(np, nm);
            report.evaluated_pattern_norms.push_back(running);
            best = std::max(best, running);
        }
        report.H_estimate = best;
    }
    return report;
}

SummabilityVerdict membership(const SeriesContext& ctx, MethodSpec spec,
                              const LacunarySequence& theta, EpsilonGrid grid,
                              StabilizationPolicy policy) {
    const VectorSequence& sums = ctx.partial_sums();
    switch (spec.method) {
        case Method::Ntheta:
            return ntheta(sums, std::nullopt, theta, ctx.norm(), policy);
        case Method::Stheta:
            return stheta(sums, std::nullopt, theta, ctx.norm(), grid, policy);
        case Method::Sigma1:
        case Method::Wp: {
            if (sums.size() < theta.horizon())
                throw Error(Errc::HorizonTooShort, "partial sums do not cover k_R");
            return wp(sums, std::nullopt, spec.method == Method::Sigma1 ? 1.0 : spec.p,
                      ctx.norm(), policy, theta.cutoffs());
        }
        case Method::Ordinary:
            return ordinary_limit(sums, ctx.norm(), policy);
    }
    throw Error(Errc::InvalidArgument, "unsupported membership method");
}

FunctionalValues::FunctionalValues(Kind kind, Rational param, std::vector<double> values,
                                   std::string desc)
    : kind_(kind), param_(std::move(param)), values_(std::move(values)),
      descriptor_(std::move(desc)) {}

FunctionalValues FunctionalValues::harmonic() {
    return FunctionalValues(Kind::Harmonic, Rational(0), {}, "harmonic");
}

FunctionalValues FunctionalValues::alternating_harmonic() {
    return FunctionalValues(Kind::AlternatingHarmonic, Rational(0), {}, "altharmonic");
}

FunctionalValues FunctionalValues::constant(const Rational& c) {
    std::ostringstream os;
    os << "constant:" << c;
    return FunctionalValues(Kind::Constant, c, {}, os.str());
}

FunctionalValues FunctionalValues::geometric(const Rational& ratio) {
    std::ostringstream os;
    os << "geometric:" << ratio;
    return FunctionalValues(Kind::Geometric, ratio, {}, os.str());
}

FunctionalValues FunctionalValues::explicit_values(std::vector<double> values) {
    return FunctionalValues(Kind::Explicit, Rational(0), std::move(values), "explicit");
}

namespace {

Rational parse_rational(const std::string& text) {
    try {
        const auto slash = text.find('/');
        if (slash == std::string::npos) {
            if (text.find('.') != std::string::npos) {
                return Rational(std::stod(text));  // exact dyadic value of the double
            }
            return Rational(boost::multiprecision::cpp_int(text));
        }
        return Rational(boost::multiprecision::cpp_int(text.substr(0, slash)),
                        boost::multiprecision::cpp_int(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, "bad rational '" + text + "'");
    }
}

} // namespace

FunctionalValues FunctionalValues::parse(const std::string& spec) {
    if (spec == "harmonic") return harmonic();
    if (spec == "altharmonic") return alternating_harmonic();
    if (spec == "constant") return constant(Rational(1));
    if (spec.rfind("constant:", 0) == 0) return constant(parse_rational(spec.substr(9)));
    if (spec == "geometric") return geometric(Rational(1, 2));
    if (spec.rfind("geometric:", 0) == 0) return geometric(parse_rational(spec.substr(10)));
    if (spec.rfind("explicit:", 0) == 0) {
        std::string body = spec.substr(9);
        if (body.size() < 2 || body.front() != '[' || body.back() != ']')
            throw Error(Errc::ParseError, "explicit fvals need [v1,v2,...]");
        std::vector<double> vals;
        std::stringstream ss(body.substr(1, body.size() - 2));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            try {
                vals.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw Error(Errc::ParseError, "bad value '" + tok + "' in explicit fvals");
            }
        }
        return explicit_values(std::move(vals));
    }
    throw Error(Errc::ParseError, "unknown functional spec '" + spec + "'");
}

double FunctionalValues::value(std::uint64_t i) const {
    if (i == 0) throw Error(Errc::InvalidArgument, "fvals are 1-indexed");
    switch (kind_) {
        case Kind::Harmonic: return 1.0 / static_cast<double>(i);
        case Kind::AlternatingHarmonic:
            return (i % 2 == 1 ? 1.0 : -1.0) / static_cast<double>(i);
        case Kind::Constant: return static_cast<double>(param_);
        case Kind::Geometric: return std::pow(static_cast<double>(param_), static_cast<double>(i));
        case Kind::Explicit:
            if (i > values_.size())
                throw Error(Errc::OutOfHorizon, "explicit fvals exhausted");
            return values_[i - 1];
    }
    return 0.0;
}

Rational FunctionalValues::exact(std::uint64_t i) const {
    if (i == 0) throw Error(Errc::InvalidArgument, "fvals are 1-indexed");
    switch (kind_) {
        case Kind::Harmonic: return Rational(1, i);
        case Kind::AlternatingHarmonic: {
            Rational r(1, i);
            return i % 2 == 1 ? r : -r;
        }
        case Kind::Constant: return param_;
        case Kind::Geometric: {
            Rational r = 1;
            for (std::uint64_t t = 0; t < i; ++t) r *= param_;
            return r;
        }
        case Kind::Explicit:
            if (i > values_.size())
                throw Error(Errc::OutOfHorizon, "explicit fvals exhausted");
            return Rational(values_[i - 1]);  // exact dyadic value
    }
    return Rational(0);
}

std::optional<std::uint64_t> FunctionalValues::natural_horizon() const {
    if (kind_ == Kind::Explicit) return values_.size();
    return std::nullopt;
}

int CounterexampleResult::block_of_index(std::uint64_t i) const {
    if (i == 0 || i > last_index())
        throw Error(Errc::OutOfHorizon, "index outside the constructed blocks");
    auto it = std::lower_bound(boundaries.begin(), boundaries.end(), i);
    return static_cast<int>(it - boundaries.begin()) + 1;
}

double CounterexampleResult::magnitude(std::uint64_t i) const {
    return std::ldexp(1.0, -block_of_index(i));
}

std::vector<double> CounterexampleResult::materialize_coeffs(const FunctionalValues& fvals) const {
    std::vector<double> coeffs;
    coeffs.reserve(static_cast<std::size_t>(last_index()));
    for (std::uint64_t i = 1; i <= last_index(); ++i) {
        const double mag = magnitude(i);
        coeffs.push_back(fvals.value(i) >= 0.0 ? mag : -mag);
    }
    return coeffs;
}

std::vector<std::pair<std::string, std::uint64_t>>
CounterexampleResult::coeff_rle(const FunctionalValues& fvals) const {
    std::vector<std::pair<std::string, std::uint64_t>> rle;
    for (std::uint64_t i = 1; i <= last_index(); ++i) {
        const int p = block_of_index(i);
        std::string token = (fvals.value(i) >= 0.0 ? "+1/" : "-1/") +
                            std::to_string(std::uint64_t(1) << p);
        if (!rle.empty() && rle.back().first == token)
            ++rle.back().second;
        else
            rle.emplace_back(std::move(token), 1);
    }
    return rle;
}

CounterexampleResult build_counterexample(const FunctionalValues& fvals, int blocks,
                                          CertMode mode, std::uint64_t horizon) {
    if (blocks < 0) throw Error(Errc::InvalidArgument, "block count must be >= 0");
    CounterexampleResult result;
    result.exact = mode == CertMode::Exact;
    result.fvals_descriptor = fvals.descriptor();
    if (auto n = fvals.natural_horizon()) horizon = std::min(horizon, *n);

    std::uint64_t i = 0;
    for (int p = 1; p <= blocks; ++p) {
        // block sum of |f(x_i)| must strictly exceed 4^p
        if (mode == CertMode::Exact) {
            Rational threshold = Rational(1) << (2 * p);  // 4^p
            Rational sum = 0;
            bool done = false;
            while (i < horizon) {
                ++i;
                Rational a = fvals.exact(i);
                sum += a < 0 ? Rational(-a) : a;
                if (sum > threshold) {
                    done = true;
                    break;
                }
            }
            if (!done)
                throw Error(Errc::PrefixExhausted,
                            "horizon " + std::to_string(horizon) + " exhausted in block " +
                                std::to_string(p) + " (sum so far " +
                                sum.str() + ", needs > 4^" + std::to_string(p) + ")");
            result.boundaries.push_back(i);
            Rational sigma = sum / (Rational(1) << p);  // 2^{-p} * blocksum
            result.block_sums_exact.push_back(sigma);
            result.block_sums.push_back(static_cast<double>(sigma));
            result.block_error_bounds.push_back(0.0);
        } else {
            const double threshold = std::ldexp(1.0, 2 * p);
            double sum = 0.0;
            std::uint64_t ops = 0;
            bool done = false;
            while (i < horizon) {
                ++i;
                sum += std::fabs(fvals.value(i));
                ++ops;
                if (sum > threshold) {
                    done = true;
                    break;
                }
            }
            if (!done)
                throw Error(Errc::PrefixExhausted,
                            "horizon " + std::to_string(horizon) + " exhausted in block " +
                                std::to_string(p));
            result.boundaries.push_back(i);
            result.block_sums.push_back(std::ldexp(sum, -p));
            result.block_error_bounds.push_back(
                static_cast<double>(ops) * std::numeric_limits<double>::epsilon() *
                std::ldexp(sum, -p));
        }
    }
    return result;
}

DivergenceWitness divergence_witness(std::span<const double> sums, const LacunarySequence& theta,
                                     Method method, double limit, double eps,
                                     std::span<const double> ladder) {
    if (sums.size() < theta.horizon())
        throw Error(Errc::HorizonTooShort, "scalar sequence shorter than k_R");
    for (std::size_t k = 1; k < sums.size(); ++k)
        if (sums[k] < sums[k - 1])
            throw Error(Errc::NotMonotone, "sequence decreases at index " + std::to_string(k + 1));

    DivergenceWitness w;
    w.method = method;
    w.limit = limit;
    w.eps = eps;
    const std::size_t R = theta.blocks();

    if (method == Method::Stheta) {
        // first block from which every later block is fully deviant
        std::optional<std::size_t> r0;
        for (std::size_t r = 1; r <= R; ++r) {
            bool full = true;
            for (std::uint64_t k = theta.cutoff(r - 1) + 1; k <= theta.cutoff(r); ++k)
                if (std::fabs(sums[k - 1] - limit) < eps) {
                    full = false;
                    break;
                }
            if (full && !r0) r0 = r;
            if (!full) r0.reset();
        }
        w.first_fully_deviant_block = r0;
        if (!r0) w.note = "no witness at horizon";
    } else if (method == Method::Ntheta) {
        std::vector<double> default_ladder;
        if (ladder.empty()) {
            for (double a = 1.0; a <= 1e9; a *= 2.0) default_ladder.push_back(a);
            ladder = default_ladder;
        }
        std::vector<double> averages(R);
        for (std::size_t r = 1; r <= R; ++r) {
            double s = 0.0;
            for (std::uint64_t k = theta.cutoff(r - 1) + 1; k <= theta.cutoff(r); ++k)
                s += std::fabs(sums[k - 1]);
            averages[r - 1] = s / static_cast<double>(theta.block_length(r));
        }
        for (double A : ladder) {
            bool hit = false;
            for (std::size_t r = 1; r <= R; ++r)
                if (averages[r - 1] > A) {
                    w.ladder_hits.emplace_back(A, r);
                    hit = true;
                    break;
                }
            if (!hit) break;
        }
        if (w.ladder_hits.empty()) w.note = "no witness at horizon";
    } else {
        throw Error(Errc::InvalidArgument, "divergence witness supports stheta and ntheta only");
    }
    return w;
}

} // namespace lacuna
