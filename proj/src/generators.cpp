#include "lacuna/generators.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace lacuna {

VectorSequence generate_sequence(const std::string& kind, std::uint64_t n, std::uint64_t seed) {
    if (n == 0) throw Error(Errc::BadGeneratorParam, "sequence length must be positive");
    std::vector<double> values(n);
    std::ostringstream src;
    src << kind << ":n=" << n;

    if (kind.rfind("const:", 0) == 0) {
        const double v = std::stod(kind.substr(6));
        std::fill(values.begin(), values.end(), v);
    } else if (kind == "zero") {
        // already zero
    } else if (kind == "harmonic") {
        for (std::uint64_t k = 1; k <= n; ++k) values[k - 1] = 1.0 / static_cast<double>(k);
    } else if (kind == "alternating") {
        for (std::uint64_t k = 1; k <= n; ++k) values[k - 1] = (k % 2 == 0) ? 1.0 : -1.0;
    } else if (kind.rfind("char:", 0) == 0) {
        const IndexSet set = IndexSet::parse(kind.substr(5));
        for (std::uint64_t k = 1; k <= n; ++k) values[k - 1] = set.contains(k) ? 1.0 : 0.0;
    } else if (kind.rfind("spike:", 0) == 0) {
        const IndexSet set = IndexSet::parse(kind.substr(6));
        for (std::uint64_t k = 1; k <= n; ++k)
            values[k - 1] = set.contains(k) ? static_cast<double>(k) : 0.0;
    } else if (kind.rfind("geomdecay:", 0) == 0) {
        const double q = std::stod(kind.substr(10));
        if (!(q > 0.0 && q < 1.0))
            throw Error(Errc::BadGeneratorParam, "geomdecay ratio must be in (0,1)");
        double v = 1.0;
        for (std::uint64_t k = 1; k <= n; ++k) {
            v *= q;
            values[k - 1] = v;
        }
    } else if (kind.rfind("noisydecay:", 0) == 0) {
        const double L = std::stod(kind.substr(11));
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (std::uint64_t k = 1; k <= n; ++k)
            values[k - 1] = L + u(rng) / static_cast<double>(k);
        src << ":seed=" << seed;
    } else if (kind == "logdrift") {
        for (std::uint64_t k = 1; k <= n; ++k) values[k - 1] = std::log(static_cast<double>(k));
    } else {
        throw Error(Errc::BadGeneratorParam, "unknown sequence kind '" + kind + "'");
    }
    return VectorSequence::from_scalars(std::move(values), src.str());
}

VectorSequence embed_dim(const VectorSequence& scalar, std::size_t dim) {
    if (scalar.dim() != 1) throw Error(Errc::InvalidArgument, "embed_dim expects a scalar sequence");
    if (dim == 1) return scalar;
    const std::size_t n = scalar.size();
    std::vector<double> flat(n * dim);
    for (std::size_t k = 1; k <= n; ++k) {
        const double v = scalar.at(k)[0];
        for (std::size_t j = 0; j < dim; ++j)
            flat[(k - 1) * dim + j] = (j % 2 == 0) ? v : -v;
    }
    return VectorSequence(dim, std::move(flat), scalar.source() + ":dim=" + std::to_string(dim));
}

LacunarySequence parse_theta_spec(const std::string& spec) {
    if (spec.rfind("geom:", 0) == 0) {
        const auto second = spec.find(':', 5);
        if (second == std::string::npos)
            throw Error(Errc::ParseError, "theta spec needs geom:RATIO:BLOCKS");
        return LacunarySequence::geometric(std::stod(spec.substr(5, second - 5)),
                                           std::stoi(spec.substr(second + 1)));
    }
    if (spec.rfind("power:", 0) == 0) {
        const auto second = spec.find(':', 6);
        if (second == std::string::npos)
            throw Error(Errc::ParseError, "theta spec needs power:ALPHA:BLOCKS");
        return LacunarySequence::power(std::stod(spec.substr(6, second - 6)),
                                       std::stoi(spec.substr(second + 1)));
    }
    if (spec.find(',') != std::string::npos) {
        std::vector<std::uint64_t> cutoffs;
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            try {
                cutoffs.push_back(std::stoull(tok));
            } catch (const std::exception&) {
                throw Error(Errc::ParseError, "bad cutoff '" + tok + "'");
            }
        }
        return LacunarySequence::from_cutoffs(std::move(cutoffs), "explicit");
    }
    throw Error(Errc::ParseError, "unrecognized theta spec '" + spec + "'");
}

} // namespace lacuna
