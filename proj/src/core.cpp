#include "lacuna/core.hpp"

#include <algorithm>
#include <cmath>

namespace lacuna {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::NotStartingAtZero: return "NotStartingAtZero";
        case Errc::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
        case Errc::OutOfHorizon: return "OutOfHorizon";
        case Errc::HorizonTooShort: return "HorizonTooShort";
        case Errc::BadGeneratorParam: return "BadGeneratorParam";
        case Errc::BadExponent: return "BadExponent";
        case Errc::EmptyBattery: return "EmptyBattery";
        case Errc::PrefixExhausted: return "PrefixExhausted";
        case Errc::NotMonotone: return "NotMonotone";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::ParseError: return "ParseError";
    }
    return "UnknownError";
}

const char* norm_name(NormKind k) {
    switch (k) {
        case NormKind::L1: return "l1";
        case NormKind::L2: return "l2";
        case NormKind::Linf: return "linf";
    }
    return "?";
}

NormKind parse_norm(const std::string& name) {
    if (name == "l1" || name == "L1") return NormKind::L1;
    if (name == "l2" || name == "L2") return NormKind::L2;
    if (name == "linf" || name == "Linf" || name == "LINF") return NormKind::Linf;
    throw Error(Errc::ParseError, "unknown norm '" + name + "'");
}

namespace {

void check_finite(std::span<const double> coords) {
    if (coords.empty())
        throw Error(Errc::InvalidArgument, "vector must have dimension >= 1");
    for (double c : coords)
        if (!std::isfinite(c))
            throw Error(Errc::InvalidArgument, "vector coordinates must be finite");
}

} // namespace

Vector::Vector(std::vector<double> coords) : coords_(std::move(coords)) {
    check_finite(coords_);
}

Vector::Vector(std::initializer_list<double> coords) : coords_(coords) {
    check_finite(coords_);
}

double norm(std::span<const double> v, NormKind kind) {
    switch (kind) {
        case NormKind::L1: {
            double s = 0.0;
            for (double c : v) s += std::fabs(c);
            return s;
        }
        case NormKind::L2: {
            double s = 0.0;
            for (double c : v) s += c * c;
            return std::sqrt(s);
        }
        case NormKind::Linf: {
            double s = 0.0;
            for (double c : v) s = std::max(s, std::fabs(c));
            return s;
        }
    }
    return 0.0;
}

double norm(const Vector& v, NormKind kind) { return norm(v.span(), kind); }

double norm_diff(std::span<const double> x, std::span<const double> y, NormKind kind) {
    switch (kind) {
        case NormKind::L1: {
            double s = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) s += std::fabs(x[j] - y[j]);
            return s;
        }
        case NormKind::L2: {
            double s = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) {
                double d = x[j] - y[j];
                s += d * d;
            }
            return std::sqrt(s);
        }
        case NormKind::Linf: {
            double s = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) s = std::max(s, std::fabs(x[j] - y[j]));
            return s;
        }
    }
    return 0.0;
}

double Functional::operator()(std::span<const double> v) const {
    if (v.size() != weights_.dim())
        throw Error(Errc::DimensionMismatch, "functional of dimension " +
                                                 std::to_string(weights_.dim()) +
                                                 " applied to vector of dimension " +
                                                 std::to_string(v.size()));
    double s = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) s += weights_[j] * v[j];
    return s;
}

double apply(const Functional& f, const Vector& v) { return f(v); }

double dual_norm(const Functional& f, NormKind primal) {
    switch (primal) {
        case NormKind::L1: return norm(f.weights(), NormKind::Linf);
        case NormKind::L2: return norm(f.weights(), NormKind::L2);
        case NormKind::Linf: return norm(f.weights(), NormKind::L1);
    }
    return 0.0;
}

VectorSequence::VectorSequence(std::size_t dim, std::vector<double> flat, std::string source)
    : dim_(dim), flat_(std::move(flat)), source_(std::move(source)) {
    if (dim_ == 0) throw Error(Errc::InvalidArgument, "sequence dimension must be >= 1");
    if (flat_.empty()) throw Error(Errc::InvalidArgument, "sequence must be non-empty");
    if (flat_.size() % dim_ != 0)
        throw Error(Errc::DimensionMismatch, "flat data length is not a multiple of dim");
    for (double c : flat_)
        if (!std::isfinite(c))
            throw Error(Errc::InvalidArgument, "sequence entries must be finite");
}

VectorSequence VectorSequence::from_vectors(const std::vector<Vector>& values, std::string source) {
    if (values.empty()) throw Error(Errc::InvalidArgument, "sequence must be non-empty");
    const std::size_t d = values.front().dim();
    std::vector<double> flat;
    flat.reserve(values.size() * d);
    for (const Vector& v : values) {
        if (v.dim() != d)
            throw Error(Errc::DimensionMismatch, "mixed dimensions in sequence");
        flat.insert(flat.end(), v.coords().begin(), v.coords().end());
    }
    return VectorSequence(d, std::move(flat), std::move(source));
}

VectorSequence VectorSequence::from_scalars(std::vector<double> values, std::string source) {
    return VectorSequence(1, std::move(values), std::move(source));
}

Vector VectorSequence::vector_at(std::size_t k) const {
    auto s = at(k);
    return Vector(std::vector<double>(s.begin(), s.end()));
}

} // namespace lacuna
