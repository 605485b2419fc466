#ifndef LACUNA_CORE_HPP
#define LACUNA_CORE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lacuna/error.hpp"

namespace lacuna {

enum class NormKind { L1, L2, Linf };

const char* norm_name(NormKind k);
NormKind parse_norm(const std::string& name);

/// Finite-dimensional real vector. All coordinates are validated finite at
/// construction; every operation downstream may assume that.
class Vector {
public:
    explicit Vector(std::vector<double> coords);
    Vector(std::initializer_list<double> coords);

    std::size_t dim() const noexcept { return coords_.size(); }
    double operator[](std::size_t j) const { return coords_[j]; }
    const std::vector<double>& coords() const noexcept { return coords_; }
    std::span<const double> span() const noexcept { return coords_; }

    bool operator==(const Vector& other) const = default;

private:
    std::vector<double> coords_;
};

/// norm of a raw coordinate slice (the workhorse; sequences store flat data)
double norm(std::span<const double> v, NormKind kind);
double norm(const Vector& v, NormKind kind) ;

/// ||x - y|| without materializing the difference
double norm_diff(std::span<const double> x, std::span<const double> y, NormKind kind);

/// Bounded linear functional f(x) = sum_j w_j x_j, represented by its weights.
class Functional {
public:
    explicit Functional(Vector weights) : weights_(std::move(weights)) {}

    std::size_t dim() const noexcept { return weights_.dim(); }
    const Vector& weights() const noexcept { return weights_; }

    double operator()(std::span<const double> v) const;
    double operator()(const Vector& v) const { return (*this)(v.span()); }

private:
    Vector weights_;
};

double apply(const Functional& f, const Vector& v);

/// Norm of f on the dual side of the pairing: l1<->linf, l2<->l2, linf<->l1.
double dual_norm(const Functional& f, NormKind primal);

/// A finite prefix of a sequence (x_k) in R^d, 1-indexed: at(1) is x_1.
/// Data is stored flat (row-major) so million-term scalar sequences stay cheap.
class VectorSequence {
public:
    VectorSequence(std::size_t dim, std::vector<double> flat, std::string source = "");

    static VectorSequence from_vectors(const std::vector<Vector>& values, std::string source = "");
    static VectorSequence from_scalars(std::vector<double> values, std::string source = "");

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return flat_.size() / dim_; }
    const std::string& source() const noexcept { return source_; }

    /// k is 1-based; k=0 is never a sequence index
    std::span<const double> at(std::size_t k) const {
        return {flat_.data() + (k - 1) * dim_, dim_};
    }
    Vector vector_at(std::size_t k) const;

    const std::vector<double>& flat() const noexcept { return flat_; }

private:
    std::size_t dim_;
    std::vector<double> flat_;
    std::string source_;
};

} // namespace lacuna

#endif
