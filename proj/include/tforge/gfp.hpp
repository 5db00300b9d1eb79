#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tforge/error.hpp"

namespace tforge {

using Scalar = std::uint32_t;

bool is_prime(std::uint64_t v);

/// A prime p with 2 <= p <= 2^31 - 1.
class PrimeModulus {
public:
    explicit PrimeModulus(std::uint64_t p);

    Scalar value() const noexcept { return p_; }

    Scalar reduce(std::int64_t v) const noexcept {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<Scalar>(r < 0 ? r + p_ : r);
    }
    Scalar add(Scalar a, Scalar b) const noexcept {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<Scalar>(s >= p_ ? s - p_ : s);
    }
    Scalar sub(Scalar a, Scalar b) const noexcept { return a >= b ? a - b : a + (p_ - b); }
    Scalar neg(Scalar a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Scalar mul(Scalar a, Scalar b) const noexcept {
        return static_cast<Scalar>(std::uint64_t{a} * b % p_);
    }
    Scalar pow(Scalar a, std::uint64_t e) const noexcept;
    /// Throws NotInvertible on zero.
    Scalar inv(Scalar a) const;

    /// Number of products (p-1)^2 that fit in an accumulator of the given width.
    std::uint64_t fold_limit(unsigned bits) const noexcept;

    bool operator==(const PrimeModulus& o) const noexcept { return p_ == o.p_; }

private:
    Scalar p_;
};

/// Dense row-major matrix over GF(p).
class GFMatrix {
public:
    GFMatrix(std::size_t rows, std::size_t cols, PrimeModulus p);

    static GFMatrix identity(std::size_t n, PrimeModulus p);
    static GFMatrix ones(std::size_t rows, std::size_t cols, PrimeModulus p);
    static GFMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, PrimeModulus p);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const PrimeModulus& modulus() const noexcept { return mod_; }

    Scalar at(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Scalar v) noexcept { data_[r * cols_ + c] = v; }
    Scalar* row(std::size_t r) noexcept { return data_.data() + r * cols_; }
    const Scalar* row(std::size_t r) const noexcept { return data_.data() + r * cols_; }
    std::span<const Scalar> flat() const noexcept { return data_; }
    std::span<Scalar> flat() noexcept { return data_; }

    bool is_zero() const noexcept;
    bool row_is_zero(std::size_t r) const noexcept;
    std::size_t nonzero_count() const noexcept;

    /// this += c * other
    GFMatrix& add_scaled(const GFMatrix& other, Scalar c);
    GFMatrix& scale(Scalar c);

    GFMatrix& operator+=(const GFMatrix& o) { return add_scaled(o, 1); }
    GFMatrix& operator-=(const GFMatrix& o) { return add_scaled(o, mod_.neg(1)); }
    friend GFMatrix operator+(GFMatrix a, const GFMatrix& b) { return a += b; }
    friend GFMatrix operator-(GFMatrix a, const GFMatrix& b) { return a -= b; }

    bool operator==(const GFMatrix& o) const noexcept {
        return rows_ == o.rows_ && cols_ == o.cols_ && mod_ == o.mod_ && data_ == o.data_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    PrimeModulus mod_;
    std::vector<Scalar> data_;
};

GFMatrix mat_mul(const GFMatrix& a, const GFMatrix& b);
GFMatrix transpose(const GFMatrix& a);

/// Least k <= bound with m^k = O, or nullopt.
std::optional<int> nilpotency_index(const GFMatrix& m, int bound);

void write_matrix(std::ostream& os, const GFMatrix& m);
GFMatrix read_matrix(std::istream& is);

/// Canonical RREF basis of a subspace of GF(p)^ambient.
///
/// Rows are kept sorted by pivot; pivot entries are 1 and every other row is
/// zero in each pivot column, so the basis of a given span is unique.
class SubspaceBasis {
public:
    SubspaceBasis(std::size_t ambient_dim, PrimeModulus p);

    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    const PrimeModulus& modulus() const noexcept { return mod_; }
    std::span<const Scalar> row(std::size_t i) const noexcept { return rows_[i]; }
    const std::vector<std::size_t>& pivot_cols() const noexcept { return pivots_; }

    /// Adds v to the span. Returns true iff the rank grew.
    bool extend(std::span<const Scalar> v);
    bool extend(const GFMatrix& m) { return extend(checked(m)); }

    bool contains(std::span<const Scalar> v) const;
    bool contains(const GFMatrix& m) const { return contains(checked(m)); }

    /// v minus its projection along the basis; zero iff v is in the span.
    std::vector<Scalar> residual(std::span<const Scalar> v) const;

    /// Coordinates of v in the RREF rows, if v lies in the span.
    std::optional<std::vector<Scalar>> coordinates(std::span<const Scalar> v) const;

    /// Row i reshaped as a rows x cols matrix (rows * cols must equal ambient).
    GFMatrix row_matrix(std::size_t i, std::size_t rows, std::size_t cols) const;

    bool same_span(const SubspaceBasis& o) const noexcept {
        return ambient_ == o.ambient_ && mod_ == o.mod_ && rows_ == o.rows_;
    }

private:
    std::span<const Scalar> checked(const GFMatrix& m) const;

    std::size_t ambient_;
    PrimeModulus mod_;
    std::vector<std::vector<Scalar>> rows_;
    std::vector<std::size_t> pivots_;
    // nonzero columns of each row; rows of structured algebras are sparse
    std::vector<std::vector<std::uint32_t>> nz_;
};

std::pair<SubspaceBasis, bool> rref_extend(SubspaceBasis basis, const GFMatrix& candidate);
bool contains(const SubspaceBasis& basis, const GFMatrix& m);

/// Rank of span(a) + span(b) equals both ranks.
bool same_subspace(const SubspaceBasis& a, const SubspaceBasis& b);

/// Worker count: TFORGE_THREADS if set, else hardware concurrency.
unsigned worker_count();

}  // namespace tforge
