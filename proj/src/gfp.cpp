#include "tforge/gfp.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <thread>

namespace tforge {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionMismatch: return "dimension_mismatch";
        case ErrorCode::ModulusMismatch: return "modulus_mismatch";
        case ErrorCode::NotPrime: return "not_prime";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::Io: return "io";
        case ErrorCode::MalformedGroup: return "malformed_group";
        case ErrorCode::AxiomViolation: return "axiom_violation";
        case ErrorCode::Unsupported: return "unsupported";
        case ErrorCode::NotInvertible: return "not_invertible";
        case ErrorCode::RankDeficiency: return "rank_deficiency";
        case ErrorCode::NotIdempotent: return "not_idempotent";
        case ErrorCode::NotIdeal: return "not_ideal";
        case ErrorCode::Internal: return "internal";
    }
    return "unknown";
}

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

// Miller-Rabin with the first twelve prime bases is exact below 3.3e24.
bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    static constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto b : bases) {
        if (v % b == 0) return v == b;
    }
    std::uint64_t d = v - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (auto b : bases) {
        std::uint64_t x = powmod64(b, d, v);
        if (x == 1 || x == v - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod64(x, x, v);
            if (x == v - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(0) {
    if (p < 2 || p > 2147483647ULL || !is_prime(p)) {
        throw Error(ErrorCode::NotPrime, "gfp", "modulus " + std::to_string(p) + " is not a prime in [2, 2^31-1]");
    }
    p_ = static_cast<Scalar>(p);
}

Scalar PrimeModulus::pow(Scalar a, std::uint64_t e) const noexcept {
    return static_cast<Scalar>(powmod64(a, e, p_));
}

Scalar PrimeModulus::inv(Scalar a) const {
    if (a % p_ == 0) throw Error(ErrorCode::NotInvertible, "gfp", "zero has no inverse mod " + std::to_string(p_));
    return pow(a, p_ - 2);
}

std::uint64_t PrimeModulus::fold_limit(unsigned bits) const noexcept {
    const std::uint64_t top = bits >= 64 ? std::numeric_limits<std::uint64_t>::max() : (std::uint64_t{1} << bits) - 1;
    const std::uint64_t q = std::uint64_t{p_ - 1} * (p_ - 1);
    if (q == 0) return std::numeric_limits<std::uint64_t>::max();
    if (top < p_) return 0;
    return (top - (p_ - 1)) / q;
}

// ---------------------------------------------------------------- GFMatrix

GFMatrix::GFMatrix(std::size_t rows, std::size_t cols, PrimeModulus p)
    : rows_(rows), cols_(cols), mod_(p), data_(rows * cols, 0) {}

GFMatrix GFMatrix::identity(std::size_t n, PrimeModulus p) {
    GFMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

GFMatrix GFMatrix::ones(std::size_t rows, std::size_t cols, PrimeModulus p) {
    GFMatrix m(rows, cols, p);
    std::fill(m.data_.begin(), m.data_.end(), Scalar{1});
    return m;
}

GFMatrix GFMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, PrimeModulus p) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    GFMatrix m(r, c, p);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw Error(ErrorCode::DimensionMismatch, "gfp", "ragged row list");
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, p.reduce(rows[i][j]));
    }
    return m;
}

bool GFMatrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Scalar v) { return v == 0; });
}

bool GFMatrix::row_is_zero(std::size_t r) const noexcept {
    const Scalar* p = row(r);
    return std::all_of(p, p + cols_, [](Scalar v) { return v == 0; });
}

std::size_t GFMatrix::nonzero_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(data_.begin(), data_.end(), [](Scalar v) { return v != 0; }));
}

GFMatrix& GFMatrix::add_scaled(const GFMatrix& other, Scalar c) {
    if (!(mod_ == other.mod_)) throw Error(ErrorCode::ModulusMismatch, "gfp", "add: moduli differ");
    if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::DimensionMismatch, "gfp", "add: shapes differ");
    c %= mod_.value();
    if (c == 0) return *this;
    const std::uint64_t p = mod_.value();
    for (std::size_t k = 0; k < data_.size(); ++k) {
        if (other.data_[k]) data_[k] = static_cast<Scalar>((data_[k] + std::uint64_t{c} * other.data_[k]) % p);
    }
    return *this;
}

GFMatrix& GFMatrix::scale(Scalar c) {
    for (auto& v : data_) v = mod_.mul(v, c % mod_.value());
    return *this;
}

// ---------------------------------------------------------------- products

unsigned worker_count() {
    if (const char* env = std::getenv("TFORGE_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

namespace {

template <class F>
void for_row_blocks(std::size_t rows, std::size_t work_per_row, F&& body) {
    unsigned threads = worker_count();
    if (threads <= 1 || rows < 2 * threads || rows * work_per_row < (1u << 20)) {
        body(std::size_t{0}, rows);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (rows + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t r0 = t * chunk, r1 = std::min(rows, r0 + chunk);
        if (r0 >= r1) break;
        pool.emplace_back([&body, r0, r1] { body(r0, r1); });
    }
    for (auto& th : pool) th.join();
}

template <class Acc>
void mul_kernel(const GFMatrix& a, const GFMatrix& b, GFMatrix& c, const std::vector<char>& b_nonzero,
                std::uint64_t limit, std::size_t r0, std::size_t r1) {
    const std::size_t inner = a.cols(), cols = b.cols();
    const Acc p = static_cast<Acc>(a.modulus().value());
    std::vector<Acc> acc(cols);
    for (std::size_t i = r0; i < r1; ++i) {
        const Scalar* arow = a.row(i);
        std::fill(acc.begin(), acc.end(), Acc{0});
        std::uint64_t pending = 0;
        bool touched = false;
        for (std::size_t k = 0; k < inner; ++k) {
            const Acc x = arow[k];
            if (x == 0 || !b_nonzero[k]) continue;
            const Scalar* brow = b.row(k);
            for (std::size_t j = 0; j < cols; ++j) acc[j] += x * static_cast<Acc>(brow[j]);
            touched = true;
            if (++pending >= limit) {
                for (auto& v : acc) v %= p;
                pending = 1;
            }
        }
        if (!touched) continue;
        Scalar* crow = c.row(i);
        for (std::size_t j = 0; j < cols; ++j) crow[j] = static_cast<Scalar>(acc[j] % p);
    }
}

void mul_gf2(const GFMatrix& a, const GFMatrix& b, GFMatrix& c, std::size_t r0, std::size_t r1,
             const std::vector<std::uint64_t>& packed, const std::vector<char>& b_nonzero) {
    const std::size_t inner = a.cols(), cols = b.cols(), words = (cols + 63) / 64;
    std::vector<std::uint64_t> acc(words);
    for (std::size_t i = r0; i < r1; ++i) {
        const Scalar* arow = a.row(i);
        std::fill(acc.begin(), acc.end(), 0);
        bool touched = false;
        for (std::size_t k = 0; k < inner; ++k) {
            if (!arow[k] || !b_nonzero[k]) continue;
            const std::uint64_t* src = packed.data() + k * words;
            for (std::size_t w = 0; w < words; ++w) acc[w] ^= src[w];
            touched = true;
        }
        if (!touched) continue;
        Scalar* crow = c.row(i);
        for (std::size_t j = 0; j < cols; ++j) crow[j] = static_cast<Scalar>((acc[j >> 6] >> (j & 63)) & 1U);
    }
}

}  // namespace

GFMatrix mat_mul(const GFMatrix& a, const GFMatrix& b) {
    if (!(a.modulus() == b.modulus())) throw Error(ErrorCode::ModulusMismatch, "gfp", "mat_mul: moduli differ");
    if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "gfp", "mat_mul: inner dimensions differ");
    GFMatrix c(a.rows(), b.cols(), a.modulus());
    std::vector<char> b_nonzero(b.rows());
    for (std::size_t k = 0; k < b.rows(); ++k) b_nonzero[k] = !b.row_is_zero(k);

    if (a.modulus().value() == 2) {
        const std::size_t words = (b.cols() + 63) / 64;
        std::vector<std::uint64_t> packed(b.rows() * words, 0);
        for (std::size_t k = 0; k < b.rows(); ++k) {
            if (!b_nonzero[k]) continue;
            const Scalar* brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (brow[j]) packed[k * words + (j >> 6)] |= std::uint64_t{1} << (j & 63);
            }
        }
        for_row_blocks(a.rows(), a.cols() * words, [&](std::size_t r0, std::size_t r1) {
            mul_gf2(a, b, c, r0, r1, packed, b_nonzero);
        });
        return c;
    }

    const std::uint64_t lim32 = a.modulus().fold_limit(32);
    if (lim32 >= 64) {
        for_row_blocks(a.rows(), a.cols() * b.cols(), [&](std::size_t r0, std::size_t r1) {
            mul_kernel<std::uint32_t>(a, b, c, b_nonzero, lim32, r0, r1);
        });
    } else {
        const std::uint64_t lim64 = a.modulus().fold_limit(64);
        for_row_blocks(a.rows(), a.cols() * b.cols(), [&](std::size_t r0, std::size_t r1) {
            mul_kernel<std::uint64_t>(a, b, c, b_nonzero, lim64, r0, r1);
        });
    }
    return c;
}

GFMatrix transpose(const GFMatrix& a) {
    GFMatrix t(a.cols(), a.rows(), a.modulus());
    constexpr std::size_t tile = 32;
    for (std::size_t i0 = 0; i0 < a.rows(); i0 += tile) {
        for (std::size_t j0 = 0; j0 < a.cols(); j0 += tile) {
            const std::size_t i1 = std::min(a.rows(), i0 + tile), j1 = std::min(a.cols(), j0 + tile);
            for (std::size_t i = i0; i < i1; ++i)
                for (std::size_t j = j0; j < j1; ++j) t.set(j, i, a.at(i, j));
        }
    }
    return t;
}

std::optional<int> nilpotency_index(const GFMatrix& m, int bound) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "gfp", "nilpotency_index: not square");
    if (bound < 1) return std::nullopt;
    if (m.is_zero()) return 1;
    // Squaring phase: find e with m^e != O and either m^{2e} = O or 2e > bound.
    GFMatrix pw = m;
    long e = 1;
    while (2 * e <= bound) {
        GFMatrix sq = mat_mul(pw, pw);
        if (sq.is_zero()) break;
        pw = std::move(sq);
        e *= 2;
    }
    // Linear phase from m^e.
    while (e < bound) {
        pw = mat_mul(pw, m);
        ++e;
        if (pw.is_zero()) return static_cast<int>(e);
    }
    return std::nullopt;
}

void write_matrix(std::ostream& os, const GFMatrix& m) {
    os << m.rows() << ' ' << m.cols() << ' ' << m.modulus().value() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m.at(i, j);
        }
        os << '\n';
    }
}

GFMatrix read_matrix(std::istream& is) {
    std::size_t r = 0, c = 0;
    std::uint64_t p = 0;
    if (!(is >> r >> c >> p)) throw Error(ErrorCode::Parse, "gfp", "matrix header `R C p` expected");
    GFMatrix m(r, c, PrimeModulus(p));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            std::int64_t v;
            if (!(is >> v)) throw Error(ErrorCode::Parse, "gfp", "truncated matrix body");
            if (v < 0 || static_cast<std::uint64_t>(v) >= p)
                throw Error(ErrorCode::Parse, "gfp", "entry " + std::to_string(v) + " is not a residue mod " + std::to_string(p));
            m.set(i, j, static_cast<Scalar>(v));
        }
    }
    return m;
}

// ----------------------------------------------------------- SubspaceBasis

SubspaceBasis::SubspaceBasis(std::size_t ambient_dim, PrimeModulus p) : ambient_(ambient_dim), mod_(p) {
    if (ambient_dim > std::numeric_limits<std::uint32_t>::max())
        throw Error(ErrorCode::DimensionMismatch, "gfp", "subspace: ambient dimension too large");
}

namespace {

std::vector<std::uint32_t> support(const std::vector<Scalar>& r) {
    std::vector<std::uint32_t> out;
    for (std::size_t k = 0; k < r.size(); ++k)
        if (r[k]) out.push_back(static_cast<std::uint32_t>(k));
    return out;
}

}  // namespace

std::span<const Scalar> SubspaceBasis::checked(const GFMatrix& m) const {
    if (!(m.modulus() == mod_)) throw Error(ErrorCode::ModulusMismatch, "gfp", "subspace: moduli differ");
    if (m.rows() * m.cols() != ambient_) throw Error(ErrorCode::DimensionMismatch, "gfp", "subspace: ambient mismatch");
    return m.flat();
}

std::vector<Scalar> SubspaceBasis::residual(std::span<const Scalar> v) const {
    if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "gfp", "subspace: ambient mismatch");
    const Scalar p = mod_.value();
    if (p == 2) {
        std::vector<Scalar> out(v.begin(), v.end());
        for (std::size_t j = 0; j < rows_.size(); ++j) {
            if (!v[pivots_[j]]) continue;
            for (auto k : nz_[j]) out[k] ^= 1;
        }
        return out;
    }
    // In RREF the coefficient of row j is the entry of v at pivot j.
    std::vector<Scalar> out(v.begin(), v.end());
    for (std::size_t j = 0; j < rows_.size(); ++j) {
        const Scalar c = v[pivots_[j]];
        if (!c) continue;
        const std::uint64_t coef = p - c;
        const Scalar* r = rows_[j].data();
        for (auto k : nz_[j]) out[k] = static_cast<Scalar>((out[k] + coef * r[k]) % p);
    }
    return out;
}

bool SubspaceBasis::contains(std::span<const Scalar> v) const {
    auto r = residual(v);
    return std::all_of(r.begin(), r.end(), [](Scalar x) { return x == 0; });
}

std::optional<std::vector<Scalar>> SubspaceBasis::coordinates(std::span<const Scalar> v) const {
    if (!contains(v)) return std::nullopt;
    std::vector<Scalar> c(rows_.size());
    for (std::size_t j = 0; j < rows_.size(); ++j) c[j] = v[pivots_[j]];
    return c;
}

bool SubspaceBasis::extend(std::span<const Scalar> v) {
    std::vector<Scalar> r = residual(v);
    auto it = std::find_if(r.begin(), r.end(), [](Scalar x) { return x != 0; });
    if (it == r.end()) return false;
    const std::size_t piv = static_cast<std::size_t>(it - r.begin());
    const Scalar p = mod_.value();
    const Scalar s = mod_.inv(r[piv]);
    if (s != 1) {
        for (std::size_t k = piv; k < ambient_; ++k) r[k] = mod_.mul(r[k], s);
    }
    auto r_nz = support(r);
    for (std::size_t j = 0; j < rows_.size(); ++j) {
        auto& row = rows_[j];
        const Scalar c = row[piv];
        if (!c) continue;
        const std::uint64_t coef = p - c;
        for (auto k : r_nz) row[k] = static_cast<Scalar>((row[k] + coef * r[k]) % p);
        nz_[j] = support(row);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv);
    const auto idx = pos - pivots_.begin();
    pivots_.insert(pos, piv);
    rows_.insert(rows_.begin() + idx, std::move(r));
    nz_.insert(nz_.begin() + idx, std::move(r_nz));
    return true;
}

GFMatrix SubspaceBasis::row_matrix(std::size_t i, std::size_t rows, std::size_t cols) const {
    if (rows * cols != ambient_) throw Error(ErrorCode::DimensionMismatch, "gfp", "row_matrix: shape mismatch");
    GFMatrix m(rows, cols, mod_);
    std::copy(rows_[i].begin(), rows_[i].end(), m.flat().begin());
    return m;
}

std::pair<SubspaceBasis, bool> rref_extend(SubspaceBasis basis, const GFMatrix& candidate) {
    bool grew = basis.extend(candidate);
    return {std::move(basis), grew};
}

bool contains(const SubspaceBasis& basis, const GFMatrix& m) { return basis.contains(m); }

bool same_subspace(const SubspaceBasis& a, const SubspaceBasis& b) { return a.same_span(b); }

}  // namespace tforge
