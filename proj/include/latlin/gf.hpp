#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "latlin/errors.hpp"

// Prime-field linear algebra over GF(p), p <= 97. This is the reference
// arithmetic for the module-lattice generators and for cross-checking the
// lattice computations; nothing in here knows about lattices.

namespace latlin::gf {

inline constexpr unsigned kMaxPrime = 97;

inline bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline void require_field(unsigned p) {
    if (!is_prime(p) || p > kMaxPrime) throw NotAField(p, kMaxPrime);
}

inline unsigned inverse_mod(unsigned a, unsigned p) {
    // Extended Euclid; a != 0 mod p.
    int t = 0, new_t = 1, r = static_cast<int>(p), new_r = static_cast<int>(a % p);
    while (new_r != 0) {
        int q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += static_cast<int>(p);
    return static_cast<unsigned>(t);
}

using Vec = std::vector<std::uint8_t>;  // one residue per coordinate

/// Reduced row echelon form of the given rows, zero rows dropped. The
/// result is the canonical representation of their row space.
inline std::vector<Vec> rref(std::vector<Vec> rows, unsigned p) {
    const std::size_t n = rows.empty() ? 0 : rows[0].size();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < n && pivot_row < rows.size(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[pivot_row], rows[sel]);
        unsigned inv = inverse_mod(rows[pivot_row][col], p);
        for (auto& v : rows[pivot_row]) v = static_cast<std::uint8_t>(v * inv % p);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row || rows[r][col] == 0) continue;
            unsigned c = rows[r][col];
            for (std::size_t j = 0; j < n; ++j)
                rows[r][j] = static_cast<std::uint8_t>(
                    (rows[r][j] + (p - c) * rows[pivot_row][j]) % p);
        }
        ++pivot_row;
    }
    rows.resize(pivot_row);
    return rows;
}

/// Canonical basis of {x : M x = 0} (rows of M are the constraints).
inline std::vector<Vec> null_space(const std::vector<Vec>& m, unsigned p, std::size_t n) {
    std::vector<Vec> r = rref(m, p);
    std::vector<int> pivot_of_col(n, -1);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::size_t col = 0;
        while (r[i][col] == 0) ++col;
        pivot_of_col[col] = static_cast<int>(i);
    }
    std::vector<Vec> basis;
    for (std::size_t free_col = 0; free_col < n; ++free_col) {
        if (pivot_of_col[free_col] >= 0) continue;
        Vec v(n, 0);
        v[free_col] = 1;
        for (std::size_t col = 0; col < n; ++col)
            if (pivot_of_col[col] >= 0)
                v[col] = static_cast<std::uint8_t>(
                    (p - r[pivot_of_col[col]][free_col] % p) % p);
        basis.push_back(std::move(v));
    }
    return rref(std::move(basis), p);
}

/// A matrix over GF(p), row-major.
class GFMatrix {
public:
    GFMatrix(unsigned p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {
        require_field(p);
    }

    /// Entries are reduced mod p (negatives allowed).
    static GFMatrix from_entries(unsigned p, std::size_t rows, std::size_t cols,
                                 const std::vector<long long>& row_major) {
        GFMatrix m(p, rows, cols);
        if (row_major.size() != rows * cols)
            throw DimensionMismatch("entry count does not match matrix shape");
        for (std::size_t i = 0; i < row_major.size(); ++i) {
            long long v = row_major[i] % static_cast<long long>(p);
            if (v < 0) v += p;
            m.a_[i] = static_cast<std::uint8_t>(v);
        }
        return m;
    }

    static GFMatrix identity(unsigned p, std::size_t n) {
        GFMatrix m(p, n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    unsigned p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::uint8_t v) { a_[r * cols_ + c] = v % p_; }

    GFMatrix operator*(const GFMatrix& rhs) const {
        if (p_ != rhs.p_ || cols_ != rhs.rows_)
            throw DimensionMismatch("matrix shapes do not compose");
        GFMatrix out(p_, rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                unsigned aik = at(i, k);
                if (!aik) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j)
                    out.a_[i * rhs.cols_ + j] = static_cast<std::uint8_t>(
                        (out.a_[i * rhs.cols_ + j] + aik * rhs.at(k, j)) % p_);
            }
        return out;
    }

    /// k-th power of a square matrix; pow(0) is the identity.
    GFMatrix pow(std::size_t k) const {
        if (rows_ != cols_) throw DimensionMismatch("only square matrices have powers");
        GFMatrix acc = identity(p_, rows_);
        for (std::size_t i = 0; i < k; ++i) acc = *this * acc;
        return acc;
    }

    Vec apply(const Vec& x) const {
        if (x.size() != cols_) throw DimensionMismatch("vector length does not match columns");
        Vec y(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i) {
            unsigned s = 0;
            for (std::size_t j = 0; j < cols_; ++j) s += at(i, j) * x[j];
            y[i] = static_cast<std::uint8_t>(s % p_);
        }
        return y;
    }

    std::size_t rank() const {
        std::vector<Vec> rows(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            rows[i] = Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
        return rref(std::move(rows), p_).size();
    }

    bool operator==(const GFMatrix&) const = default;

private:
    unsigned p_;
    std::size_t rows_, cols_;
    std::vector<std::uint8_t> a_;
};

/// A subspace of GF(p)^n held in reduced row echelon form, so structural
/// equality is subspace equality.
class Subspace {
public:
    static Subspace zero(unsigned p, std::size_t n) { return Subspace(p, n, {}); }

    static Subspace full(unsigned p, std::size_t n) {
        std::vector<Vec> rows(n, Vec(n, 0));
        for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
        return Subspace(p, n, std::move(rows));
    }

    static Subspace span(unsigned p, std::size_t n, std::vector<Vec> generators) {
        for (const Vec& g : generators)
            if (g.size() != n) throw DimensionMismatch("generator length differs from ambient");
        return Subspace(p, n, rref(std::move(generators), p));
    }

    unsigned p() const { return p_; }
    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Vec>& basis() const { return basis_; }

    bool contains_vector(const Vec& v) const {
        Vec w = v;
        for (const Vec& b : basis_) {
            std::size_t lead = 0;
            while (b[lead] == 0) ++lead;
            if (w[lead] == 0) continue;
            unsigned c = w[lead];
            for (std::size_t j = 0; j < n_; ++j)
                w[j] = static_cast<std::uint8_t>((w[j] + (p_ - c) * b[j]) % p_);
        }
        return std::all_of(w.begin(), w.end(), [](std::uint8_t x) { return x == 0; });
    }

    /// other <= this as subspaces.
    bool contains(const Subspace& other) const {
        for (const Vec& b : other.basis_)
            if (!contains_vector(b)) return false;
        return true;
    }

    /// "0" for the zero space, otherwise basis rows as digit strings, e.g.
    /// "<110,011>" (entries dot-separated when p > 9).
    std::string label() const {
        if (basis_.empty()) return "0";
        std::string s = "<";
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (i) s += ",";
            for (std::size_t j = 0; j < n_; ++j) {
                if (j && p_ > 9) s += ".";
                s += std::to_string(basis_[i][j]);
            }
        }
        return s + ">";
    }

    bool operator==(const Subspace&) const = default;

private:
    Subspace(unsigned p, std::size_t n, std::vector<Vec> rref_basis)
        : p_(p), n_(n), basis_(std::move(rref_basis)) {
        require_field(p);
    }

    unsigned p_;
    std::size_t n_;
    std::vector<Vec> basis_;

    friend Subspace subspace_sum(const Subspace&, const Subspace&);
};

inline void require_same_space(const Subspace& a, const Subspace& b) {
    if (a.p() != b.p() || a.ambient() != b.ambient())
        throw DimensionMismatch("subspaces live in different ambient spaces");
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    require_same_space(a, b);
    std::vector<Vec> rows = a.basis();
    rows.insert(rows.end(), b.basis().begin(), b.basis().end());
    return Subspace(a.p(), a.ambient(), rref(std::move(rows), a.p()));
}

/// Annihilator-based intersection: x is in both spaces iff it satisfies the
/// linear constraints of each, so intersect = null space of the stacked
/// constraint rows.
inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
    require_same_space(a, b);
    const unsigned p = a.p();
    const std::size_t n = a.ambient();
    std::vector<Vec> constraints = null_space(a.basis(), p, n);
    std::vector<Vec> cb = null_space(b.basis(), p, n);
    constraints.insert(constraints.end(), cb.begin(), cb.end());
    return Subspace::span(p, n, null_space(constraints, p, n));
}

/// {A x : x in S}.
inline Subspace matrix_image(const GFMatrix& a, const Subspace& s) {
    if (a.p() != s.p() || a.cols() != s.ambient())
        throw DimensionMismatch("matrix does not act on this space");
    std::vector<Vec> rows;
    rows.reserve(s.dim());
    for (const Vec& b : s.basis()) rows.push_back(a.apply(b));
    return Subspace::span(a.p(), a.rows(), std::move(rows));
}

/// {x : A x = 0}.
inline Subspace matrix_kernel(const GFMatrix& a) {
    std::vector<Vec> rows(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        rows[i].resize(a.cols());
        for (std::size_t j = 0; j < a.cols(); ++j) rows[i][j] = a.at(i, j);
    }
    return Subspace::span(a.p(), a.cols(), null_space(rows, a.p(), a.cols()));
}

/// Column space of A, computed from the transpose rows.
inline Subspace matrix_column_space(const GFMatrix& a) {
    std::vector<Vec> cols(a.cols(), Vec(a.rows(), 0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) cols[j][i] = a.at(i, j);
    return Subspace::span(a.p(), a.rows(), std::move(cols));
}

/// {x : A x in S}: the constraints of S pulled back along A.
inline Subspace matrix_preimage(const GFMatrix& a, const Subspace& s) {
    if (a.p() != s.p() || a.rows() != s.ambient())
        throw DimensionMismatch("matrix does not map into this space");
    const unsigned p = a.p();
    std::vector<Vec> ann = null_space(s.basis(), p, s.ambient());
    std::vector<Vec> pulled;
    pulled.reserve(ann.size());
    for (const Vec& f : ann) {
        Vec row(a.cols(), 0);
        for (std::size_t j = 0; j < a.cols(); ++j) {
            unsigned acc = 0;
            for (std::size_t i = 0; i < a.rows(); ++i) acc += f[i] * a.at(i, j);
            row[j] = static_cast<std::uint8_t>(acc % p);
        }
        pulled.push_back(std::move(row));
    }
    return Subspace::span(p, a.cols(), null_space(pulled, p, a.cols()));
}

/// Number of subspaces of GF(p)^n: the sum over r of the Gaussian binomial
/// [n choose r]_p, computed exactly by the Pascal-style recurrence
/// [m r] = [m-1 r-1] + p^r [m-1 r], saturating at 2^62.
inline std::uint64_t count_subspaces(unsigned p, std::size_t n) {
    require_field(p);
    const std::uint64_t kSat = std::uint64_t{1} << 62;
    auto sat_add = [&](std::uint64_t a, std::uint64_t b) {
        return (a >= kSat || b >= kSat - a) ? kSat : a + b;
    };
    auto sat_mul = [&](std::uint64_t a, std::uint64_t b) {
        if (a == 0 || b == 0) return std::uint64_t{0};
        return (a >= kSat || b >= kSat || a > kSat / b) ? kSat : a * b;
    };
    std::vector<std::uint64_t> g(n + 1, 0);
    g[0] = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        std::vector<std::uint64_t> next(n + 1, 0);
        next[0] = 1;
        std::uint64_t pr = 1;
        for (std::size_t r = 1; r <= m; ++r) {
            pr = sat_mul(pr, p);
            next[r] = sat_add(g[r - 1], sat_mul(pr, g[r]));
        }
        g = std::move(next);
    }
    std::uint64_t total = 0;
    for (std::uint64_t v : g) total = sat_add(total, v);
    return total;
}

/// Every subspace of GF(p)^n exactly once, enumerated through echelon
/// bases: ascending rank, then pivot-column sets in lexicographic order,
/// then free entries counted lexicographically. The zero space comes first
/// and the full space last, so list position is a linear extension of
/// inclusion. Raises TooLarge when the count exceeds `cap`.
inline std::vector<Subspace> enumerate_subspaces(unsigned p, std::size_t n,
                                                 std::size_t cap = 1000) {
    require_field(p);
    std::uint64_t count = count_subspaces(p, n);
    if (count > cap) throw TooLarge(static_cast<std::size_t>(std::min<std::uint64_t>(
                                        count, SIZE_MAX)),
                                    cap);
    std::vector<Subspace> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::size_t r = 0; r <= n; ++r) {
        // Lexicographic r-subsets of columns as pivots.
        std::vector<std::size_t> piv(r);
        for (std::size_t i = 0; i < r; ++i) piv[i] = i;
        while (true) {
            // Free cells: (row i, col c) with c > piv[i] and c not a pivot.
            std::vector<char> is_piv(n, 0);
            for (std::size_t c : piv) is_piv[c] = 1;
            std::vector<std::pair<std::size_t, std::size_t>> free_cells;
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t c = piv[i] + 1; c < n; ++c)
                    if (!is_piv[c]) free_cells.emplace_back(i, c);

            std::vector<std::uint8_t> digits(free_cells.size(), 0);
            while (true) {
                std::vector<Vec> rows(r, Vec(n, 0));
                for (std::size_t i = 0; i < r; ++i) rows[i][piv[i]] = 1;
                for (std::size_t d = 0; d < free_cells.size(); ++d)
                    rows[free_cells[d].first][free_cells[d].second] = digits[d];
                out.push_back(Subspace::span(p, n, std::move(rows)));
                // Counter over the free entries, last cell fastest.
                bool carried_out = true;
                std::size_t d = digits.size();
                while (d-- > 0) {
                    if (++digits[d] < p) {
                        carried_out = false;
                        break;
                    }
                    digits[d] = 0;
                }
                if (carried_out) break;
            }

            if (r == 0) break;
            bool advanced = false;
            std::size_t i = r;
            while (i-- > 0) {
                if (piv[i] != i + n - r) {
                    ++piv[i];
                    for (std::size_t l = i + 1; l < r; ++l) piv[l] = piv[l - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
    }
    return out;
}

}  // namespace latlin::gf
