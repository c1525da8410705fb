#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmclab/algebra/fq.hpp"
#include "qmclab/errors.hpp"

namespace qmclab {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Pure hash of (seed, row, col, salt) used by the random matrix samplers.
inline std::uint64_t entry_hash(std::uint64_t seed, std::uint64_t row, std::uint64_t col, std::uint64_t salt) {
    return splitmix64(splitmix64(splitmix64(seed ^ salt) + row) + col);
}

} // namespace detail

/// Infinite generating matrix over Z_q given by a pure row generator.
///
/// Rows and columns are 1-based. row(i, m) returns the first m entries of row i.
class GenMatrix {
public:
    using RowFn = std::function<std::vector<std::uint32_t>(std::size_t row, std::size_t depth)>;
    using LastNonzeroFn = std::function<std::size_t(std::size_t row)>;

    GenMatrix(std::uint32_t q, RowFn rows, std::string name, LastNonzeroFn last_nonzero = {})
        : q_(q),
          rows_(std::make_shared<const RowFn>(std::move(rows))),
          last_nonzero_(last_nonzero ? std::make_shared<const LastNonzeroFn>(std::move(last_nonzero)) : nullptr),
          name_(std::move(name)) {
        validate_prime_modulus(q);
    }

    static GenMatrix identity(std::uint32_t q) {
        return GenMatrix(
            q,
            [](std::size_t i, std::size_t m) {
                std::vector<std::uint32_t> r(m, 0);
                if (i <= m) r[i - 1] = 1;
                return r;
            },
            "identity", [](std::size_t i) { return i; });
    }

    /// First row all ones, every other row i has its single 1 on the diagonal.
    /// Not finite-row: row 1 never ends.
    static GenMatrix first_row_ones(std::uint32_t q) {
        return GenMatrix(
            q,
            [](std::size_t i, std::size_t m) {
                std::vector<std::uint32_t> r(m, 0);
                if (i == 1) {
                    std::fill(r.begin(), r.end(), 1u);
                } else if (i <= m) {
                    r[i - 1] = 1;
                }
                return r;
            },
            "first-row-ones");
    }

    /// I.i.d. uniform entries in rows and columns 1..depth_cap, zero elsewhere.
    static GenMatrix random_uniform(std::uint32_t q, std::uint64_t seed, std::size_t depth_cap) {
        validate_prime_modulus(q);
        return GenMatrix(
            q,
            [q, seed, depth_cap](std::size_t i, std::size_t m) {
                std::vector<std::uint32_t> r(m, 0);
                if (i > depth_cap) return r;
                for (std::size_t k = 1; k <= std::min(m, depth_cap); ++k)
                    r[k - 1] = static_cast<std::uint32_t>(detail::entry_hash(seed, i, k, 0x52414e44) % q);
                return r;
            },
            "random:" + std::to_string(seed) + ":" + std::to_string(depth_cap),
            [depth_cap](std::size_t i) { return i > depth_cap ? std::size_t{0} : depth_cap; });
    }

    /// Finite-row sampler: row i is supported on columns 1..i+G_i with
    /// G_i geometric with continuation probability rho = cont_num/cont_den
    /// (P(G = g) = (1-rho) rho^g), uniform entries in between, and nonzero
    /// entries on the diagonal and at column i+G_i.
    static GenMatrix random_finite_row(std::uint32_t q, std::uint64_t seed, std::uint32_t cont_num,
                                       std::uint32_t cont_den) {
        validate_prime_modulus(q);
        detail::require(cont_den > 0 && cont_num < cont_den, "continuation probability must lie in [0, 1)");
        auto length = [seed, cont_num, cont_den](std::size_t i) {
            std::size_t extra = 0;
            while (detail::entry_hash(seed, i, extra, 0x47454f4d) % cont_den < cont_num) ++extra;
            return i + extra;
        };
        return GenMatrix(
            q,
            [q, seed, length](std::size_t i, std::size_t m) {
                std::vector<std::uint32_t> r(m, 0);
                const std::size_t len = length(i);
                for (std::size_t k = 1; k <= std::min(m, len); ++k) {
                    const auto h = detail::entry_hash(seed, i, k, 0x46524f57);
                    r[k - 1] = (k == i || k == len) ? static_cast<std::uint32_t>(1 + h % (q - 1)) : static_cast<std::uint32_t>(h % q);
                }
                return r;
            },
            "finite-row:" + std::to_string(seed) + ":" + std::to_string(cont_num) + "/" + std::to_string(cont_den),
            length);
    }

    /// Explicit finite block; entries outside it are zero.
    static GenMatrix from_rows(std::uint32_t q, std::vector<std::vector<std::uint32_t>> block, std::string name) {
        validate_prime_modulus(q);
        for (const auto& row : block)
            for (auto v : row) detail::require(v < q, "matrix entry out of range");
        auto shared = std::make_shared<const std::vector<std::vector<std::uint32_t>>>(std::move(block));
        return GenMatrix(
            q,
            [shared](std::size_t i, std::size_t m) {
                std::vector<std::uint32_t> r(m, 0);
                if (i <= shared->size()) {
                    const auto& src = (*shared)[i - 1];
                    for (std::size_t k = 0; k < std::min(m, src.size()); ++k) r[k] = src[k];
                }
                return r;
            },
            std::move(name),
            [shared](std::size_t i) {
                if (i > shared->size()) return std::size_t{0};
                const auto& src = (*shared)[i - 1];
                std::size_t last = 0;
                for (std::size_t k = 0; k < src.size(); ++k)
                    if (src[k]) last = k + 1;
                return last;
            });
    }

    std::uint32_t modulus() const { return q_; }
    const std::string& name() const { return name_; }
    bool finite_rows() const { return last_nonzero_ != nullptr; }

    std::vector<std::uint32_t> row(std::size_t i, std::size_t depth) const {
        detail::require(i >= 1, "matrix rows are 1-based");
        return (*rows_)(i, depth);
    }

    /// Column index of the last nonzero entry of row i (0 for an all-zero row);
    /// empty when the matrix is not finite-row.
    std::optional<std::size_t> last_nonzero(std::size_t i) const {
        if (!last_nonzero_) return std::nullopt;
        return (*last_nonzero_)(i);
    }

private:
    std::uint32_t q_;
    std::shared_ptr<const RowFn> rows_;
    std::shared_ptr<const LastNonzeroFn> last_nonzero_;
    std::string name_;
};

/// First `depth` coordinates of C * digits over Z_q.
inline std::vector<std::uint32_t> mat_vec_mod_q(const GenMatrix& C, std::span<const std::uint32_t> digits,
                                                std::size_t depth) {
    detail::require(depth >= 1, "depth must be positive");
    const std::uint64_t q = C.modulus();
    std::size_t used = 0;
    for (std::size_t k = 0; k < digits.size(); ++k) {
        detail::require(digits[k] < q, "digit " + std::to_string(digits[k]) + " out of range for Z_" + std::to_string(q));
        if (digits[k]) used = k + 1;
    }
    std::vector<std::uint32_t> out(depth, 0);
    if (used == 0) return out;
    for (std::size_t i = 1; i <= depth; ++i) {
        const auto r = C.row(i, used);
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < used; ++k) acc = (acc + std::uint64_t{r[k]} * digits[k]) % q;
        out[i - 1] = static_cast<std::uint32_t>(acc);
    }
    return out;
}

} // namespace qmclab
