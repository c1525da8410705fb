#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "qmclab/algebra/rational.hpp"

namespace qmclab {

enum class DiscKind { star, extreme };

/// exact: exact rational for exactly represented points.
/// exact_represented: exact for the stored (fixed-point) points.
/// bracketed: the true value lies in [lo, hi].
enum class CertMode { exact, exact_represented, bracketed };

inline std::string to_string(DiscKind k) { return k == DiscKind::star ? "star" : "extreme"; }

inline std::string to_string(CertMode m) {
    switch (m) {
    case CertMode::exact: return "exact";
    case CertMode::exact_represented: return "exact-for-represented-points";
    case CertMode::bracketed: return "bracketed";
    }
    return "?";
}

struct DiscrepancyResult {
    DiscKind kind = DiscKind::star;
    CertMode mode = CertMode::exact;
    std::size_t N = 0;
    std::size_t d = 0;
    BigRational lo;
    BigRational hi;
    unsigned resolution = 0;  // grid resolution k when bracketed

    bool is_bracketed() const { return mode == CertMode::bracketed; }
    /// Exact value, or the midpoint of the bracket.
    BigRational value() const { return is_bracketed() ? BigRational((lo + hi) / 2) : lo; }
    BigRational half_width() const { return BigRational((hi - lo) / 2); }
};

inline nlohmann::ordered_json to_json(const DiscrepancyResult& r, std::optional<unsigned> decimal_digits = {}) {
    auto fmt = [&](const BigRational& x) { return decimal_digits ? to_decimal(x, *decimal_digits) : to_string(x); };
    nlohmann::ordered_json j;
    j["kind"] = to_string(r.kind);
    j["mode"] = to_string(r.mode);
    j["N"] = r.N;
    j["d"] = r.d;
    if (r.is_bracketed()) {
        j["value"] = nlohmann::ordered_json::array({fmt(r.lo), fmt(r.hi)});
        j["resolution"] = r.resolution;
    } else {
        j["value"] = fmt(r.lo);
        j["resolution"] = nullptr;
    }
    return j;
}

} // namespace qmclab
