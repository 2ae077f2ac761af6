#ifndef MOOREL_HOMOTOPY_HPP
#define MOOREL_HOMOTOPY_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "moorel/numutil.hpp"
#include "moorel/rational.hpp"

namespace moorel {

/// The (2p-2)-periodic pattern of the KU-local mod-p Moore spectrum's stable
/// homotopy: one alpha-family class in degree 2p-3 and the v1-periodicity
/// generator in degree 2p-2.
struct HomotopyPattern {
    std::uint64_t p;
    std::uint64_t period;         // 2p - 2
    std::uint64_t alpha1_degree;  // 2p - 3
    std::uint64_t v1_degree;      // 2p - 2
};

inline HomotopyPattern homotopy_pattern(std::uint64_t p) {
    if (!is_odd_prime(p)) throw std::invalid_argument("homotopy_pattern: p must be an odd prime");
    return {p, 2 * p - 2, 2 * p - 3, 2 * p - 2};
}

/// Order of the n-th KU-local stable homotopy group of the mod-p Moore
/// spectrum: p when n is congruent to 0 or -1 mod 2p-2, else 1. Defined for
/// every integer n (the pattern is fully periodic).
inline std::uint64_t homotopy_order(std::uint64_t p, long long n) {
    if (!is_odd_prime(p)) throw std::invalid_argument("homotopy_order: p must be an odd prime");
    const long long period = static_cast<long long>(2 * p - 2);
    long long r = n % period;
    if (r < 0) r += period;
    return (r == 0 || r == period - 1) ? p : 1;
}

/// Overload for degrees too large for built-in integers (e.g. 2(p-1)p^j - 1).
inline std::uint64_t homotopy_order(std::uint64_t p, const Int& n) {
    if (!is_odd_prime(p)) throw std::invalid_argument("homotopy_order: p must be an odd prime");
    const Int period(2 * p - 2);
    Int r = n % period;
    if (r < 0) r += period;
    return (r == 0 || r == period - 1) ? p : 1;
}

/// Checks v1-periodicity through `steps` full periods from degree n.
inline bool periodicity_witness(std::uint64_t p, long long n, unsigned steps) {
    if (steps < 1) throw std::invalid_argument("periodicity_witness: steps must be positive");
    const std::uint64_t base = homotopy_order(p, n);
    const long long period = static_cast<long long>(2 * p - 2);
    for (unsigned k = 1; k <= steps; ++k)
        if (homotopy_order(p, n + static_cast<long long>(k) * period) != base) return false;
    return true;
}

/// Orders of the homotopy groups in degrees 2(p-1)p^j - 1 for j = 0..j_max.
/// Each is finite and equal to p; constancy of this sequence is the homotopy
/// side of the Leopoldt-style statement, so it is asserted here.
inline std::vector<std::uint64_t> leopoldt_sequence(std::uint64_t p, unsigned j_max) {
    std::vector<std::uint64_t> orders;
    orders.reserve(j_max + 1);
    Int degree = Int(2 * (p - 1)) - 1;  // j = 0
    for (unsigned j = 0; j <= j_max; ++j) {
        const std::uint64_t o = homotopy_order(p, degree);
        if (o != p) throw std::logic_error("leopoldt_sequence: order pattern violated");
        orders.push_back(o);
        degree = (degree + 1) * Int(p) - 1;
    }
    return orders;
}

}  // namespace moorel

#endif  // MOOREL_HOMOTOPY_HPP
