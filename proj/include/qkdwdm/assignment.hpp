#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "qkdwdm/context.hpp"
#include "qkdwdm/errors.hpp"

namespace qkdwdm {

/// The optimization variable: channel indices of the forward/backward
/// classical sets and the two quantum sets. Kept sorted ascending.
///
/// Full-duplex: U1 holds all quantum channels and U2 is empty; A and B share
/// the fiber with U1. Dual-fiber: fiber 1 carries A and U1, fiber 2 carries
/// B and U2, and sets on different fibers may overlap.
struct Assignment {
    std::vector<int> classical_a;
    std::vector<int> classical_b;
    std::vector<int> quantum_u1;
    std::vector<int> quantum_u2;

    int quantum_count() const {
        return static_cast<int>(quantum_u1.size() + quantum_u2.size());
    }

    /// Grid index of the m-th quantum channel, counting U1 then U2.
    int quantum_index(int ordinal) const {
        const int k = static_cast<int>(quantum_u1.size());
        return ordinal < k ? quantum_u1[static_cast<std::size_t>(ordinal)]
                           : quantum_u2[static_cast<std::size_t>(ordinal - k)];
    }

    bool on_forward_fiber(int ordinal) const {
        return ordinal < static_cast<int>(quantum_u1.size());
    }
};

namespace detail {

inline bool sorted_unique(const std::vector<int>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] > v[i - 1])) return false;
    }
    return true;
}

inline bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> tmp;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(tmp));
    return tmp.empty();
}

inline bool in_range(const std::vector<int>& v, int dim) {
    return std::all_of(v.begin(), v.end(), [dim](int x) { return x >= 0 && x < dim; });
}

}  // namespace detail

inline void validate_assignment(const Assignment& a, const SystemContext& ctx) {
    const int d = ctx.grid.count();
    const std::size_t n = static_cast<std::size_t>(ctx.scenario.n_classical);
    if (a.classical_a.size() != n || a.classical_b.size() != n) {
        throw ConfigError("assignment: |A| and |B| must both equal n_classical");
    }
    if (a.quantum_count() != ctx.scenario.m_quantum) {
        throw ConfigError("assignment: |U1| + |U2| must equal m_quantum");
    }
    for (const auto* v : {&a.classical_a, &a.classical_b, &a.quantum_u1, &a.quantum_u2}) {
        if (!detail::in_range(*v, d)) throw ConfigError("assignment: channel index out of range");
        if (!detail::sorted_unique(*v)) {
            throw ConfigError("assignment: sets must be sorted with distinct indices");
        }
    }
    if (ctx.scenario.structure == FiberStructure::FullDuplex) {
        if (!a.quantum_u2.empty()) {
            throw ConfigError("assignment: full-duplex plans place all quantum channels in U1");
        }
        if (!detail::disjoint(a.quantum_u1, a.classical_a) ||
            !detail::disjoint(a.quantum_u1, a.classical_b)) {
            throw ConfigError("assignment: quantum and classical channels collide on the fiber");
        }
    } else {
        if (!detail::disjoint(a.quantum_u1, a.classical_a) ||
            !detail::disjoint(a.quantum_u2, a.classical_b)) {
            throw ConfigError("assignment: quantum and classical channels collide on a fiber");
        }
    }
}

}  // namespace qkdwdm
