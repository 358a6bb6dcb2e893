#pragma once

#include <stdexcept>
#include <vector>

#include "k3pq/curves.hpp"
#include "k3pq/modular.hpp"

namespace k3pq::oracle {

// Dimension of each eigenspace from an explicit basis of holomorphic forms
// R(x) dx / y^k on y^n = prod (x - b_j)^{c_j}; g acts by y -> zeta y.
inline std::vector<long> superelliptic_profile(const CurveAction& act) {
    long n = act.order();
    struct Pt {
        long m, cprime;
    };
    std::vector<Pt> pts;
    long S = 0;
    for (const auto& b : act.base_points()) {
        long cp = mod(-mod_inverse(b.theta, b.m), b.m);
        pts.push_back({b.m, cp});
        S += (n / b.m) * cp;
    }
    if (S % n != 0) throw std::logic_error("branch data violates the monodromy condition");
    std::vector<long> alpha(n - 1, 0);
    for (long k = 1; k < n; ++k) {
        // Smallest admissible order of R at each branch point.
        std::vector<long> emin;
        for (const auto& pt : pts) {
            long e = -100;
            while (pt.m * e - k * pt.cprime + pt.m - 1 < 0) ++e;
            emin.push_back(e);
        }
        long base_deg = 0;
        for (long e : emin) base_deg += e;
        long count = 0;
        for (long a = 0; a < 4 * n * static_cast<long>(pts.size()); ++a) {
            // R = x^a * prod (x - b_j)^{emin_j}: orders at finite places hold by construction,
            // check the places over infinity.
            long deg = a + base_deg;
            if (-deg - 2 + k * S / n >= 0) ++count;
        }
        alpha[mod(n - k, n) - 1] += count;
    }
    return alpha;
}

}  // namespace k3pq::oracle
