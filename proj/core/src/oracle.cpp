#include "coreflow/oracle.hpp"

#include <cmath>
#include <string>

#include "coreflow/errors.hpp"

namespace coreflow::oracle {

ChargeState reference_step(const Graph& g, const ChargeState& state) {
    const int n = g.node_count();
    if (static_cast<int>(state.x.size()) != n || static_cast<int>(state.eps.size()) != n) {
        throw InvalidState("reference state does not match graph");
    }

    std::vector<double> z(state.x.size());
    for (int i = 0; i < n; ++i) {
        z[i] = state.x[i] > state.eps[i] ? 1.0 : 0.0;
    }

    ChargeState next;
    next.eps = state.eps;
    next.t = state.t + 1;
    next.x.resize(state.x.size());
    for (int i = 0; i < n; ++i) {
        double value;
        if (z[i] == 1.0 && g.degree(i) == 0) {
            value = state.x[i]; // nobody to send to
        } else {
            value = state.eps[i] * z[i] + (state.x[i] - state.eps[i]) / 2.0 * z[i] +
                    state.x[i] * (1.0 - z[i]);
        }
        for (int j : g.neighbors(i)) {
            value += (state.x[j] - state.eps[j]) * z[j] / (2.0 * g.degree(j));
        }
        next.x[i] = value;
    }
    return next;
}

DenseVector lazy_walk_step(const Graph& g, const DenseVector& v) {
    const int n = g.node_count();
    if (static_cast<int>(v.size()) != n) {
        throw InvalidParameter("vector length " + std::to_string(v.size()) +
                               " does not match graph with n=" + std::to_string(n));
    }
    DenseVector out(v.size());
    for (int i = 0; i < n; ++i) {
        double value = g.degree(i) == 0 ? v[i] : v[i] / 2.0;
        for (int j : g.neighbors(i)) {
            value += v[j] / (2.0 * g.degree(j));
        }
        out[i] = value;
    }
    return out;
}

CompareResult compare_states(const DenseVector& a, const DenseVector& b, double tol) {
    if (a.size() != b.size()) {
        throw InvalidParameter("cannot compare vectors of lengths " + std::to_string(a.size()) +
                               " and " + std::to_string(b.size()));
    }
    double max_diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        max_diff = std::max(max_diff, std::abs(a[i] - b[i]));
    }
    return CompareResult{max_diff <= tol, max_diff};
}

} // namespace coreflow::oracle
