#include "coreflow/gossip.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <utility>

#include "coreflow/errors.hpp"

namespace coreflow {

int CoreView::local_id(int original) const {
    const auto it = std::lower_bound(to_original.begin(), to_original.end(), original);
    if (it == to_original.end() || *it != original) {
        return -1;
    }
    return static_cast<int>(it - to_original.begin());
}

Combiner Combiner::max() { return Combiner(Kind::Max, "max"); }
Combiner Combiner::min() { return Combiner(Kind::Min, "min"); }
Combiner Combiner::average_metropolis() {
    return Combiner(Kind::AverageMetropolis, "average_metropolis");
}

Combiner Combiner::custom(std::string name,
                          std::function<double(const std::vector<double>&)> fn) {
    if (!fn) {
        throw InvalidParameter("custom combiner needs a callable");
    }
    Combiner c(Kind::Custom, std::move(name));
    c.fn_ = std::move(fn);
    return c;
}

double Combiner::apply_custom(const std::vector<double>& closed_neighborhood) const {
    return fn_(closed_neighborhood);
}

CoreView build_core_view(const Graph& g, const RunSummary& summary,
                         const std::vector<double>& initial_values) {
    if (summary.core.empty()) {
        throw EmptyCore("run produced no core nodes");
    }
    if (initial_values.size() != static_cast<std::size_t>(g.node_count())) {
        throw InvalidParameter("initial values must cover all " +
                               std::to_string(g.node_count()) + " nodes");
    }

    CoreView view;
    view.to_original = summary.core; // already sorted ascending
    const int k = view.size();
    view.adjacency.resize(static_cast<std::size_t>(k));
    view.values.resize(static_cast<std::size_t>(k));
    for (int local = 0; local < k; ++local) {
        const int orig = view.to_original[local];
        view.values[local] = initial_values[orig];
        for (int nb : g.neighbors(orig)) {
            const int nb_local = view.local_id(nb);
            if (nb_local >= 0) {
                view.adjacency[local].push_back(nb_local);
            }
        }
        // source neighbors are sorted by original id, so local ids come out
        // sorted too
    }

    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    for (int v = 0; v < k; ++v) {
        if (seen[v]) {
            continue;
        }
        ++view.component_count;
        std::queue<int> queue;
        queue.push(v);
        seen[v] = 1;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop();
            for (int w : view.adjacency[u]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    queue.push(w);
                }
            }
        }
    }
    return view;
}

CoreView gossip_round(const CoreView& view, const Combiner& combiner) {
    const int k = view.size();
    CoreView next = view;
    switch (combiner.kind()) {
    case Combiner::Kind::Max:
        for (int i = 0; i < k; ++i) {
            double best = view.values[i];
            for (int j : view.adjacency[i]) {
                best = std::max(best, view.values[j]);
            }
            next.values[i] = best;
        }
        break;
    case Combiner::Kind::Min:
        for (int i = 0; i < k; ++i) {
            double best = view.values[i];
            for (int j : view.adjacency[i]) {
                best = std::min(best, view.values[j]);
            }
            next.values[i] = best;
        }
        break;
    case Combiner::Kind::AverageMetropolis:
        for (int i = 0; i < k; ++i) {
            double value = view.values[i];
            for (int j : view.adjacency[i]) {
                const double w = 1.0 / (1.0 + std::max(view.degree(i), view.degree(j)));
                value += w * (view.values[j] - view.values[i]);
            }
            next.values[i] = value;
        }
        break;
    case Combiner::Kind::Custom: {
        std::vector<double> closed;
        for (int i = 0; i < k; ++i) {
            closed.clear();
            closed.push_back(view.values[i]);
            for (int j : view.adjacency[i]) {
                closed.push_back(view.values[j]);
            }
            next.values[i] = combiner.apply_custom(closed);
        }
        break;
    }
    }
    return next;
}

GossipResult run_gossip(const CoreView& view, const Combiner& combiner, double tol,
                        long max_rounds) {
    if (!(tol > 0.0)) {
        throw InvalidParameter("tolerance must be positive");
    }
    if (max_rounds < 0) {
        throw InvalidParameter("max_rounds must be non-negative");
    }

    CoreView current = view;
    long rounds = 0;
    while (true) {
        CoreView next = gossip_round(current, combiner);
        double max_change = 0.0;
        for (int i = 0; i < view.size(); ++i) {
            max_change = std::max(max_change, std::abs(next.values[i] - current.values[i]));
        }
        if (max_change == 0.0) {
            // exact fixed point; the probe round did not count
            return GossipResult{std::move(current.values), rounds};
        }
        if (rounds >= max_rounds) {
            throw ConvergenceFailure("gossip did not converge in " + std::to_string(max_rounds) +
                                         " rounds (last change " + std::to_string(max_change) +
                                         ")",
                                     std::move(current.values));
        }
        current.values = std::move(next.values);
        ++rounds;
        const bool tolerance_ruled = combiner.kind() == Combiner::Kind::AverageMetropolis ||
                                     combiner.kind() == Combiner::Kind::Custom;
        if (tolerance_ruled && max_change < tol) {
            return GossipResult{std::move(current.values), rounds};
        }
    }
}

} // namespace coreflow
