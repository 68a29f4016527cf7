#include "thermetry/run_profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "thermetry/fisher.hpp"

namespace thermetry {

namespace {

// Nonempty runs with compensated cumulative right edges, for O(log n)
// point lookups under the right-open convention.
struct Lookup {
    std::vector<double> edges;
    std::vector<double> values;

    double total() const { return edges.back(); }

    double at(double x) const {
        auto it = std::upper_bound(edges.begin(), edges.end(), x);
        auto i = static_cast<std::size_t>(it - edges.begin());
        if (i >= values.size()) i = values.size() - 1;
        return values[i];
    }
};

Lookup build(const RunProfile& runs, const char* what) {
    Lookup lk;
    KahanSum cum;
    double prev = 0.0;
    bool first = true;
    for (const Run& r : runs) {
        if (!(r.extent >= 0.0) || !std::isfinite(r.extent))
            throw std::invalid_argument(std::string(what) +
                                        ": bad run extent");
        if (!std::isfinite(r.value))
            throw std::invalid_argument(std::string(what) +
                                        ": nonfinite run value");
        if (r.extent == 0.0) continue;
        if (!first && r.value > prev + 1e-9 * (1.0 + std::abs(prev)))
            throw std::invalid_argument(std::string(what) +
                                        ": runs must be nonincreasing");
        prev = r.value;
        first = false;
        cum.add(r.extent);
        lk.edges.push_back(cum.value());
        lk.values.push_back(r.value);
    }
    if (lk.edges.empty())
        throw std::invalid_argument(std::string(what) + ": empty profile");
    return lk;
}

// The mirrored integrand is symmetric under x <-> L-x, so integrating the
// lower half and skipping the 1/2 prefactor is exact -- and only the lower
// half keeps extremely thin runs (short prefix sums near 0) at exact
// positions; their reflections near L would round onto L and vanish.
double mirror_integral(const RunProfile& qruns, const RunProfile* eruns) {
    const Lookup q = build(qruns, "mirror_fisher_integral q");
    const double L = q.total();
    Lookup e;
    const bool weighted = eruns != nullptr;
    if (weighted) {
        e = build(*eruns, "mirror_fisher_integral e");
        if (std::abs(e.total() - L) > 1e-9 * std::max(1.0, L))
            throw std::invalid_argument(
                "mirror_fisher_integral: profiles span different extents");
    }

    // Every factor is constant between consecutive cuts, so a midpoint
    // lookup per cell is exact.
    const double half = 0.5 * L;
    std::vector<double> cuts;
    cuts.reserve(2 * (q.edges.size() + (weighted ? e.edges.size() : 0)) + 2);
    cuts.push_back(0.0);
    cuts.push_back(half);
    auto add_edges = [&](const Lookup& lk) {
        for (double x : lk.edges) {
            if (x < half) cuts.push_back(x);
            const double rx = L - x;
            if (rx > 0.0 && rx < half) cuts.push_back(rx);
        }
    };
    add_edges(q);
    if (weighted) add_edges(e);
    std::sort(cuts.begin(), cuts.end());

    KahanSum acc;
    double lo = 0.0;
    for (std::size_t k = 1; k < cuts.size(); ++k) {
        const double hi = cuts[k];
        if (hi <= lo) continue;
        const double mid = 0.5 * (lo + hi);
        const double fv = fisher_difference(q.at(mid), q.at(L - mid));
        if (fv != 0.0) {
            double w = 1.0;
            if (weighted) {
                const double gap = e.at(mid) - e.at(L - mid);
                w = gap * gap;
            }
            if (w != 0.0) acc.add((hi - lo) * fv * w);
        }
        lo = hi;
    }
    return acc.value();
}

} // namespace

double profile_total_extent(const RunProfile& profile) {
    KahanSum s;
    for (const Run& r : profile) s.add(r.extent);
    return s.value();
}

double mirror_fisher_integral(const RunProfile& q) {
    return mirror_integral(q, nullptr);
}

double mirror_fisher_integral(const RunProfile& q, const RunProfile& e) {
    return mirror_integral(q, &e);
}

} // namespace thermetry
