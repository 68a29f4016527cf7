#include "thermetry/bath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "thermetry/errors.hpp"
#include "thermetry/fisher.hpp"
#include "thermetry/run_profile.hpp"

namespace thermetry {

namespace {

constexpr double kExactCountCap = 9007199254740992.0; // 2^53

double require_finite_count(double count) {
    if (!std::isfinite(count))
        throw CertificationError(
            "bath degeneracy exceeds exact integer range; "
            "only log-domain studies are available for this bath");
    return count;
}

} // namespace

double BathSpec::log_partition() const {
    if (levels.empty())
        throw std::invalid_argument("BathSpec: no levels");
    double mx = -std::numeric_limits<double>::infinity();
    for (const BathLevel& lv : levels)
        mx = std::max(mx, lv.log_count - beta * lv.energy);
    KahanSum s;
    for (const BathLevel& lv : levels)
        s.add(std::exp(lv.log_count - beta * lv.energy - mx));
    return mx + std::log(s.value());
}

BathSpec ladder_bath(double eps, int k_max, double beta) {
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw std::invalid_argument("ladder_bath: spacing must be positive");
    if (k_max < 0)
        throw std::invalid_argument("ladder_bath: k_max must be >= 0");
    if (!std::isfinite(beta) || beta < 0.0)
        throw std::invalid_argument(
            "ladder_bath: beta must be finite and >= 0");
    BathSpec bath;
    bath.beta = beta;
    bath.levels.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k)
        bath.levels.push_back({k * eps, 1.0, 0.0});
    return bath;
}

BathSpec nqubit_bath(double xi, std::int64_t n, double beta) {
    if (!(xi > 0.0) || !std::isfinite(xi))
        throw std::invalid_argument("nqubit_bath: splitting must be positive");
    if (n < 1) throw std::invalid_argument("nqubit_bath: need n >= 1");
    if (!std::isfinite(beta) || beta < 0.0)
        throw std::invalid_argument(
            "nqubit_bath: beta must be finite and >= 0");
    BathSpec bath;
    bath.beta = beta;
    bath.levels.reserve(static_cast<std::size_t>(n) + 1);
    const double lgn = std::lgamma(static_cast<double>(n) + 1.0);
    unsigned __int128 c = 1;
    bool overflowed = false;
    for (std::int64_t k = 0; k <= n; ++k) {
        const double lc = lgn - std::lgamma(static_cast<double>(k) + 1.0) -
                          std::lgamma(static_cast<double>(n - k) + 1.0);
        double count;
        if (!overflowed &&
            c <= static_cast<unsigned __int128>(kExactCountCap))
            count = static_cast<double>(c);
        else
            count = std::numeric_limits<double>::infinity();
        bath.levels.push_back({k * xi, count, lc});
        if (k < n && !overflowed) {
            // u128 holds C(n,k)*(n-k) for every k when n <= 120
            if (n > 120) {
                overflowed = true;
            } else {
                c = c * static_cast<unsigned __int128>(n - k) /
                    static_cast<unsigned __int128>(k + 1);
            }
        }
    }
    return bath;
}

double EnergyBlock::weight() const { return std::exp(log_weight); }

double EnergyBlock::dimension() const {
    KahanSum s;
    for (const BlockEntry& e : entries) s.add(e.count);
    return s.value();
}

std::vector<EnergyBlock> block_decompose(const DiagonalState& state,
                                         const EnergySpectrum& spectrum,
                                         const BathSpec& bath) {
    if (state.dim() != spectrum.dim())
        throw std::invalid_argument("block_decompose: dimension mismatch");
    const double log_zb = bath.log_partition();
    std::map<double, std::vector<BlockEntry>> sectors;
    const auto& eps = spectrum.energies();
    for (std::size_t i = 0; i < eps.size(); ++i)
        for (const BathLevel& lv : bath.levels)
            sectors[eps[i] + lv.energy].push_back({i, lv.count});
    std::vector<EnergyBlock> blocks;
    blocks.reserve(sectors.size());
    for (auto& [energy, entries] : sectors) {
        EnergyBlock b;
        b.total_energy = energy;
        b.entries = std::move(entries);
        b.log_weight = -bath.beta * energy - log_zb;
        blocks.push_back(std::move(b));
    }
    return blocks;
}

namespace {

// run-length-encoded (q, eps) lists of one block, sorted for the kernel
struct BlockRuns {
    RunProfile q; // boltzmann-weighted eigenvalues, nonincreasing
    RunProfile e; // level energies, nonincreasing
};

BlockRuns block_runs(const EnergyBlock& block, const DiagonalState& state,
                     const EnergySpectrum& spectrum, double beta) {
    const auto& p = state.probs();
    const auto& eps = spectrum.energies();
    struct Item {
        double q;
        double energy;
        std::size_t idx;
        double count;
    };
    std::vector<Item> items;
    items.reserve(block.entries.size());
    for (const BlockEntry& en : block.entries) {
        if (en.sys_index >= p.size())
            throw std::invalid_argument("block entry out of range");
        const double count = require_finite_count(en.count);
        items.push_back({p[en.sys_index] * std::exp(beta * eps[en.sys_index]),
                         eps[en.sys_index], en.sys_index, count});
    }
    BlockRuns out;
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.q != b.q) return a.q > b.q;
        if (a.energy != b.energy) return a.energy < b.energy;
        return a.idx < b.idx;
    });
    for (const Item& it : items) out.q.push_back({it.q, it.count});
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.energy != b.energy) return a.energy > b.energy;
        return a.idx < b.idx;
    });
    for (const Item& it : items) out.e.push_back({it.energy, it.count});
    return out;
}

} // namespace

double block_max_qfi(const EnergyBlock& block, const DiagonalState& state,
                     const EnergySpectrum& spectrum, double beta) {
    const BlockRuns runs = block_runs(block, state, spectrum, beta);
    if (runs.q.size() == 1) return 0.0; // single level: nothing to rotate
    return block.weight() * mirror_fisher_integral(runs.q, runs.e);
}

double finite_bath_max_qfi(const DiagonalState& state,
                           const EnergySpectrum& spectrum,
                           const BathSpec& bath) {
    KahanSum total;
    for (const EnergyBlock& b : block_decompose(state, spectrum, bath))
        total.add(block_max_qfi(b, state, spectrum, bath.beta));
    return total.value();
}

double finite_bath_interaction_speed(const DiagonalState& state,
                                     const EnergySpectrum& spectrum,
                                     const BathSpec& bath) {
    KahanSum total;
    for (const EnergyBlock& b : block_decompose(state, spectrum, bath)) {
        const BlockRuns runs = block_runs(b, state, spectrum, bath.beta);
        if (runs.q.size() == 1) continue;
        total.add(b.weight() * mirror_fisher_integral(runs.q));
    }
    return total.value();
}

std::pair<std::vector<double>, std::vector<double>>
expand_block(const EnergyBlock& block, const DiagonalState& state,
             const EnergySpectrum& spectrum, double beta,
             std::size_t max_dim) {
    const double dim = block.dimension();
    require_finite_count(dim);
    if (dim > static_cast<double>(max_dim))
        throw std::invalid_argument("expand_block: block too large");
    const auto& p = state.probs();
    const auto& eps = spectrum.energies();
    std::vector<double> values, energies;
    for (const BlockEntry& en : block.entries) {
        const auto reps = static_cast<std::size_t>(en.count);
        if (static_cast<double>(reps) != en.count)
            throw std::invalid_argument("expand_block: non-integer count");
        for (std::size_t r = 0; r < reps; ++r) {
            values.push_back(p[en.sys_index] *
                             std::exp(beta * eps[en.sys_index]));
            energies.push_back(eps[en.sys_index]);
        }
    }
    return {std::move(values), std::move(energies)};
}

namespace {

void check_two_level(double p0, double p1, double eps, const char* what) {
    if (!(p0 >= 0.0) || !(p1 >= 0.0) || std::abs(p0 + p1 - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(what) +
                                    ": (p0, p1) must be a distribution");
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw std::invalid_argument(std::string(what) +
                                    ": gap must be positive");
}

} // namespace

double jaynes_cummings_qfi(double p0, double p1, double eps, double beta,
                           double omega_rabi) {
    check_two_level(p0, p1, eps, "jaynes_cummings_qfi");
    if (!std::isfinite(omega_rabi))
        throw std::invalid_argument("jaynes_cummings_qfi: bad coupling");
    if (!std::isfinite(beta) || beta <= 0.0)
        throw std::domain_error(
            "jaynes_cummings_qfi: diverges as beta -> 0; need beta > 0");
    const double x = std::exp(-beta * eps);
    return omega_rabi * omega_rabi * fisher_difference(p0 * x, p1) /
           (1.0 - x);
}

double jaynes_cummings_qfi_series(double p0, double p1, double eps,
                                  double beta, double omega_rabi,
                                  double tol) {
    check_two_level(p0, p1, eps, "jaynes_cummings_qfi_series");
    if (!std::isfinite(beta) || beta <= 0.0)
        throw std::domain_error(
            "jaynes_cummings_qfi_series: diverges as beta -> 0");
    const double x = std::exp(-beta * eps);
    // per-excitation factor: f(p0 x^n, p1 x^{n-1}) = x^{n-1} f(p0 x, p1),
    // so the series is f(p0, p1 e^{beta eps}) sum_n n x^n / Z_B
    const double c = fisher_difference(p0, p1 * std::exp(beta * eps));
    const double scale = omega_rabi * omega_rabi * (1.0 - x); // 1/Z_B
    const double denom = (1.0 - x) * (1.0 - x);
    KahanSum s;
    double xn = 1.0;
    for (std::size_t n = 1; n <= 10000000; ++n) {
        xn *= x;
        s.add(static_cast<double>(n) * xn);
        const double tail =
            xn * x * (static_cast<double>(n + 1) - static_cast<double>(n) * x) /
            denom;
        if (scale * c * tail <= tol) return scale * c * s.value();
    }
    throw CertificationError(
        "jaynes_cummings_qfi_series: remainder did not certify below tol");
}

DegeneracyRatioStudy degeneracy_ratio_study(double xi, std::int64_t n,
                                            double beta,
                                            double window_sigmas) {
    if (!(xi > 0.0) || !std::isfinite(xi))
        throw std::invalid_argument(
            "degeneracy_ratio_study: splitting must be positive");
    if (n < 1)
        throw std::invalid_argument("degeneracy_ratio_study: need n >= 1");
    if (!std::isfinite(beta) || beta < 0.0)
        throw std::invalid_argument(
            "degeneracy_ratio_study: beta must be finite and >= 0");
    if (!(window_sigmas > 0.0))
        throw std::invalid_argument(
            "degeneracy_ratio_study: window must be positive");

    // excitation count is binomial(n, p) under the Gibbs weight
    const double x = std::exp(-beta * xi);
    const double p = x / (1.0 + x);
    const double mu = static_cast<double>(n) * p;
    const double sigma = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
    auto k_lo = static_cast<std::int64_t>(
        std::floor(std::max(0.0, mu - window_sigmas * sigma)));
    auto k_hi = static_cast<std::int64_t>(std::ceil(
        std::min(static_cast<double>(n), mu + window_sigmas * sigma)));
    if (k_hi <= k_lo) k_hi = std::min(n, k_lo + 1);

    double dev = 0.0;
    const double ebx = std::exp(beta * xi);
    for (std::int64_t k = k_lo; k < k_hi; ++k) {
        const double ratio = ebx * static_cast<double>(k + 1) /
                             static_cast<double>(n - k);
        dev = std::max(dev, std::abs(ratio - 1.0));
    }

    const double lgn = std::lgamma(static_cast<double>(n) + 1.0);
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    KahanSum wp;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        const double lc = lgn - std::lgamma(static_cast<double>(k) + 1.0) -
                          std::lgamma(static_cast<double>(n - k) + 1.0);
        double lt = lc;
        if (k > 0) lt += static_cast<double>(k) * lp; // avoid 0 * -inf
        if (k < n) lt += static_cast<double>(n - k) * lq;
        wp.add(std::exp(lt));
    }
    return {dev, std::min(wp.value(), 1.0), k_lo, k_hi};
}

} // namespace thermetry
