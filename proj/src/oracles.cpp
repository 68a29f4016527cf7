#include "thermetry/oracles.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "thermetry/errors.hpp"
#include "thermetry/fisher.hpp"

namespace thermetry::oracles {

namespace {

using cd = std::complex<double>;
constexpr int kMaxDim = 8;
constexpr double kFdStep = 1e-5;
constexpr double kTwoPi = 6.283185307179586476925286766559;

// fixed-size complex matrix so the hot loops never touch the allocator
struct SmallMat {
    int d = 0;
    std::array<cd, kMaxDim * kMaxDim> m{};
    cd& at(int i, int j) { return m[static_cast<std::size_t>(i * d + j)]; }
    const cd& at(int i, int j) const {
        return m[static_cast<std::size_t>(i * d + j)];
    }
};

// mt19937_64 driven explicitly: 53-bit uniforms and Box-Muller normals, so
// the stream is identical across standard libraries
struct Rng {
    std::mt19937_64 gen;
    bool have_cached = false;
    double cached = 0.0;

    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double uniform() {
        return static_cast<double>(gen() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        if (have_cached) {
            have_cached = false;
            return cached;
        }
        double u1;
        do {
            u1 = uniform();
        } while (u1 == 0.0);
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = kTwoPi * uniform();
        cached = rad * std::sin(ang);
        have_cached = true;
        return rad * std::cos(ang);
    }
};

// M = U^dag diag(h) U
SmallMat conjugate_diag(const SmallMat& u, const std::vector<double>& h) {
    SmallMat out;
    out.d = u.d;
    for (int i = 0; i < u.d; ++i)
        for (int j = i; j < u.d; ++j) {
            cd s = 0.0;
            for (int k = 0; k < u.d; ++k)
                s += std::conj(u.at(k, i)) * h[static_cast<std::size_t>(k)] *
                     u.at(k, j);
            out.at(i, j) = s;
            out.at(j, i) = std::conj(s);
        }
    return out;
}

struct FisherTable {
    std::array<double, kMaxDim * kMaxDim> f{};
    int d = 0;
    void fill(const std::vector<double>& p) {
        d = static_cast<int>(p.size());
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                f[static_cast<std::size_t>(i * d + j)] =
                    fisher_difference(p[static_cast<std::size_t>(i)],
                                      p[static_cast<std::size_t>(j)]);
    }
    double at(int i, int j) const {
        return f[static_cast<std::size_t>(i * d + j)];
    }
};

double qfi_from(const FisherTable& ft, const SmallMat& m) {
    KahanSum acc;
    for (int i = 0; i < m.d; ++i)
        for (int j = i + 1; j < m.d; ++j)
            acc.add(ft.at(i, j) * std::norm(m.at(i, j)));
    return 4.0 * acc.value();
}

// objective after the 2x2 left rotation [[ra, rb], [rc, rd]] of rows (a, b),
// evaluated through a rank-2 update of M rather than a fresh conjugation
double qfi_rows_rotated(const FisherTable& ft, const SmallMat& m,
                        const SmallMat& u, const std::vector<double>& h,
                        int a, int b, cd ra, cd rb, cd rc, cd rd) {
    const int d = u.d;
    std::array<cd, kMaxDim> ua, ub;
    for (int j = 0; j < d; ++j) {
        ua[static_cast<std::size_t>(j)] = ra * u.at(a, j) + rb * u.at(b, j);
        ub[static_cast<std::size_t>(j)] = rc * u.at(a, j) + rd * u.at(b, j);
    }
    const double ha = h[static_cast<std::size_t>(a)];
    const double hb = h[static_cast<std::size_t>(b)];
    double acc = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const cd mij =
                m.at(i, j) +
                ha * (std::conj(ua[static_cast<std::size_t>(i)]) *
                          ua[static_cast<std::size_t>(j)] -
                      std::conj(u.at(a, i)) * u.at(a, j)) +
                hb * (std::conj(ub[static_cast<std::size_t>(i)]) *
                          ub[static_cast<std::size_t>(j)] -
                      std::conj(u.at(b, i)) * u.at(b, j));
            acc += ft.at(i, j) * std::norm(mij);
        }
    return 4.0 * acc;
}

Eigen::MatrixXcd to_eigen(const SmallMat& u) {
    Eigen::MatrixXcd out(u.d, u.d);
    for (int i = 0; i < u.d; ++i)
        for (int j = 0; j < u.d; ++j) out(i, j) = u.at(i, j);
    return out;
}

SmallMat from_eigen(const Eigen::MatrixXcd& e) {
    SmallMat out;
    out.d = static_cast<int>(e.rows());
    for (int i = 0; i < out.d; ++i)
        for (int j = 0; j < out.d; ++j) out.at(i, j) = e(i, j);
    return out;
}

// exp(i * H) for Hermitian H via eigendecomposition
Eigen::MatrixXcd exp_i_hermitian(const Eigen::MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k)
        phases(k) = std::polar(1.0, es.eigenvalues()(k));
    return es.eigenvectors() * phases.asDiagonal() *
           es.eigenvectors().adjoint();
}

SmallMat random_start(Rng& rng, int d) {
    Eigen::MatrixXcd h(d, d);
    for (int i = 0; i < d; ++i) {
        h(i, i) = rng.gaussian();
        for (int j = i + 1; j < d; ++j) {
            const cd v(0.5 * rng.gaussian(), 0.5 * rng.gaussian());
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return from_eigen(exp_i_hermitian(h));
}

} // namespace

double brute_force_max_qfi(const SpectralPair& sp,
                           const SearchBudget& budget) {
    const std::vector<double>& p = sp.probs.probs();
    const std::vector<double>& h = sp.hvals;
    const int d = static_cast<int>(p.size());
    if (d > kMaxDim)
        throw std::invalid_argument(
            "brute_force_max_qfi: dimension above search cap 8");
    if (budget.restarts < 1 || budget.steps < 1 ||
        !(budget.initial_step > 0.0))
        throw std::invalid_argument("brute_force_max_qfi: bad budget");
    if (d == 1) return 0.0;

    FisherTable ft;
    ft.fill(p);

    // one parameter per skew-Hermitian coordinate: pair (a, b) with a real
    // ("X") and an imaginary ("Y") rotation each
    struct Param {
        int a, b, type;
    };
    std::vector<Param> params;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
            params.push_back({a, b, 0});
            params.push_back({a, b, 1});
        }

    const double cs = std::cos(kFdStep);
    const double sn = std::sin(kFdStep);
    auto probe = [&](const SmallMat& m, const SmallMat& u, const Param& pr,
                     double sign) {
        const double s = sign * sn;
        if (pr.type == 0)
            return qfi_rows_rotated(ft, m, u, h, pr.a, pr.b, cs, cd(0.0, s),
                                    cd(0.0, s), cs);
        return qfi_rows_rotated(ft, m, u, h, pr.a, pr.b, cs, -s, s, cs);
    };

    Rng rng(budget.seed);
    double best = 0.0;
    std::vector<double> grad(params.size());
    for (int restart = 0; restart < budget.restarts; ++restart) {
        SmallMat u = random_start(rng, d);
        SmallMat m = conjugate_diag(u, h);
        double fcur = qfi_from(ft, m);
        double alpha = budget.initial_step;
        for (int step = 0; step < budget.steps; ++step) {
            double gnorm2 = 0.0;
            for (std::size_t k = 0; k < params.size(); ++k) {
                const double fp = probe(m, u, params[k], +1.0);
                const double fm = probe(m, u, params[k], -1.0);
                grad[k] = (fp - fm) / (2.0 * kFdStep);
                gnorm2 += grad[k] * grad[k];
            }
            const double gnorm = std::sqrt(gnorm2);
            if (gnorm < 1e-12) break;

            Eigen::MatrixXcd hdir = Eigen::MatrixXcd::Zero(d, d);
            for (std::size_t k = 0; k < params.size(); ++k) {
                const Param& pr = params[k];
                const double c = alpha * grad[k] / gnorm;
                if (pr.type == 0)
                    hdir(pr.a, pr.b) += c;
                else
                    hdir(pr.a, pr.b) += cd(0.0, c);
            }
            for (int a = 0; a < d; ++a)
                for (int b = a + 1; b < d; ++b)
                    hdir(b, a) = std::conj(hdir(a, b));

            const SmallMat u_trial =
                from_eigen(exp_i_hermitian(hdir) * to_eigen(u));
            const SmallMat m_trial = conjugate_diag(u_trial, h);
            const double f_trial = qfi_from(ft, m_trial);
            if (f_trial > fcur) {
                u = u_trial;
                m = m_trial;
                fcur = f_trial;
                alpha = std::min(alpha * 1.5, 1.0);
            } else {
                alpha *= 0.5;
                if (alpha < 1e-9) break;
            }
        }
        best = std::max(best, fcur);
    }
    return best;
}

double two_mode_qfi(const PhotonDistribution& p, const BoltzmannRatio& r,
                    int n_max) {
    const double nbar = r.mean_n(); // rejects r = 1
    const double rv = r.value();
    if (n_max < p.n_max() + 2)
        throw std::invalid_argument(
            "two_mode_qfi: bath cut must exceed the state support by 2");

    std::vector<double> g(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (rv == 0.0) {
        g[0] = 1.0;
    } else {
        double gm = 1.0 - rv;
        for (int mth = 0; mth <= n_max; ++mth) {
            g[static_cast<std::size_t>(mth)] = gm;
            gm *= rv;
        }
    }

    const auto& pb = p.probs();
    const int np = p.n_max();
    KahanSum acc;
    for (int n = 1; n <= np + 1; ++n) {
        const double pn = n <= np ? pb[static_cast<std::size_t>(n)] : 0.0;
        const double pm1 = pb[static_cast<std::size_t>(n - 1)];
        if (pn == 0.0 && pm1 == 0.0) continue;
        for (int mth = 0; mth < n_max; ++mth) {
            const double x = pn * g[static_cast<std::size_t>(mth)];
            const double y = pm1 * g[static_cast<std::size_t>(mth + 1)];
            if (x == 0.0 && y == 0.0) continue;
            acc.add(fisher_difference(x, y) * static_cast<double>(n) *
                    static_cast<double>(mth + 1));
        }
    }

    // certify what the two cuts dropped
    const double mean = p.mean();
    double t_bath = 0.0;
    if (rv > 0.0) {
        const double mm = static_cast<double>(n_max);
        t_bath = std::pow(rv, mm) * ((mm + 1.0) - mm * rv) / (1.0 - rv);
    }
    double cert = (2.0 * mean + 1.0) * t_bath;
    if (!p.exact_support()) {
        const double twb1 = p.weighted_tail_bound(1);
        const double edge =
            static_cast<double>(np + 1) * pb[static_cast<std::size_t>(np)];
        cert += (nbar + 1.0) * (2.0 * twb1 + edge);
    }
    if (!(cert <= 1e-10))
        throw CertificationError(
            "two_mode_qfi: truncation tails not certifiable at this cut");
    return acc.value();
}

} // namespace thermetry::oracles
