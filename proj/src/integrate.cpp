#include "thermetry/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "thermetry/errors.hpp"
#include "thermetry/fisher.hpp"

namespace thermetry {

namespace {

// 15-point Kronrod abscissae on [-1, 1] (positive half) and weights; the
// embedded 7-point Gauss rule sits on the odd-index nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Piece {
    double err;
    double a;
    double b;
    double val;
    bool operator<(const Piece& o) const {
        if (err != o.err) return err > o.err; // worst first
        if (a != o.a) return a < o.a;
        return b < o.b;
    }
};

} // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, EndpointHints hints) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw std::invalid_argument("adaptive_integrate: need finite a < b");
    if (!(abs_tol > 0.0))
        throw std::invalid_argument("adaptive_integrate: tolerance must be > 0");

    auto eval = [&](double x) {
        const double v = f(x);
        if (!std::isfinite(v)) {
            // declared endpoint singularities may still round onto the
            // endpoint at tiny widths; their measure-zero spikes drop out
            if (hints.left_singular || hints.right_singular) return 0.0;
            throw CertificationError(
                "adaptive_integrate: integrand is not finite");
        }
        return v;
    };

    auto gk15 = [&](double lo, double hi) {
        const double c = 0.5 * (lo + hi);
        const double h = 0.5 * (hi - lo);
        const double fc = eval(c);
        double resk = kWgk[7] * fc;
        double resg = kWg[3] * fc;
        for (int j = 0; j < 7; ++j) {
            const double dx = h * kXgk[j];
            const double f1 = eval(c - dx);
            const double f2 = eval(c + dx);
            resk += kWgk[j] * (f1 + f2);
            if (j % 2 == 1) resg += kWg[(j - 1) / 2] * (f1 + f2);
        }
        return Piece{std::abs((resk - resg) * h), lo, hi, resk * h};
    };

    // geometric pre-splits toward declared singular ends keep the halving
    // budget out of the endpoint boundary layer
    std::vector<double> cuts{a, b};
    if (hints.left_singular)
        for (int k = 52; k >= 1; --k)
            cuts.push_back(a + (b - a) * std::ldexp(1.0, -k));
    if (hints.right_singular)
        for (int k = 52; k >= 1; --k)
            cuts.push_back(b - (b - a) * std::ldexp(1.0, -k));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::set<Piece> pieces;
    double total_err = 0.0;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        const Piece p = gk15(cuts[i - 1], cuts[i]);
        total_err += p.err;
        pieces.insert(p);
    }

    auto exact_err = [&]() {
        KahanSum err;
        for (const Piece& p : pieces) err.add(p.err);
        return err.value();
    };

    constexpr std::size_t kPieceCap = 30000;
    while (true) {
        if (total_err <= abs_tol) {
            total_err = exact_err(); // running total drifts; confirm
            if (total_err <= abs_tol) break;
        }
        if (pieces.size() >= kPieceCap)
            throw CertificationError(
                "adaptive_integrate: interval budget exhausted");
        Piece worst = *pieces.begin();
        pieces.erase(pieces.begin());
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw CertificationError(
                "adaptive_integrate: interval underflow before convergence");
        const Piece l = gk15(worst.a, mid);
        const Piece r = gk15(mid, worst.b);
        total_err += l.err + r.err - worst.err;
        pieces.insert(l);
        pieces.insert(r);
    }

    // sum in position order for run-to-run determinism
    std::vector<Piece> ordered(pieces.begin(), pieces.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const Piece& x, const Piece& y) { return x.a < y.a; });
    KahanSum sum;
    for (const Piece& p : ordered) sum.add(p.val);
    return sum.value();
}

} // namespace thermetry
