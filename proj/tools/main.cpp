// thermetry: closed-form limits on phase sensing and interaction speed for
// states out of thermal equilibrium, as CSV/JSON emitting subcommands.
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thermetry/athermality.hpp"
#include "thermetry/bath.hpp"
#include "thermetry/errors.hpp"
#include "thermetry/io.hpp"
#include "thermetry/optical.hpp"
#include "thermetry/types.hpp"

namespace {

using json = nlohmann::json;
using namespace thermetry;

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(what) +
                                        ": bad number '" + tok + "'");
        }
    }
    if (out.empty())
        throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

struct Output {
    std::string path;   // empty = stdout
    std::string format; // "csv" or "json"

    void write(const std::string& csv, const json& mirror) const {
        std::ostream* os = &std::cout;
        std::ofstream file;
        if (!path.empty()) {
            file.open(path, std::ios::binary | std::ios::trunc);
            if (!file)
                throw std::runtime_error("cannot open output file: " + path);
            os = &file;
        }
        if (format == "csv")
            *os << csv;
        else
            *os << mirror.dump(2) << '\n';
        os->flush();
        if (os->fail()) throw std::runtime_error("write failed");
    }
};

void add_output_flags(CLI::App* cmd, Output& out) {
    cmd->add_option("-o,--output", out.path,
                    "output file (default: stdout)");
    cmd->add_option("--format", out.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_val("csv");
}

struct QfiMaxArgs {
    std::string probs, energies, state_path;
    double beta = 0.0;
    bool limits = false;
    Output out;
};

int run_qfi_max(const QfiMaxArgs& a) {
    std::vector<double> energies, probs;
    if (!a.state_path.empty()) {
        if (!a.probs.empty() || !a.energies.empty())
            throw std::invalid_argument(
                "qfi-max: give either --state or --probs/--energies");
        const io::StateFile sf = io::load_state_file(a.state_path);
        energies = sf.energies;
        probs = sf.probs;
    } else {
        if (a.probs.empty() || a.energies.empty())
            throw std::invalid_argument(
                "qfi-max: need --probs and --energies (or --state)");
        probs = parse_list(a.probs, "--probs");
        energies = parse_list(a.energies, "--energies");
    }
    const EnergySpectrum spectrum(energies);
    const DiagonalState state(probs);
    const double value = max_qfi_thermal(state, spectrum, a.beta);
    const BetaOrdering bo = beta_order(state, spectrum, a.beta);

    std::ostringstream csv;
    json j;
    csv << "row,index,width,weight,energy,value\n";
    csv << "qfi,,,,," << io::fmt(value) << "\n";
    j["qfi"] = value;
    if (a.limits) {
        const TemperatureLimits lim = qfi_temperature_limits(state, spectrum);
        csv << "low_limit,,,,," << io::fmt(lim.low) << "\n";
        csv << "high_limit,,,,," << io::fmt(lim.high) << "\n";
        j["low_limit"] = lim.low;
        j["high_limit"] = lim.high;
    }
    j["segments"] = json::array();
    for (std::size_t k = 0; k < bo.order.size(); ++k) {
        csv << "segment," << k << ',' << io::fmt(bo.widths[k]) << ','
            << io::fmt(bo.weights[k]) << ','
            << io::fmt(spectrum.energies()[bo.order[k]]) << ",\n";
        j["segments"].push_back(
            {{"index", k},
             {"width", bo.widths[k]},
             {"weight", bo.weights[k]},
             {"energy", spectrum.energies()[bo.order[k]]}});
    }
    a.out.write(csv.str(), j);
    return 0;
}

struct QubitSweepArgs {
    std::string temps;
    std::string p1_list;
    int p1_grid = 0;
    Output out;
};

int run_qubit_sweep(const QubitSweepArgs& a) {
    // temperatures in units of the gap; "inf" selects beta = 0
    std::vector<std::pair<std::string, double>> temps; // (label, beta)
    {
        std::stringstream ss(a.temps);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            if (tok == "inf") {
                temps.emplace_back(tok, 0.0);
                continue;
            }
            const double t = std::stod(tok);
            if (!(t > 0.0))
                throw std::invalid_argument(
                    "qubit-sweep: temperatures must be > 0 or 'inf'");
            temps.emplace_back(tok, 1.0 / t);
        }
    }
    if (temps.empty())
        throw std::invalid_argument("qubit-sweep: need --temps");

    std::vector<double> grid;
    if (a.p1_grid > 0) {
        for (int i = 0; i <= a.p1_grid; ++i)
            grid.push_back(static_cast<double>(i) /
                           static_cast<double>(a.p1_grid));
    }
    if (!a.p1_list.empty())
        for (double v : parse_list(a.p1_list, "--p1")) grid.push_back(v);
    if (grid.empty())
        throw std::invalid_argument("qubit-sweep: need --p1 or --p1-grid");

    std::ostringstream csv;
    csv << "p1,T_label,qfi_over_eps2\n";
    json rows = json::array();
    for (double p1 : grid)
        for (const auto& [label, beta] : temps) {
            const DiagonalState st({1.0 - p1, p1});
            const double v = max_qfi_qubit(st, 1.0, beta);
            csv << io::fmt(p1) << ',' << label << ',' << io::fmt(v) << "\n";
            rows.push_back(
                {{"p1", p1}, {"T_label", label}, {"qfi_over_eps2", v}});
        }
    a.out.write(csv.str(), rows);
    return 0;
}

struct CoherenceArgs {
    std::string family;
    std::string params;
    std::string rs;
    std::string state_path;
    double tail_tol = 1e-13;
    Output out;
};

PhotonDistribution make_distribution(const std::string& family, double param,
                                     const std::string& state_path,
                                     double tail_tol) {
    if (family == "fock") {
        if (param < 0.0 || param != std::floor(param))
            throw std::invalid_argument(
                "fock family: params must be integers >= 0");
        return PhotonDistribution::fock(static_cast<int>(param));
    }
    if (family == "thermal") return PhotonDistribution::thermal(param, tail_tol);
    if (family == "poisson") return PhotonDistribution::poisson(param, tail_tol);
    if (family == "custom") {
        const io::StateFile sf = io::load_state_file(state_path);
        // photon-number files index levels 0..N in order
        for (std::size_t n = 0; n < sf.energies.size(); ++n)
            if (sf.energies[n] != static_cast<double>(n))
                throw std::invalid_argument(
                    "custom family: first column must be 0,1,2,...");
        return PhotonDistribution::from_probs(sf.probs);
    }
    throw std::invalid_argument("unknown family: " + family);
}

int run_coherence_family(const CoherenceArgs& a, bool with_residual) {
    const std::vector<double> rs = parse_list(a.rs, "--r");
    std::vector<double> params;
    if (a.family == "custom") {
        if (a.state_path.empty())
            throw std::invalid_argument("custom family: need --state");
        params = {0.0};
    } else {
        params = parse_list(a.params, "--params");
    }

    std::ostringstream csv;
    csv << "param,r,C_r,I_r,bound_classical,bound_all,witness_fired";
    if (with_residual) csv << ",residual";
    csv << "\n";
    json rows = json::array();
    for (double param : params) {
        const PhotonDistribution p =
            make_distribution(a.family, param, a.state_path, a.tail_tol);
        for (double rv : rs) {
            const BoltzmannRatio r(rv);
            const WitnessReport rep = run_classical_witness(p, r);
            const double illum = illuminance(p, r);
            csv << io::fmt(param) << ',' << io::fmt(rv) << ','
                << io::fmt(rep.coherence) << ',' << io::fmt(illum) << ','
                << io::fmt(rep.classical_bound) << ','
                << io::fmt(rep.all_states_bound) << ','
                << (rep.fired ? 1 : 0);
            json row = {{"param", param},
                        {"r", rv},
                        {"C_r", rep.coherence},
                        {"I_r", illum},
                        {"bound_classical", rep.classical_bound},
                        {"bound_all", rep.all_states_bound},
                        {"witness_fired", rep.fired}};
            if (with_residual) {
                const double resid = rep.coherence + illum -
                                     ((1.0 + rv) * p.mean() + rv);
                csv << ',' << io::fmt(resid);
                row["residual"] = resid;
            }
            csv << "\n";
            rows.push_back(std::move(row));
        }
    }
    a.out.write(csv.str(), rows);
    return 0;
}

struct BathConvergeArgs {
    double p1 = 0.3;
    double beta = 1.0;
    std::string ks;
    Output out;
};

int run_bath_converge(const BathConvergeArgs& a) {
    if (!(a.p1 >= 0.0) || !(a.p1 <= 1.0))
        throw std::invalid_argument("bath-converge: p1 must be in [0, 1]");
    const std::vector<double> ks = parse_list(a.ks, "--ks");
    const EnergySpectrum spectrum({0.0, 1.0});
    const DiagonalState state({1.0 - a.p1, a.p1});
    const double analytic = max_qfi_qubit(state, 1.0, a.beta);

    std::ostringstream csv;
    csv << "K,finite_value,analytic,abs_error\n";
    json rows = json::array();
    for (double kd : ks) {
        if (kd < 0.0 || kd != std::floor(kd))
            throw std::invalid_argument(
                "bath-converge: --ks must be integers >= 0");
        const int k = static_cast<int>(kd);
        const double finite = finite_bath_max_qfi(
            state, spectrum, ladder_bath(1.0, k, a.beta));
        const double err = std::abs(finite - analytic);
        csv << k << ',' << io::fmt(finite) << ',' << io::fmt(analytic)
            << ',' << io::fmt(err) << "\n";
        rows.push_back({{"K", k},
                        {"finite_value", finite},
                        {"analytic", analytic},
                        {"abs_error", err}});
    }
    a.out.write(csv.str(), rows);
    return 0;
}

struct SpectrumScanArgs {
    double t_background = 0.0;
    double t_source = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    int points = 0;
    Output out;
};

int run_spectrum_scan(const SpectrumScanArgs& a) {
    if (!(a.lambda_min > 0.0) || !(a.lambda_max >= a.lambda_min))
        throw std::invalid_argument(
            "spectrum-scan: need 0 < --lambda-min <= --lambda-max");
    if (a.points < 2)
        throw std::invalid_argument("spectrum-scan: need --points >= 2");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(a.points));
    for (int i = 0; i < a.points; ++i)
        grid.push_back(a.lambda_min +
                       (a.lambda_max - a.lambda_min) *
                           static_cast<double>(i) /
                           static_cast<double>(a.points - 1));

    std::ostringstream csv;
    csv << "row,wavelength,coherence,mean_n\n";
    json j;
    j["scan"] = json::array();
    for (double lam : grid) {
        const double c =
            thermal_beam_coherence(a.t_background, a.t_source, lam);
        const double mn = thermal_beam_mean_n(a.t_source, lam);
        csv << "scan," << io::fmt(lam) << ',' << io::fmt(c) << ','
            << io::fmt(mn) << "\n";
        j["scan"].push_back(
            {{"wavelength", lam}, {"coherence", c}, {"mean_n", mn}});
    }
    const BeamScanResult best =
        thermal_beam_scan(a.t_background, a.t_source, grid);
    csv << "best," << io::fmt(best.best_wavelength) << ','
        << io::fmt(best.best_coherence) << ','
        << io::fmt(best.mean_n_at_best) << "\n";
    j["best"] = {{"wavelength", best.best_wavelength},
                 {"coherence", best.best_coherence},
                 {"mean_n", best.mean_n_at_best}};
    a.out.write(csv.str(), j);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "thermetry: phase-sensing and interaction-speed limits for states "
        "out of thermal equilibrium"};
    app.require_subcommand(1);

    QfiMaxArgs qm;
    CLI::App* c_qm = app.add_subcommand(
        "qfi-max", "best QFI under thermal operations, with the "
                   "step-profile breakpoint table");
    c_qm->add_option("--probs", qm.probs, "comma list of eigenvalues");
    c_qm->add_option("--energies", qm.energies,
                     "comma list of nondecreasing level energies");
    c_qm->add_option("--state", qm.state_path,
                     "state file ('energy probability' per line)");
    c_qm->add_option("--beta", qm.beta, "inverse temperature (>= 0)")
        ->required();
    c_qm->add_flag("--high-low-limits", qm.limits,
                   "also emit the zero- and infinite-temperature limits");
    add_output_flags(c_qm, qm.out);

    QubitSweepArgs qs;
    CLI::App* c_qs = app.add_subcommand(
        "qubit-sweep", "two-level QFI/eps^2 over a p1 grid and temperatures");
    c_qs->add_option("--temps", qs.temps,
                     "comma list of temperatures in gap units; 'inf' allowed")
        ->required();
    c_qs->add_option("--p1", qs.p1_list, "comma list of excited probabilities");
    c_qs->add_option("--p1-grid", qs.p1_grid,
                     "N for the uniform grid 0, 1/N, ..., 1");
    add_output_flags(c_qs, qs.out);

    CoherenceArgs co;
    auto add_coherence_flags = [&](CLI::App* cmd) {
        cmd->add_option("--family", co.family,
                        "fock | thermal | poisson | custom")
            ->required();
        cmd->add_option("--params", co.params,
                        "comma list (fock n / thermal ratio / poisson mean)");
        cmd->add_option("--r", co.rs, "comma list of background ratios")
            ->required();
        cmd->add_option("--state", co.state_path,
                        "photon file for --family custom");
        cmd->add_option("--tail-tol", co.tail_tol,
                        "constructor truncation tolerance");
        add_output_flags(cmd, co.out);
    };
    CLI::App* c_co = app.add_subcommand(
        "coherence", "latent coherence, illuminance, and witness bounds");
    add_coherence_flags(c_co);
    CLI::App* c_tr = app.add_subcommand(
        "tradeoff", "coherence table plus the trade-off identity residual");
    add_coherence_flags(c_tr);
    CLI::App* c_wi = app.add_subcommand(
        "witness", "classical-bound violation report");
    add_coherence_flags(c_wi);

    BathConvergeArgs bc;
    CLI::App* c_bc = app.add_subcommand(
        "bath-converge",
        "finite ladder-bath value vs the closed form over bath sizes K");
    c_bc->add_option("--p1", bc.p1, "excited-state probability")
        ->default_val(0.3);
    c_bc->add_option("--beta", bc.beta, "inverse temperature in gap units")
        ->default_val(1.0);
    c_bc->add_option("--ks", bc.ks, "comma list of bath sizes")->required();
    add_output_flags(c_bc, bc.out);

    SpectrumScanArgs sc;
    CLI::App* c_sc = app.add_subcommand(
        "spectrum-scan",
        "thermal-beam coherence over wavelength, with refined peak");
    c_sc->add_option("--t-background", sc.t_background,
                     "background temperature, kelvin")
        ->required();
    c_sc->add_option("--t-source", sc.t_source, "source temperature, kelvin")
        ->required();
    c_sc->add_option("--lambda-min", sc.lambda_min, "meters")->required();
    c_sc->add_option("--lambda-max", sc.lambda_max, "meters")->required();
    c_sc->add_option("--points", sc.points, "grid size (>= 2)")->required();
    add_output_flags(c_sc, sc.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (c_qm->parsed()) return run_qfi_max(qm);
        if (c_qs->parsed()) return run_qubit_sweep(qs);
        if (c_co->parsed()) return run_coherence_family(co, false);
        if (c_tr->parsed()) return run_coherence_family(co, true);
        if (c_wi->parsed()) return run_coherence_family(co, false);
        if (c_bc->parsed()) return run_bath_converge(bc);
        if (c_sc->parsed()) return run_spectrum_scan(sc);
    } catch (const CertificationError& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
