#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frontfix/errors.hpp"
#include "frontfix/explicit_scheme.hpp"
#include "frontfix/implicit.hpp"
#include "frontfix/io.hpp"
#include "frontfix/model.hpp"
#include "frontfix/richardson.hpp"
#include "frontfix/stability.hpp"

namespace ff = frontfix;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidArgs = 2;
constexpr int kExitSolver = 3;
constexpr int kExitToleranceNotMet = 4;
constexpr int kExitIo = 5;

bool log_enabled() {
    const char* v = std::getenv("FRONTFIX_LOG");
    return v && (std::string(v) == "debug" || std::string(v) == "info");
}

void log(const std::string& msg) {
    if (log_enabled()) std::cerr << "[frontfix] " << msg << "\n";
}

struct CommonOpts {
    ff::RunConfig cfg;
    std::string config_path;
    std::string scheme_name;
};

void add_common_options(CLI::App* cmd, CommonOpts& o, bool with_scalar_mu = true) {
    cmd->add_option("--config", o.config_path, "JSON config file (flat keys r, sigma, T, E, x_inf, J, mu, scheme)");
    cmd->add_option("--r", o.cfg.params.r, "interest rate");
    cmd->add_option("--sigma", o.cfg.params.sigma, "volatility");
    cmd->add_option("--T", o.cfg.params.T, "maturity");
    cmd->add_option("--E", o.cfg.params.E, "exercise price");
    cmd->add_option("--xinf", o.cfg.x_inf, "truncated boundary in the transformed coordinate");
    cmd->add_option("--J", o.cfg.J, "number of space intervals");
    if (with_scalar_mu) cmd->add_option("--mu", o.cfg.mu, "grid-ratio dtau/dx^2");
    cmd->add_option("--scheme", o.scheme_name, "implicit or explicit")
        ->check(CLI::IsMember({"implicit", "explicit"}));
    cmd->add_option("--out", o.cfg.out_prefix, "output path prefix");
}

// Config file first, then explicit command-line flags override it.
void finalize_config(CLI::App* cmd, CommonOpts& o) {
    auto given = [&](const char* name) {
        const CLI::Option* op = cmd->get_option_no_throw(name);
        return op && op->count() > 0;
    };
    if (!o.config_path.empty()) {
        ff::RunConfig from_file = o.cfg;
        ff::apply_config_file(from_file, o.config_path);
        ff::RunConfig merged = from_file;
        if (given("--r")) merged.params.r = o.cfg.params.r;
        if (given("--sigma")) merged.params.sigma = o.cfg.params.sigma;
        if (given("--T")) merged.params.T = o.cfg.params.T;
        if (given("--E")) merged.params.E = o.cfg.params.E;
        if (given("--xinf")) merged.x_inf = o.cfg.x_inf;
        if (given("--J")) merged.J = o.cfg.J;
        if (given("--mu")) merged.mu = o.cfg.mu;
        merged.out_prefix = o.cfg.out_prefix;
        o.cfg = merged;
    }
    if (!o.scheme_name.empty()) o.cfg.scheme = ff::parse_scheme(o.scheme_name);
    o.cfg.params.validate();
}

std::filesystem::path out_path(const ff::RunConfig& cfg, const std::string& name) {
    return std::filesystem::path(cfg.out_prefix + name);
}

ff::FrontFixedSolution run_solve(const ff::RunConfig& cfg, const ff::GridSpec& grid,
                                 ff::SolveStats* stats) {
    if (cfg.scheme == ff::Scheme::Implicit) return ff::solve(cfg.params, grid, cfg.solver, stats);
    return ff::explicit_solve(cfg.params, grid);
}

nlohmann::json grid_json(const ff::GridSpec& g) {
    return {{"x_inf", g.x_inf}, {"J", g.J}, {"mu", g.mu},
            {"dx", g.dx},       {"dtau", g.dtau}, {"N", g.N}};
}

nlohmann::json params_json(const ff::ModelParams& p) {
    return {{"r", p.r}, {"sigma", p.sigma}, {"T", p.T}, {"E", p.E}};
}

int cmd_solve(CLI::App* cmd, CommonOpts& o) {
    finalize_config(cmd, o);
    ff::GridSpec grid = ff::build_grid(o.cfg.x_inf, o.cfg.J, o.cfg.mu, o.cfg.params.T);
    log("solve: scheme=" + ff::to_string(o.cfg.scheme) + " J=" + std::to_string(grid.J) +
        " N=" + std::to_string(grid.N));
    ff::SolveStats stats;
    auto t0 = std::chrono::steady_clock::now();
    ff::FrontFixedSolution sol = run_solve(o.cfg, grid, &stats);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::ostringstream surface;
    surface << "n,tau,j,x,p\n";
    for (const auto& st : sol.states) {
        for (int j = 0; j <= grid.J; ++j) {
            surface << st.n << ',' << ff::format_float17(grid.tau(st.n)) << ',' << j << ','
                    << ff::format_float17(grid.x(j)) << ','
                    << ff::format_float17(st.p[static_cast<std::size_t>(j)]) << '\n';
        }
    }
    ff::atomic_write_file(out_path(o.cfg, "surface.csv"), surface.str());

    std::ostringstream front;
    front << "n,tau,S_f\n";
    for (const auto& st : sol.states)
        front << st.n << ',' << ff::format_float17(grid.tau(st.n)) << ','
              << ff::format_float17(st.S_f) << '\n';
    ff::atomic_write_file(out_path(o.cfg, "front.csv"), front.str());

    nlohmann::json summary = {{"params", params_json(o.cfg.params)},
                              {"grid", grid_json(grid)},
                              {"scheme", ff::to_string(o.cfg.scheme)},
                              {"S_f_final", sol.final_state().S_f},
                              {"wall_seconds", wall}};
    if (o.cfg.scheme == ff::Scheme::Implicit) {
        summary["solver_stats"] = {{"residual_evaluations", stats.residual_evaluations},
                                   {"max_step_iterations", stats.max_step_iterations},
                                   {"lu_fallback_steps", stats.lu_fallback_steps}};
    }
    ff::atomic_write_file(out_path(o.cfg, "summary.json"), summary.dump(2) + "\n");
    std::cout << "S_f^N = " << ff::format_float17(sol.final_state().S_f) << "\n";
    return kExitOk;
}

int cmd_extrapolate(CLI::App* cmd, CommonOpts& o, int levels) {
    finalize_config(cmd, o);
    if (levels < 1) throw ff::InvalidArgument("extrapolate: --levels must be at least 1");
    const int G = levels;
    std::vector<double> finals(static_cast<std::size_t>(G) + 1);
    std::vector<int> Ns(static_cast<std::size_t>(G) + 1);
    std::exception_ptr err;
    // Levels are independent solves; run them concurrently.
#pragma omp parallel for schedule(dynamic, 1)
    for (int g = 0; g <= G; ++g) {
        try {
            ff::GridSpec grid = ff::build_grid(o.cfg.x_inf, o.cfg.J << g, o.cfg.mu, o.cfg.params.T);
            ff::FrontFixedSolution sol = run_solve(o.cfg, grid, nullptr);
            finals[static_cast<std::size_t>(g)] = sol.final_state().S_f;
            Ns[static_cast<std::size_t>(g)] = grid.N;
        } catch (...) {
#pragma omp critical
            err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);

    ff::ExtrapolationTableau tab = ff::build_tableau(finals, 4.0, 1.0, 1.0);
    std::ostringstream csv;
    csv << "N";
    for (int k = 0; k <= G; ++k) csv << ",U" << k;
    csv << '\n';
    for (int g = 0; g <= G; ++g) {
        csv << Ns[static_cast<std::size_t>(g)];
        for (int k = 0; k <= G; ++k) {
            csv << ',';
            if (k <= g) csv << ff::format_float17(tab.at(g, k));
        }
        csv << '\n';
    }
    ff::atomic_write_file(out_path(o.cfg, "tableau.csv"), csv.str());
    std::cout << "final extrapolate = " << ff::format_float17(tab.final_extrapolate()) << "\n";
    return kExitOk;
}

void write_refine_outputs(const ff::RunConfig& cfg, const ff::RefinementReport& rpt) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& lev : rpt.levels) {
        levels.push_back({{"J_coarse", lev.J_coarse},
                          {"J_fine", lev.J_fine},
                          {"N_coarse", lev.N_coarse},
                          {"N_fine", lev.N_fine},
                          {"max_err_p_inf", lev.max_err_p},
                          {"max_err_sf", lev.max_err_sf},
                          {"argmax_err_sf_tau", lev.argmax_err_sf_tau},
                          {"accepted", lev.accepted}});
    }
    nlohmann::json doc = {{"eps", rpt.eps},
                          {"mu", rpt.mu},
                          {"J_start", rpt.J_start},
                          {"scheme", ff::to_string(rpt.scheme)},
                          {"accepted", rpt.accepted},
                          {"accepted_level", rpt.accepted_level},
                          {"levels", levels}};
    ff::atomic_write_file(out_path(cfg, "report.json"), doc.dump(2) + "\n");

    if (rpt.accepted) {
        const auto& lev = rpt.levels[static_cast<std::size_t>(rpt.accepted_level)];
        std::ostringstream csv;
        csv << "n,tau,err_p_inf,err_sf\n";
        for (std::size_t i = 0; i < lev.tau.size(); ++i) {
            int n = (i < lev.tau.size() - 1 || lev.tau.size() == static_cast<std::size_t>(lev.N_coarse))
                        ? static_cast<int>(i) + 1
                        : lev.N_coarse;
            csv << n << ',' << ff::format_float17(lev.tau[i]) << ','
                << ff::format_float17(lev.err_p_inf[i]) << ','
                << ff::format_float17(lev.err_sf[i]) << '\n';
        }
        ff::atomic_write_file(out_path(cfg, "errors_g" + std::to_string(rpt.accepted_level) + ".csv"),
                              csv.str());
    }
}

int cmd_refine(CLI::App* cmd, CommonOpts& o, double eps, int max_levels) {
    finalize_config(cmd, o);
    try {
        ff::RefinementReport rpt = ff::refine_until(o.cfg.params, o.cfg.x_inf, o.cfg.mu, o.cfg.J,
                                                    eps, o.cfg.scheme, max_levels, 1.0, o.cfg.solver);
        write_refine_outputs(o.cfg, rpt);
        const auto& lev = rpt.levels.back();
        std::cout << "accepted J = " << lev.J_fine << ", N = " << lev.N_fine << "\n";
        return kExitOk;
    } catch (const ff::ToleranceNotMetError& e) {
        write_refine_outputs(o.cfg, e.report);
        std::cerr << "error: " << e.what() << "\n";
        return kExitToleranceNotMet;
    }
}

int cmd_stability(CLI::App* cmd, CommonOpts& o, const std::vector<double>& mus, int samples,
                  double g) {
    finalize_config(cmd, o);
    if (mus.empty()) throw ff::InvalidArgument("stability: --mu list must not be empty");
    const double dx = o.cfg.x_inf / o.cfg.J;
    std::ostringstream csv;
    csv << "mu,N,k_dx,modulus\n";
    for (double mu : mus) {
        ff::GridSpec grid = ff::build_grid(o.cfg.x_inf, o.cfg.J, mu, o.cfg.params.T);
        ff::StabilityReport rep =
            ff::stability_scan(o.cfg.scheme, o.cfg.params, mu, dx, {g}, samples);
        for (const auto& s : rep.samples)
            csv << ff::format_float17(mu) << ',' << grid.N << ',' << ff::format_float17(s.phase)
                << ',' << ff::format_float17(s.modulus) << '\n';
        std::cout << "mu = " << mu << ": max|lambda| = " << ff::format_float17(rep.max_modulus)
                  << (rep.stable ? " (stable)" : " (unstable)") << "\n";
    }
    ff::atomic_write_file(out_path(o.cfg, "stability.csv"), csv.str());
    return kExitOk;
}

struct RefRow {
    double S;
    std::string true_value, pm, em, emr;
};

std::vector<RefRow> load_refs(const std::filesystem::path& path) {
    std::istringstream in(ff::read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw ff::IoError("refs file is empty");
    std::vector<RefRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        RefRow row;
        std::string s;
        std::getline(ls, s, ',');
        row.S = std::stod(s);
        std::getline(ls, row.true_value, ',');
        std::getline(ls, row.pm, ',');
        std::getline(ls, row.em, ',');
        std::getline(ls, row.emr, ',');
        rows.push_back(row);
    }
    return rows;
}

int cmd_price(CLI::App* cmd, CommonOpts& o, const std::vector<double>& assets, bool extrapolate,
              const std::string& refs_path) {
    finalize_config(cmd, o);
    if (assets.empty()) throw ff::InvalidArgument("price: --assets must not be empty");
    for (double a : assets)
        if (!(a > 0.0)) throw ff::InvalidArgument("price: assets must be positive");

    ff::GridSpec grid = ff::build_grid(o.cfg.x_inf, o.cfg.J, o.cfg.mu, o.cfg.params.T);
    ff::FrontFixedSolution sol = run_solve(o.cfg, grid, nullptr);

    std::vector<std::string> price_cells(assets.size());
    std::vector<double> prices(assets.size());
    bool any_out_of_domain = false;
    for (std::size_t i = 0; i < assets.size(); ++i) {
        try {
            prices[i] = ff::to_physical(sol.final_state(), grid, o.cfg.params, assets[i]);
            price_cells[i] = ff::format_float17(prices[i]);
        } catch (const ff::OutOfDomainError&) {
            price_cells[i] = "out-of-domain";
            any_out_of_domain = true;
        }
    }

    std::vector<std::string> extra_cells;
    if (extrapolate) {
        ff::GridSpec fine_grid = ff::build_grid(o.cfg.x_inf, 2 * o.cfg.J, o.cfg.mu, o.cfg.params.T);
        ff::FrontFixedSolution fine = run_solve(o.cfg, fine_grid, nullptr);
        extra_cells.resize(assets.size());
        for (std::size_t i = 0; i < assets.size(); ++i) {
            try {
                double pf = ff::to_physical(fine.final_state(), fine_grid, o.cfg.params, assets[i]);
                if (price_cells[i] == "out-of-domain") {
                    extra_cells[i] = "out-of-domain";
                } else {
                    extra_cells[i] = ff::format_float17(ff::extrapolate_once(prices[i], pf, 4.0, 1.0));
                }
            } catch (const ff::OutOfDomainError&) {
                extra_cells[i] = "out-of-domain";
                any_out_of_domain = true;
            }
        }
    }

    std::vector<RefRow> refs;
    if (!refs_path.empty()) refs = load_refs(refs_path);

    std::ostringstream csv;
    csv << "S,price";
    if (extrapolate) csv << ",extrapolated";
    if (!refs.empty()) csv << ",true_value,PM,EM,EMR";
    csv << '\n';
    for (std::size_t i = 0; i < assets.size(); ++i) {
        csv << ff::format_float17(assets[i]) << ',' << price_cells[i];
        if (extrapolate) csv << ',' << extra_cells[i];
        if (!refs.empty()) {
            const RefRow* match = nullptr;
            for (const auto& r : refs)
                if (std::abs(r.S - assets[i]) < 1e-9) match = &r;
            if (match)
                csv << ',' << match->true_value << ',' << match->pm << ',' << match->em << ','
                    << match->emr;
            else
                csv << ",,,,";
        }
        csv << '\n';
    }
    ff::atomic_write_file(out_path(o.cfg, "prices.csv"), csv.str());
    for (std::size_t i = 0; i < assets.size(); ++i)
        std::cout << "P(" << assets[i] << ") = " << price_cells[i] << "\n";
    return any_out_of_domain ? kExitInvalidArgs : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Front-fixing finite-difference pricer for American puts"};
    app.require_subcommand(1);

    CommonOpts solve_o, extra_o, refine_o, stab_o, price_o;
    int levels = 5;
    double eps = 0.005;
    int max_levels = 12;
    std::vector<double> mus;
    int samples = 1024;
    double frozen_g = 0.0;
    std::vector<double> assets;
    bool with_extrapolation = false;
    std::string refs_path;

    CLI::App* c_solve = app.add_subcommand("solve", "march one grid and write the surface and front");
    add_common_options(c_solve, solve_o);

    CLI::App* c_extra = app.add_subcommand(
        "extrapolate", "solve on J, 2J, ..., J*2^G and emit the Richardson tableau");
    add_common_options(c_extra, extra_o);
    c_extra->add_option("--levels", levels, "number of extrapolation levels G");

    CLI::App* c_refine =
        app.add_subcommand("refine", "double the grid until the error estimator meets --eps");
    add_common_options(c_refine, refine_o);
    c_refine->add_option("--eps", eps, "error tolerance")->required();
    c_refine->add_option("--levels", max_levels, "maximum number of refinement levels");

    CLI::App* c_stab = app.add_subcommand("stability", "amplification-factor scans per grid-ratio");
    add_common_options(c_stab, stab_o, /*with_scalar_mu=*/false);
    c_stab->add_option("--mu", mus, "grid-ratio list")->delimiter(',')->required();
    c_stab->add_option("--samples", samples, "phase samples per scan");
    c_stab->add_option("--g", frozen_g, "frozen front term");

    CLI::App* c_price = app.add_subcommand("price", "option prices at given asset levels");
    add_common_options(c_price, price_o);
    c_price->add_option("--assets", assets, "asset prices")->delimiter(',')->required();
    c_price->add_flag("--extrapolate", with_extrapolation,
                      "add prices extrapolated from a (J, 2J) pair");
    c_price->add_option("--refs", refs_path, "reference price table to merge into the output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInvalidArgs;
    }

    try {
        if (c_solve->parsed()) return cmd_solve(c_solve, solve_o);
        if (c_extra->parsed()) return cmd_extrapolate(c_extra, extra_o, levels);
        if (c_refine->parsed()) return cmd_refine(c_refine, refine_o, eps, max_levels);
        if (c_stab->parsed()) return cmd_stability(c_stab, stab_o, mus, samples, frozen_g);
        if (c_price->parsed())
            return cmd_price(c_price, price_o, assets, with_extrapolation, refs_path);
    } catch (const ff::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidArgs;
    } catch (const ff::ToleranceNotMetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitToleranceNotMet;
    } catch (const ff::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ff::Error& e) {
        // nonconvergence, bracketing, instability, overflow, singular front
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitInvalidArgs;
}
