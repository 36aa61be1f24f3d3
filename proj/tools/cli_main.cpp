// Command-line front end: JSON problem files in, JSON results (optionally
// CSV tables) out.
//
// Exit codes: 0 success, 1 usage error, 2 validation failure,
//             3 computation error (size caps and the like).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tailbounds/json_io.hpp"
#include "tailbounds/tailbounds.hpp"
#include "tailbounds/verify.hpp"

namespace tb = tailbounds;
using nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

std::vector<tb::TailFn> read_tails(const std::string& path) {
    const json j = read_json_file(path);
    std::vector<tb::TailFn> out;
    if (j.contains("tails")) {
        for (const auto& t : j.at("tails")) out.push_back(tb::tail_from_json(t));
    } else {
        out.push_back(tb::tail_from_json(j));
    }
    return out;
}

std::vector<tb::TwoTail> read_two_tails(const std::string& path) {
    const json j = read_json_file(path);
    std::vector<tb::TwoTail> out;
    if (j.contains("tails")) {
        for (const auto& t : j.at("tails")) out.push_back(tb::two_tail_from_json(t));
    } else {
        out.push_back(tb::two_tail_from_json(j));
    }
    return out;
}

void require_all_valid(const std::vector<tb::TailFn>& fs) {
    for (const auto& f : fs) tb::require_valid(f, "input");
}

int run(int argc, char** argv) {
    CLI::App app{"Sharpest tail bounds for functions of tail-bounded "
                 "random variables"};
    app.require_subcommand(1);

    // --- validate ---------------------------------------------------------
    std::string validate_file;
    auto* cmd_validate = app.add_subcommand(
        "validate", "Check a tail-function JSON file against its invariants");
    cmd_validate->add_option("file", validate_file)->required();

    // --- xtilde -----------------------------------------------------------
    std::string xt_tail;
    std::vector<double> xt_s;
    auto* cmd_xtilde = app.add_subcommand(
        "xtilde", "Evaluate the largest quantile map of a right/absolute tail");
    cmd_xtilde->add_option("--tail", xt_tail)->required();
    cmd_xtilde->add_option("--s", xt_s, "query points in (0,1)")
        ->required()
        ->delimiter(',');

    // --- shift ------------------------------------------------------------
    std::string sh_tail, sh_grid, sh_op = "right";
    double sh_c = 0.0;
    bool sh_csv = false;
    double sh_tmin = 0.0, sh_tmax = 0.0;
    std::size_t sh_steps = 0;
    auto* cmd_shift = app.add_subcommand(
        "shift", "Apply a shift operator over a finite coordinate set");
    cmd_shift->add_option("--tail", sh_tail)->required();
    cmd_shift->add_option("--grid", sh_grid)->required();
    cmd_shift->add_option("--op", sh_op)
        ->check(CLI::IsMember({"right", "left", "two", "abs"}));
    cmd_shift->add_option("--c", sh_c, "split point for the two-sided operator");
    cmd_shift->add_flag("--csv", sh_csv, "emit a t,rcdf table instead of JSON");
    cmd_shift->add_option("--tmin", sh_tmin);
    cmd_shift->add_option("--tmax", sh_tmax);
    cmd_shift->add_option("--steps", sh_steps);

    // --- solve-finite -----------------------------------------------------
    std::string fin_tails, fin_points;
    bool fin_two = false;
    std::size_t fin_cap = 16;
    auto* cmd_finite = app.add_subcommand(
        "solve-finite",
        "Sharpest bound for a finite target set, independent coordinates");
    cmd_finite->add_option("--tails", fin_tails)->required();
    cmd_finite->add_option("--points", fin_points)->required();
    cmd_finite->add_flag("--two-tail", fin_two);
    cmd_finite->add_option("--cap", fin_cap);

    // --- solve-dep --------------------------------------------------------
    std::string dep_tails, dep_points, dep_method = "lp";
    auto* cmd_dep = app.add_subcommand(
        "solve-dep",
        "Sharpest bound for a finite target set, dependence allowed");
    cmd_dep->add_option("--tails", dep_tails)->required();
    cmd_dep->add_option("--points", dep_points)->required();
    cmd_dep->add_option("--method", dep_method)
        ->check(CLI::IsMember({"lp", "2d"}));

    // --- example1 ---------------------------------------------------------
    std::string ex_f1, ex_f2;
    double ex_rate = 0.0, ex_a1 = 0.0, ex_b1 = 0.0, ex_a2 = 0.0, ex_b2 = 0.0;
    auto* cmd_ex1 = app.add_subcommand(
        "example1",
        "Closed form for the two-point antichain target {(a1,b1),(a2,b2)}");
    cmd_ex1->add_option("--f1", ex_f1);
    cmd_ex1->add_option("--f2", ex_f2);
    cmd_ex1->add_option("--exp-rate", ex_rate,
                        "shortcut: both tails exponential with this rate");
    cmd_ex1->add_option("--a1", ex_a1)->required();
    cmd_ex1->add_option("--b1", ex_b1)->required();
    cmd_ex1->add_option("--a2", ex_a2)->required();
    cmd_ex1->add_option("--b2", ex_b2)->required();

    // --- gaussian-sum -----------------------------------------------------
    std::vector<double> gs_mus, gs_sigmas;
    double gs_t = 0.0;
    auto* cmd_gauss = app.add_subcommand(
        "gaussian-sum", "Sharpest right tail of a sum of independent Gaussians");
    cmd_gauss->add_option("--mus", gs_mus)->required()->delimiter(',');
    cmd_gauss->add_option("--sigmas", gs_sigmas)->required()->delimiter(',');
    cmd_gauss->add_option("--t", gs_t)->required();

    // --- monotone-tail ----------------------------------------------------
    std::string mt_g = "sum", mt_tails, mt_mode = "grid";
    double mt_t = 0.0;
    std::size_t mt_samples = 1000000, mt_resolution = 4096;
    std::uint64_t mt_seed = 1;
    bool mt_positive = false;
    auto* cmd_mono = app.add_subcommand(
        "monotone-tail",
        "Sharpest tail of a monotone function of independent coordinates");
    cmd_mono->add_option("--g", mt_g)->check(CLI::IsMember({"sum", "max"}));
    cmd_mono->add_option("--tails", mt_tails)->required();
    cmd_mono->add_option("--t", mt_t)->required();
    cmd_mono->add_option("--mode", mt_mode)->check(CLI::IsMember({"mc", "grid"}));
    cmd_mono->add_option("--samples", mt_samples);
    cmd_mono->add_option("--resolution", mt_resolution);
    cmd_mono->add_option("--seed", mt_seed);
    cmd_mono->add_flag("--positive", mt_positive,
                       "absolute-tail variant (nonnegative-orthant monotone g)");

    // --- schur-tail -------------------------------------------------------
    std::string st_tensor, st_tails;
    double st_t = 0.0;
    std::size_t st_samples = 1000000;
    std::uint64_t st_seed = 1;
    bool st_abs = false;
    auto* cmd_schur = app.add_subcommand(
        "schur-tail", "Monte Carlo tail of a Schur-multiplier trace");
    cmd_schur->add_option("--tensor", st_tensor)->required();
    cmd_schur->add_option("--tails", st_tails)->required();
    cmd_schur->add_option("--t", st_t)->required();
    cmd_schur->add_option("--samples", st_samples);
    cmd_schur->add_option("--seed", st_seed);
    cmd_schur->add_flag("--abs", st_abs);

    // --- cont1d -----------------------------------------------------------
    std::string c1_g, c1_tail;
    double c1_t = 0.0;
    auto* cmd_cont = app.add_subcommand(
        "cont1d",
        "Exact sharpest tail of a continuous piecewise-linear g of one "
        "coordinate");
    cmd_cont->add_option("--g", c1_g, "JSON: {knots, slope_left, slope_right}")
        ->required();
    cmd_cont->add_option("--tail", c1_tail)->required();
    cmd_cont->add_option("--t", c1_t)->required();

    // --- verify -----------------------------------------------------------
    std::string vf_tails, vf_points;
    std::size_t vf_restarts = 50;
    std::uint64_t vf_seed = 1;
    auto* cmd_verify = app.add_subcommand(
        "verify", "Run the oracle suite on a problem and report pass/fail");
    cmd_verify->add_option("--tails", vf_tails)->required();
    cmd_verify->add_option("--points", vf_points)->required();
    cmd_verify->add_option("--restarts", vf_restarts);
    cmd_verify->add_option("--seed", vf_seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    if (*cmd_validate) {
        const json j = read_json_file(validate_file);
        json report;
        std::vector<std::string> violations;
        const auto collect = [&](const json& tj) {
            if (tj.at("kind").get<std::string>() == "two") {
                for (const auto& msg : tb::validate(tb::two_tail_from_json(tj)))
                    violations.push_back(msg);
            } else {
                for (const auto& msg : tb::validate(tb::tail_from_json(tj)))
                    violations.push_back(msg);
            }
        };
        if (j.contains("tails")) {
            for (const auto& tj : j.at("tails")) collect(tj);
        } else {
            collect(j);
        }
        report["ok"] = violations.empty();
        report["violations"] = violations;
        std::cout << report.dump(2) << "\n";
        return violations.empty() ? 0 : 2;
    }

    if (*cmd_xtilde) {
        const tb::TailFn f = tb::tail_from_json(read_json_file(xt_tail));
        tb::require_valid(f, "xtilde");
        const tb::NeatRV x = tb::xtilde(f);
        json out = json::array();
        for (double s : xt_s) out.push_back({{"s", s}, {"x", x.quantile(s)}});
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (*cmd_shift) {
        const json gj = read_json_file(sh_grid);
        const tb::Grid grid = tb::grid_from_json(gj);
        if (grid.coords.size() != 1) {
            throw std::invalid_argument("shift: needs a one-coordinate grid");
        }
        const tb::CoordSet& g = grid.coords.front();
        const json tj = read_json_file(sh_tail);
        json out;
        const tb::TailFn* rcdf_tail = nullptr;
        tb::TailFn tail_store = tb::TailFn::exponential(tb::TailKind::Right, 1.0);
        bool abs_rcdf = false;
        if (sh_op == "two") {
            const tb::TwoTail tt = tb::two_tail_from_json(tj);
            out = tb::atoms_to_json(tb::shift_two_atoms(tt, g, sh_c));
        } else {
            tail_store = tb::tail_from_json(tj);
            tb::require_valid(tail_store, "shift");
            rcdf_tail = &tail_store;
            if (sh_op == "right") {
                const tb::ShiftedAtoms r = tb::shift_right_atoms(tail_store, g);
                out = tb::atoms_to_json(r.atoms);
                out["residual_mass"] = r.residual_mass;
                out["residual_value"] = r.residual_value;
            } else if (sh_op == "left") {
                const tb::ShiftedAtoms r = tb::shift_left_atoms(tail_store, g);
                out = tb::atoms_to_json(r.atoms);
                out["residual_mass"] = r.residual_mass;
                out["residual_value"] = r.residual_value;
            } else {
                out = tb::atoms_to_json(tb::shift_abs_atoms(tail_store, g).atoms);
                abs_rcdf = true;
            }
        }
        if (sh_csv && rcdf_tail != nullptr && sh_steps > 0) {
            std::printf("t,rcdf\n");
            for (std::size_t i = 0; i <= sh_steps; ++i) {
                const double t =
                    sh_tmin + (sh_tmax - sh_tmin) * static_cast<double>(i) /
                                  static_cast<double>(sh_steps);
                const double r = abs_rcdf
                                     ? tb::shift_abs_rcdf(*rcdf_tail, g, t)
                                     : tb::shift_right_rcdf(*rcdf_tail, g, t);
                std::printf("%.12g,%.12g\n", t, r);
            }
            return 0;
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (*cmd_finite) {
        const tb::PointSet v = tb::points_from_json(read_json_file(fin_points));
        tb::SolveResult r;
        if (fin_two) {
            r = tb::solve_finite_two(read_two_tails(fin_tails), v, fin_cap);
        } else {
            const auto fs = read_tails(fin_tails);
            require_all_valid(fs);
            r = tb::solve_finite_abs(fs, v, fin_cap);
        }
        std::cout << tb::solve_result_to_json(r).dump(2) << "\n";
        return 0;
    }

    if (*cmd_dep) {
        const auto fs = read_tails(dep_tails);
        require_all_valid(fs);
        const tb::PointSet v = tb::points_from_json(read_json_file(dep_points));
        json out;
        if (dep_method == "2d") {
            if (fs.size() != 2) {
                throw std::invalid_argument("solve-dep --method 2d: needs 2 tails");
            }
            out["value"] = tb::solve_dep_2d(fs[0], fs[1], v);
        } else {
            const tb::DepResult r = tb::solve_dep_lp(fs, v);
            out["value"] = r.value;
            out["masses"] = r.masses;
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (*cmd_ex1) {
        std::optional<tb::TailFn> f1, f2;
        if (!ex_f1.empty()) f1 = tb::tail_from_json(read_json_file(ex_f1));
        if (!ex_f2.empty()) f2 = tb::tail_from_json(read_json_file(ex_f2));
        if (!f1 || !f2) {
            if (!(ex_rate > 0.0)) {
                throw std::invalid_argument(
                    "example1: give --f1/--f2 files or a positive --exp-rate");
            }
            f1 = tb::TailFn::exponential(tb::TailKind::Absolute, ex_rate);
            f2 = *f1;
        }
        tb::require_valid(*f1, "example1");
        tb::require_valid(*f2, "example1");
        std::printf("%.12g\n",
                    tb::solve_example1(*f1, *f2, ex_a1, ex_b1, ex_a2, ex_b2));
        return 0;
    }

    if (*cmd_gauss) {
        std::printf("%.12g\n", tb::gaussian_sum_sharp_tail(
                                   tb::GaussianSpec{gs_mus, gs_sigmas}, gs_t));
        return 0;
    }

    if (*cmd_mono) {
        const auto fs = read_tails(mt_tails);
        require_all_valid(fs);
        tb::MonotoneFn g;
        g.declared_nondecreasing = true;
        if (mt_g == "sum") {
            g.fn = [](const std::vector<double>& x) {
                double s = 0.0;
                for (double v : x) s += v;
                return s;
            };
        } else {
            g.fn = [](const std::vector<double>& x) {
                double m = -tb::kInf;
                for (double v : x) m = std::max(m, v);
                return m;
            };
        }
        tb::TailEstimate e;
        if (mt_positive) {
            e = tb::positive_multinomial_sharp_tail_mc(g, fs, mt_t, mt_samples,
                                                       mt_seed);
        } else if (mt_mode == "mc") {
            e = tb::monotone_sharp_tail_mc(g, fs, mt_t, mt_samples, mt_seed);
        } else {
            e = tb::monotone_sharp_tail_grid(g, fs, mt_t, mt_resolution);
        }
        json out{{"estimate", e.estimate},
                 {"stderr", e.stderr_},
                 {"lower", e.lower},
                 {"upper", e.upper}};
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (*cmd_schur) {
        const tb::SchurTensor m = tb::tensor_from_json(read_json_file(st_tensor));
        const auto fs = read_tails(st_tails);
        require_all_valid(fs);
        const tb::TailEstimate e =
            tb::schur_trace_sharp_tail(m, fs, st_t, st_samples, st_seed, st_abs);
        json out{{"estimate", e.estimate}, {"stderr", e.stderr_}};
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (*cmd_cont) {
        const json gj = read_json_file(c1_g);
        tb::PiecewiseLinearG g;
        for (const auto& k : gj.at("knots")) {
            g.knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
        }
        g.slope_left = gj.at("slope_left").get<double>();
        g.slope_right = gj.at("slope_right").get<double>();
        const tb::TailFn f = tb::tail_from_json(read_json_file(c1_tail));
        tb::require_valid(f, "cont1d");
        std::printf("%.12g\n", tb::continuous_1d_sharp_tail(g, f, c1_t));
        return 0;
    }

    if (*cmd_verify) {
        const auto fs = read_tails(vf_tails);
        require_all_valid(fs);
        const tb::PointSet v = tb::points_from_json(read_json_file(vf_points));
        json checks = json::array();
        bool all_ok = true;
        const auto record = [&](const std::string& name, bool ok,
                                const json& detail) {
            checks.push_back({{"check", name}, {"ok", ok}, {"detail", detail}});
            all_ok = all_ok && ok;
        };

        const tb::SolveResult solver = tb::solve_finite_abs(fs, v);
        const auto feas = tb::check_feasible_abs(solver.witness, fs);
        record("solver witness feasible", feas.empty(), feas);

        const tb::BruteForceResult bf =
            tb::brute_force_independent(fs, v, vf_restarts, vf_seed);
        record("ascent lower bound <= solver",
               bf.value <= solver.value + tb::kTolTranscendental,
               {{"ascent", bf.value}, {"solver", solver.value}});
        const auto bf_feas = tb::check_feasible_abs(bf.witness, fs);
        record("ascent witness feasible", bf_feas.empty(), bf_feas);

        const tb::DepResult dep = tb::solve_dep_lp(fs, v);
        record("dependent bound >= independent bound",
               dep.value >= solver.value - tb::kTolTranscendental,
               {{"dependent", dep.value}, {"independent", solver.value}});
        const tb::DepResult dep_q = tb::solve_dep_lp(fs, tb::q_map(v));
        const tb::DepResult dep_sw = tb::solve_dep_lp(fs, tb::sw_reduce(v));
        record("dependent bound invariant under reductions",
               std::abs(dep.value - dep_q.value) <= tb::kTolTranscendental &&
                   std::abs(dep.value - dep_sw.value) <= tb::kTolTranscendental,
               {{"raw", dep.value},
                {"abs-reduced", dep_q.value},
                {"boundary-reduced", dep_sw.value}});

        json report{{"ok", all_ok}, {"checks", checks}};
        std::cout << report.dump(2) << "\n";
        return all_ok ? 0 : 2;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::length_error& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
