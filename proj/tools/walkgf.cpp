// walkgf: exact generating functions for double-barrier asymmetric walks,
// verified against an absorbing-chain oracle.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <thread>

#include "walkgf/barrier_gf.hpp"
#include "walkgf/chain.hpp"
#include "walkgf/general_gf.hpp"
#include "walkgf/json_io.hpp"
#include "walkgf/root_series.hpp"
#include "walkgf/verify.hpp"

using namespace walkgf;

namespace {

void print_series_table(const PuiseuxSeries& s) {
    for (const auto& [k, c] : s.raw_coeffs())
        std::cout << std::setw(10) << ("z^" + s.exponent_of(k).str()) << "  " << c.str() << "\n";
}

void print_coeff_rows(const json& rows) {
    for (const auto& row : rows)
        std::cout << std::setw(10) << ("z^" + row[0].get<std::string>()) << "  "
                  << row[1].get<std::string>() << "\n";
}

void print_poly_row(const char* name, const json& poly) {
    std::cout << name << ":";
    for (auto it = poly.begin(); it != poly.end(); ++it)
        std::cout << "  z^" << it.key() << "*" << it.value().get<std::string>();
    std::cout << "\n";
}

void emit(const json& j, bool table) {
    if (!table) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (j.contains("coefficients")) {
        print_coeff_rows(j["coefficients"]);
    } else if (j.contains("series")) {
        print_coeff_rows(j["series"]);
    } else if (j.contains("numerator")) {
        print_poly_row("numerator", j["numerator"]);
        print_poly_row("denominator", j["denominator"]);
        std::cout << "normalization: shift " << j["normalization"]["shift"] << ", scale "
                  << j["normalization"]["scale"] << "\n";
        if (j.contains("expansion")) print_coeff_rows(j["expansion"]);
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

std::set<long> parse_target(const std::string& t, const AbsorbingChain& chain) {
    if (t == "left") return chain.left_set();
    if (t == "right") return chain.right_set();
    if (t == "inner-left") return chain.inner_left();
    json j = json::parse(t, nullptr, false);
    if (j.is_discarded() || !j.is_array()) throw InvalidSpec("target must be left|right|inner-left|[cells]");
    std::set<long> out;
    for (const auto& c : j) out.insert(c.get<long>());
    return out;
}

json series_payload(const PuiseuxSeries& s) { return to_json(s); }

long default_jobs() {
    if (const char* env = std::getenv("WALKGF_JOBS")) {
        long v = std::atol(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<long>(hc) : 2;
}

int run(int argc, char** argv) {
    CLI::App app{"exact barrier-walk generating functions with an absorbing-chain oracle"};
    app.require_subcommand(1);
    bool table = false;
    app.add_flag("--table", table, "human-readable columns instead of JSON");

    // ---- oracle ----------------------------------------------------------
    auto* oracle = app.add_subcommand("oracle", "first-passage series from the absorbing chain");
    long oy = 2, ob = 1, om = 8, ostart = -1, oorder = 16;
    std::string otarget = "right", omark = "back", op = "1/2";
    oracle->add_option("--y", oy, "forward step size");
    oracle->add_option("--b", ob, "backward step size");
    oracle->add_option("--m", om, "left edge of the right barrier block");
    oracle->add_option("--start", ostart, "start cell (default m-1)");
    oracle->add_option("--target", otarget, "left | right | inner-left | JSON cell list");
    oracle->add_option("--order", oorder, "emit coefficients for exponents 0..order");
    oracle->add_option("--marking", omark, "back | total | people");
    oracle->add_option("--p", op, "forward probability as p/q");
    oracle->callback([&] {
        WalkSpec w{oy, ob, om, ostart >= 0 ? ostart : om - 1, Rational::from_string(op)};
        auto chain = build_chain(w);
        auto target = parse_target(otarget, chain);
        auto s = first_passage_series(chain, w.s, target, oorder + 1, marking_from_string(omark));
        json out{{"spec", to_json(w)},
                 {"target", otarget},
                 {"marking", omark},
                 {"coefficients", series_payload(s)}};
        emit(out, table);
    });

    // ---- gf --------------------------------------------------------------
    auto* gf = app.add_subcommand("gf", "constructed generating functions");
    gf->require_subcommand(1);
    long gy = 2, gm = 8, gb = 1, gkappa = 0, gorder = -1, gk = 1, gs = 2, gv = 5;
    std::string gside = "left";
    bool gexpand = false;

    auto add_expand = [&](CLI::App* cmd) {
        cmd->add_option("--order", gorder, "also expand through z^order");
        cmd->add_flag("--expand", gexpand, "include the raw expansion");
    };
    auto gf_payload = [&](const RationalGF& r) {
        json j = to_json(r);
        if (gexpand || gorder >= 0) {
            long n = gorder >= 0 ? gorder : 16;
            j["expansion"] = series_payload(r.expand_raw(n + 1));
        }
        return j;
    };

    auto* oneback = gf->add_subcommand("one-back", "exact y-forward/1-back GFs (s = m-1)");
    oneback->add_option("--y", gy)->required();
    oneback->add_option("--m", gm)->required();
    oneback->add_option("--side", gside, "left | right");
    add_expand(oneback);
    oneback->callback([&] {
        RationalGF r = gside == "left" ? p_left_one_back(gy, gm) : p_right_one_back(gy, gm);
        emit(gf_payload(r), table);
    });

    auto* twoback = gf->add_subcommand("two-back", "exact y-forward/2-back GF (odd y, even m)");
    twoback->add_option("--y", gy)->required();
    twoback->add_option("--m", gm)->required();
    add_expand(twoback);
    twoback->callback([&] { emit(gf_payload(gf_two_back(gy, gm)), table); });

    auto* exact3 = gf->add_subcommand("exact-3f2b", "3-forward/2-back pipeline for m = 6 kappa");
    exact3->add_option("--kappa", gkappa, "m = 6 kappa");
    exact3->add_option("--m", gm, "alternative to --kappa; must be a multiple of 6");
    add_expand(exact3);
    exact3->callback([&] {
        long kap = gkappa > 0 ? gkappa : (gm % 6 == 0 ? gm / 6 : 0);
        if (kap < 1) throw PreconditionViolation("exact-3f2b needs --kappa or --m divisible by 6");
        emit(gf_payload(gf_exact_3f2b(kap)), table);
    });

    auto* duchon = gf->add_subcommand("duchon", "two-left-barrier series of x^v - 2x^2 + z");
    bool ginner = false;
    duchon->add_option("--v", gv, "trinomial degree (y + 2)");
    duchon->add_option("--s", gs, "start cell >= 2");
    duchon->add_flag("--inner", ginner, "the explicit inner-cell series (v=5, s=2)");
    duchon->add_option("--order", gorder, "series order");
    duchon->callback([&] {
        long n = gorder >= 0 ? gorder : 24;
        PuiseuxSeries s = ginner ? duchon_inner_series(n + 1) : duchon_two_left(gv, gs, n + 1);
        emit(json{{"series", series_payload(s)},
                  {"marking", ginner ? "people" : "back"}},
             table);
    });

    auto* single = gf->add_subcommand("single-barrier", "Fuss-Catalan single-barrier series");
    single->add_option("--k", gk, "start cell");
    single->add_option("--order", gorder, "series order");
    single->callback([&] {
        long n = gorder >= 0 ? gorder : 24;
        emit(json{{"series", series_payload(fuss_single_barrier(gk, n + 1))}}, table);
    });

    auto* general = gf->add_subcommand("general", "dispatch on b: 1 -> one-back, 2 -> two-back");
    general->add_option("--y", gy)->required();
    general->add_option("--b", gb)->required();
    general->add_option("--m", gm)->required();
    general->add_option("--side", gside, "left | right (b = 1 only)");
    bool gshow_strings = false, gshow_mu = false;
    general->add_flag("--show-strings", gshow_strings, "attach the string decomposition");
    general->add_flag("--show-mu", gshow_mu, "attach the mu blocks");
    add_expand(general);
    general->callback([&] {
        if (gb == 1) {
            RationalGF r = gside == "left" ? p_left_one_back(gy, gm) : p_right_one_back(gy, gm);
            emit(gf_payload(r), table);
            return;
        }
        if (gb != 2) throw PreconditionViolation("closed forms exist for b = 1 or b = 2 only");
        json j = gf_payload(gf_two_back(gy, gm));  // validates the odd-y/even-m regime
        if (gshow_mu) {
            MuDecomposition d = mu_decompose(gy, gm);
            j["mu"] = {{"u", d.degree_bound_u},
                       {"needed_mu", d.needed_mu},
                       {"mu1", to_json(d.mu1)},
                       {"mu2_block", series_payload(d.mu2_block)},
                       {"denominator", to_json(d.denominator)}};
        }
        if (gshow_strings) {
            json arr = json::array();
            for (long mu = 1; mu <= 2; ++mu) {
                for (const auto& t : enumerate_strings(gy, 2, mu)) {
                    json tj = to_json(t);
                    auto r = string_series(t, gm, gm + 1);
                    json sols = json::array();
                    for (const auto& sol : r.solutions)
                        sols.push_back(json{{"v", sol.v},
                                            {"V", sol.V},
                                            {"theta", sol.theta.str()},
                                            {"Q", sol.Q.str()}});
                    tj["residue_solutions"] = sols;
                    if (auto e = r.series.min_exponent()) tj["leading_exponent"] = e->str();
                    tj["dropped_irrational"] = r.dropped_irrational;
                    arr.push_back(tj);
                }
            }
            j["strings"] = arr;
        }
        emit(j, table);
    });

    // ---- roots -----------------------------------------------------------
    auto* roots = app.add_subcommand("roots", "trinomial root powers: series and numerics");
    long rv = 3, ru = 1, rk = 1, rbranch = 0, rorder = 12;
    std::string rj = "2", rkind = "small";
    double rz = -1;
    roots->add_option("--v", rv)->required();
    roots->add_option("--u", ru)->required();
    roots->add_option("--j", rj, "trinomial middle coefficient");
    roots->add_option("--k", rk, "power");
    roots->add_option("--branch", rbranch, "branch index");
    roots->add_option("--kind", rkind, "small | large | phi");
    roots->add_option("--order", rorder, "series order");
    roots->add_option("--numeric-z", rz, "also list numeric roots at this z");
    roots->callback([&] {
        TrinomialSpec spec{rv, ru, Rational::from_string(rj)};
        json j;
        if (rkind == "phi") {
            if (rv != 5 || ru != 2) throw PreconditionViolation("phi sums are defined for x^5 - 2x^2 + z");
            j["phi"] = series_payload(phi_sum_series(rk, rorder + 1));
        } else {
            RootPowerSeries rp = rkind == "small"
                                     ? small_root_series(spec, rk, rbranch, Rational(rorder + 1))
                                     : large_root_series(spec, rk, rbranch, Rational(rorder + 1));
            json rat = json::array(), irr = json::array();
            for (const auto& [key, c] : rp.series.raw_coeffs()) {
                if (!c.rat.is_zero())
                    rat.push_back(json::array({rp.series.exponent_of(key).str(), c.rat.str()}));
                if (!c.irr.is_zero())
                    irr.push_back(json::array({rp.series.exponent_of(key).str(), c.irr.str()}));
            }
            j["series"] = rat;
            if (!irr.empty()) j["series_sqrt2"] = irr;
        }
        if (rz >= 0) {
            json arr = json::array();
            for (const auto& root : trinomial_roots_numeric(spec, rz))
                arr.push_back(json::array({root.real(), root.imag()}));
            j["numeric_roots"] = arr;
        }
        emit(j, table);
    });

    // ---- strings ---------------------------------------------------------
    auto* strings = app.add_subcommand("strings", "denominator string calculus");
    long sy = 3, sb = 2, smu = 1, sm = -1, sorder = -1;
    strings->add_option("--y", sy)->required();
    strings->add_option("--b", sb)->required();
    strings->add_option("--mu", smu, "mu block index (1..b)");
    strings->add_option("--m", sm, "resolve residues and series for this barrier");
    strings->add_option("--order", sorder, "series order (with --m)");
    strings->callback([&] {
        json arr = json::array();
        long total = 0;
        for (const auto& t : enumerate_strings(sy, sb, smu)) {
            json tj = to_json(t);
            total += t.p_count;
            if (sm > 0) {
                long n = sorder > 0 ? sorder : sm + 1;
                auto r = string_series(t, sm, n);
                json sols = json::array();
                for (const auto& sol : r.solutions)
                    sols.push_back(json{{"v", sol.v},
                                        {"V", sol.V},
                                        {"theta", sol.theta.str()},
                                        {"Q", sol.Q.str()}});
                tj["residue_solutions"] = sols;
                tj["series"] = series_payload(r.series);
                if (auto e = r.series.min_exponent()) tj["leading_exponent"] = e->str();
                tj["dropped_irrational"] = r.dropped_irrational;
            }
            arr.push_back(tj);
        }
        emit(json{{"strings", arr}, {"total_permutations", total}}, table);
    });

    // ---- verify ----------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "formulas against the oracle, cell by cell");
    std::string vgrid, vformula;
    long vy = 2, vb = 1, vm = 0, vmfrom = 0, vmto = 0, vorder = 30, vjobs = default_jobs(),
         vk = 1, vs = -1;
    bool vtiming = false;
    verify->add_flag("--timing", vtiming, "include wall times (JSON output is otherwise byte-stable)");
    verify->add_option("--grid", vgrid, "JSON grid file of cells");
    verify->add_option("--formula", vformula, "single formula id");
    verify->add_option("--y", vy);
    verify->add_option("--b", vb);
    verify->add_option("--m", vm);
    verify->add_option("--m-from", vmfrom);
    verify->add_option("--m-to", vmto);
    verify->add_option("--s", vs);
    verify->add_option("--k", vk);
    verify->add_option("--order", vorder);
    verify->add_option("--jobs", vjobs, "worker threads (default WALKGF_JOBS)");
    verify->callback([&] {
        std::vector<VerifyCell> cells;
        if (!vgrid.empty()) {
            std::ifstream in(vgrid);
            if (!in) throw Error("cannot open grid file " + vgrid, 2);
            json j = json::parse(in);
            for (const auto& c : j.at("cells")) {
                VerifyCell cell;
                cell.formula = c.at("formula").get<std::string>();
                cell.y = c.value("y", 2L);
                cell.b = c.value("b", 1L);
                cell.m = c.value("m", 0L);
                cell.s = c.value("s", -1L);
                cell.k = c.value("k", 1L);
                cell.order = c.value("order", 30L);
                cells.push_back(cell);
            }
        } else if (!vformula.empty()) {
            long lo = vmfrom > 0 ? vmfrom : vm, hi = vmto > 0 ? vmto : vm;
            if (hi < lo) hi = lo;
            for (long m = lo;; ++m) {
                cells.push_back(VerifyCell{vformula, vy, vb, m, vs, vk, vorder});
                if (m >= hi) break;
            }
        }
        auto reports = verify_grid(cells, vjobs);
        bool all = true;
        json arr = json::array();
        for (const auto& r : reports) {
            all = all && r.pass;
            json rj = to_json(r);
            if (!vtiming) rj.erase("wall_ms");
            arr.push_back(rj);
            if (table) {
                std::cout << (r.pass ? "PASS " : "FAIL ") << r.cell.formula << " y=" << r.cell.y
                          << " b=" << r.cell.b << " m=" << r.cell.m << " order=" << r.cell.order;
                if (vtiming) std::cout << "  " << r.wall_ms << " ms";
                std::cout << (r.error.empty() ? "" : ("  (" + r.error + ")")) << "\n";
            }
        }
        if (!table)
            std::cout << json{{"cells", arr}, {"pass", all}}.dump(2) << "\n";
        if (!all) std::exit(1);
    });

    // let --table (declared on the root) appear after any subcommand
    std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
        for (auto* sc : a->get_subcommands([](const CLI::App*) { return true; })) {
            sc->fallthrough();
            allow_fallthrough(sc);
        }
    };
    allow_fallthrough(&app);

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cout << json{{"error", e.what()}, {"code", e.code}}.dump(2) << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cout << json{{"error", e.what()}}.dump(2) << "\n";
        return 3;
    }
}
