#include "hodgeft/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hodgeft/graph.hpp"
#include "hodgeft/io.hpp"
#include "hodgeft/prng.hpp"
#include "hodgeft/psi.hpp"
#include "hodgeft/verify.hpp"

namespace hodgeft {

namespace {

struct WindowOpts {
    int g_max = 2, n_max = 6, d_max = 4;
    TruncationWindow window() const {
        TruncationWindow w{g_max, n_max, d_max};
        if (!w.valid())
            throw InputError("invalid window: need g_max >= 0, n_max >= 3, d_max >= 0");
        return w;
    }
};

void add_window_opts(CLI::App* cmd, WindowOpts& w) {
    cmd->add_option("--g-max", w.g_max, "genus bound");
    cmd->add_option("--n-max", w.n_max, "max number of insertions");
    cmd->add_option("--d-max", w.d_max, "max single psi power");
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw InputError("cannot write output file: " + out_path);
    out << text;
}

std::map<std::string, std::string> output_headers(std::uint64_t seed, const std::string& alg_path,
                                                  const std::string& alg_name) {
    std::map<std::string, std::string> h;
    h["seed"] = std::to_string(seed);
    if (!alg_path.empty()) {
        h["algebra"] = alg_name;
        h["algebra-hash"] = fnv1a_hex(slurp_file(alg_path));
    }
    return h;
}

Mat random_even_matrix(Prng& rng, const HodgeAlgebra& alg) {
    int s = alg.dim();
    Mat m = mat_zero(s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            if (alg.basis.parity[i] == alg.basis.parity[j])
                m[i][j] = Rat(rng.range(-3, 3));
    return m;
}

Mat eta_adjoint(const Mat& a, const HodgeAlgebra& alg) {
    // A^dag with pair(A^dag x, y) = pair(x, A y): (A^dag)^T = eta A eta^{-1}
    Mat t = mat_mul(mat_mul(alg.eta(), a), alg.eta_inv());
    int s = alg.dim();
    Mat out = mat_zero(s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            out[i][j] = t[j][i];
    return out;
}

/// seeded R-matrix with symmetric r_1 and skew r_2 (either may vanish)
RMatrixSeries seeded_rmatrix(std::uint64_t seed, const HodgeAlgebra& alg) {
    Prng rng(seed);
    Mat a1 = random_even_matrix(rng, alg);
    Mat a2 = random_even_matrix(rng, alg);
    RMatrixSeries r;
    r.terms.push_back({1, mat_scale(Rat(1, 2), mat_add(a1, eta_adjoint(a1, alg)))});
    r.terms.push_back({2, mat_scale(Rat(1, 2), mat_add(a2, mat_scale(Rat(-1), eta_adjoint(a2, alg))))});
    validate_rmatrix(r, alg);
    return r;
}

HodgeAlgebra load_checked(const std::string& path, bool require_axioms) {
    HodgeAlgebra alg = load_algebra(path);
    if (require_axioms) {
        AxiomReport rep = check_axioms(alg);
        if (!rep.all_pass()) {
            std::cout << rep.summary();
            throw InputError("algebra fails the axiom checks; aborting");
        }
    }
    return alg;
}

int emit_report(const CheckReport& rep) {
    std::cout << rep.to_string();
    return rep.pass ? 0 : 1;
}

} // namespace

int cli_run(const std::vector<std::string>& args) {
    CLI::App app{"exact descendant potentials of cyclic Hodge algebras"};
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    int jobs = 1;
    app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();
    app.add_option("--jobs", jobs, "worker count for parallel sections")->capture_default_str();

    // check-axioms
    std::string ca_alg;
    auto* ca = app.add_subcommand("check-axioms", "validate an algebra file against A1-A7");
    ca->add_option("algebra", ca_alg, "algebra definition file")->required();

    // psi-table
    WindowOpts pt_w;
    std::string pt_out;
    auto* pt = app.add_subcommand("psi-table", "emit psi intersection numbers up to the window");
    add_window_opts(pt, pt_w);
    pt->add_option("-o,--output", pt_out, "output file (default stdout)");

    // list-graphs
    int lg_g = 0;
    std::string lg_d;
    auto* lg = app.add_subcommand("list-graphs", "enumerate decorated graphs for one correlator");
    lg->add_option("genus", lg_g, "genus")->required();
    lg->add_option("psi", lg_d, "comma-separated psi powers, e.g. 0,0,1 (omit for n=0)");

    // build-tft
    std::string bt_alg, bt_out;
    WindowOpts bt_w;
    auto* bt = app.add_subcommand("build-tft", "TFT potential of the Frobenius structure");
    bt->add_option("algebra", bt_alg)->required();
    add_window_opts(bt, bt_w);
    bt->add_option("-o,--output", bt_out);

    // build-potential
    std::string bp_alg, bp_out, bp_method = "graph";
    WindowOpts bp_w;
    auto* bp = app.add_subcommand("build-potential", "full descendant potential over H0");
    bp->add_option("algebra", bp_alg)->required();
    bp->add_option("--method", bp_method, "graph | givental")->capture_default_str();
    add_window_opts(bp, bp_w);
    bp->add_option("-o,--output", bp_out);

    // apply-givental
    std::string ag_r, ag_pot, ag_alg, ag_out;
    WindowOpts ag_w;
    bool ag_w_given = false;
    auto* ag = app.add_subcommand("apply-givental", "apply exp(sum (r_l z^l)^) to a potential");
    ag->add_option("rmatrix", ag_r, "R-matrix file")->required();
    ag->add_option("potential", ag_pot, "potential file")->required();
    ag->add_option("--algebra", ag_alg, "algebra file (for eta)")->required();
    ag->add_option("-o,--output", ag_out);
    ag->add_option("--g-max", ag_w.g_max, "output window genus bound")
        ->each([&](const std::string&) { ag_w_given = true; });
    ag->add_option("--n-max", ag_w.n_max, "output window insertion bound")
        ->each([&](const std::string&) { ag_w_given = true; });
    ag->add_option("--d-max", ag_w.d_max, "output window psi-power bound")
        ->each([&](const std::string&) { ag_w_given = true; });

    // verify
    auto* vf = app.add_subcommand("verify", "tautological-equation and theorem checks");
    vf->require_subcommand(1);
    std::string v_pot, v_alg, v_rmat;
    int v_random = 0;
    WindowOpts v_w;
    auto add_pot_check = [&](const char* name, const char* desc) {
        auto* c = vf->add_subcommand(name, desc);
        c->add_option("potential", v_pot, "potential file")->required();
        c->add_option("--algebra", v_alg, "algebra file");
        return c;
    };
    auto* v_string = add_pot_check("string", "string equation at correlator level");
    auto* v_dilaton = add_pot_check("dilaton", "dilaton equation at correlator level");
    auto* v_trr0 = add_pot_check("trr0", "genus-0 topological recursion relation");
    auto* v_3g2 = vf->add_subcommand("3g2", "vanishing beyond the 3g-2 bound");
    v_3g2->add_option("potential", v_pot, "potential file")->required();
    auto* v_equiv = vf->add_subcommand("equivalence", "graph sum == Givental operator");
    v_equiv->add_option("algebra", v_alg)->required();
    add_window_opts(v_equiv, v_w);
    auto* v_inv = vf->add_subcommand(
        "givental-invariance", "CohFT checks on the TFT potential after applying an R-matrix");
    v_inv->add_option("algebra", v_alg)->required();
    v_inv->add_option("--rmatrix", v_rmat, "R-matrix file");
    v_inv->add_option("--random", v_random, "number of seeded random R-matrices");
    add_window_opts(v_inv, v_w);
    auto* v_q = vf->add_subcommand("q-closed", "Q applied leafwise to the TFT potential");
    v_q->add_option("algebra", v_alg)->required();
    add_window_opts(v_q, v_w);
    auto* v_gm = vf->add_subcommand("gminus-z", "(G- z)^ applied to the TFT potential");
    v_gm->add_option("algebra", v_alg)->required();
    add_window_opts(v_gm, v_w);

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        int code = app.exit(e, std::cout, std::cerr);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*ca) {
            HodgeAlgebra alg = load_algebra(ca_alg);
            AxiomReport rep = check_axioms(alg);
            std::cout << rep.summary();
            return rep.all_pass() ? 0 : 1;
        }
        if (*pt) {
            TruncationWindow w = pt_w.window();
            LogPotential p;
            p.window = w;
            p.basis_dim = 1;
            ParityVec par{0};
            for (const auto& [g, k] : window_keys(w, 1, par))
                if (psi_degree(k) == 3 * g - 3 + static_cast<int>(k.size())) {
                    std::vector<int> d;
                    for (const Ins& x : k)
                        d.push_back(x.d);
                    p.set(g, k, psi_integral(g, d));
                }
            write_output(serialize_potential(p, output_headers(seed, "", "")), pt_out);
            return 0;
        }
        if (*lg) {
            std::vector<int> d;
            std::stringstream ss(lg_d);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty())
                    d.push_back(std::stoi(tok));
            auto graphs = enumerate_graphs(lg_g, d);
            std::cout << graphs.size() << " graphs for genus " << lg_g << ", n = " << d.size()
                      << ", heavy edges = "
                      << 3 * lg_g - 3 + static_cast<int>(d.size()) -
                             std::accumulate(d.begin(), d.end(), 0)
                      << "\n";
            for (const auto& gr : graphs) {
                std::cout << "- vertices:";
                for (int v = 0; v < gr.n_vertices(); ++v)
                    std::cout << " g" << gr.loops[v];
                std::cout << "; edges:";
                if (gr.edges.empty())
                    std::cout << " none";
                for (const auto& [a, b] : gr.edges)
                    std::cout << " (" << a << "," << b << ")";
                std::cout << "; leaves:";
                for (const auto& lf : gr.leaves)
                    std::cout << " " << (lf.label + 1) << "@" << lf.vertex << "^" << lf.d;
                std::cout << "; |aut| = " << aut_order(gr) << ", A = " << a_coefficient(gr).str()
                          << ", P = " << p_coefficient(gr).str() << "\n";
            }
            return 0;
        }
        if (*bt) {
            HodgeAlgebra alg = load_checked(bt_alg, true);
            LogPotential p = tft_potential(alg, bt_w.window());
            write_output(serialize_potential(p, output_headers(seed, bt_alg, alg.name)), bt_out);
            return 0;
        }
        if (*bp) {
            HodgeAlgebra alg = load_checked(bp_alg, true);
            TruncationWindow w = bp_w.window();
            LogPotential p;
            if (bp_method == "graph")
                p = graph_sum_potential(alg, w, jobs);
            else if (bp_method == "givental")
                p = hodge_potential(alg, w);
            else
                throw InputError("unknown method '" + bp_method + "' (want graph or givental)");
            write_output(serialize_potential(p, output_headers(seed, bp_alg, alg.name)), bp_out);
            return 0;
        }
        if (*ag) {
            HodgeAlgebra alg = load_algebra(ag_alg);
            LogPotential f = parse_potential(slurp_file(ag_pot), ag_pot);
            if (f.basis_dim > alg.dim())
                throw InputError("potential basis indices exceed the algebra dimension");
            RMatrixSeries r = load_rmatrix(ag_r, alg.dim());
            validate_rmatrix(r, alg);
            LogPotential out = exp_op_apply(r, f, alg, ag_w_given ? ag_w.window() : f.window);
            write_output(serialize_potential(out, output_headers(seed, ag_alg, alg.name)), ag_out);
            return 0;
        }
        if (*vf) {
            if (*v_equiv) {
                HodgeAlgebra alg = load_checked(v_alg, true);
                return emit_report(check_equivalence(alg, v_w.window(), jobs));
            }
            if (*v_q) {
                HodgeAlgebra alg = load_checked(v_alg, true);
                return emit_report(report_from_vanishing("q-closed",
                                                         q_closed_check(alg, v_w.window())));
            }
            if (*v_gm) {
                HodgeAlgebra alg = load_checked(v_alg, true);
                return emit_report(report_from_vanishing("gminus-z",
                                                         gminus_z_check(alg, v_w.window())));
            }
            if (*v_inv) {
                HodgeAlgebra alg = load_checked(v_alg, true);
                TruncationWindow cw = v_w.window();
                if (!v_rmat.empty()) {
                    RMatrixSeries r = load_rmatrix(v_rmat, alg.dim());
                    validate_rmatrix(r, alg);
                    return emit_report(check_givental_invariance(alg, r, cw));
                }
                int n = std::max(1, v_random);
                int rc = 0;
                for (int t = 0; t < n; ++t) {
                    RMatrixSeries r = seeded_rmatrix(seed + static_cast<std::uint64_t>(t), alg);
                    CheckReport rep = check_givental_invariance(alg, r, cw);
                    rep.note += " [seed " + std::to_string(seed + t) + "]";
                    if (emit_report(rep) != 0)
                        rc = 1;
                }
                return rc;
            }
            LogPotential f = parse_potential(slurp_file(v_pot), v_pot);
            if (*v_3g2)
                return emit_report(check_3g2(f));
            if (v_alg.empty())
                throw InputError("this check needs --algebra");
            HodgeAlgebra alg = load_algebra(v_alg);
            if (*v_string)
                return emit_report(check_string(f, alg));
            if (*v_dilaton)
                return emit_report(check_dilaton(f, alg));
            if (*v_trr0)
                return emit_report(check_trr0(f, alg));
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownCoefficient& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace hodgeft
