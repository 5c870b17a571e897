// Command-line interface: poset constructions, exact homology, the triple
// complexes, admissible-sequence tables, EL-shelling checks and the
// verification suites.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "sdj/chain_complex.hpp"
#include "sdj/deleted.hpp"
#include "sdj/delta_complex.hpp"
#include "sdj/json_io.hpp"
#include "sdj/nakaoka.hpp"
#include "sdj/shelling.hpp"
#include "sdj/verify.hpp"
#include "sdj/version.hpp"

using namespace sdj;

namespace {

enum class OutMode { Table, Json, Tsv };

struct GlobalOpts {
    bool json = false;
    bool tsv = false;
    std::string cache_dir;
    int threads = 1;
    OutMode mode() const { return json ? OutMode::Json : (tsv ? OutMode::Tsv : OutMode::Table); }
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open " + path);
    return json::parse(in);
}

void emit(const std::string& out, const json& j) {
    if (out.empty() || out == "-") {
        std::cout << j.dump(1) << "\n";
    } else {
        std::ofstream o(out);
        o << j.dump(1) << "\n";
    }
}

int finish_report(const VerificationReport& rep, const GlobalOpts& g) {
    switch (g.mode()) {
        case OutMode::Json:
            std::cout << rep.to_json().dump(1) << "\n";
            break;
        case OutMode::Tsv:
            std::cout << rep.to_tsv();
            break;
        case OutMode::Table:
            std::cout << rep.to_table();
            break;
    }
    return rep.ok() ? 0 : 1;
}

Ring parse_ring(const std::string& ring, int p) {
    if (ring == "z" || ring == "Z") return Ring::integers();
    if (ring == "fp" || ring == "Fp") return Ring::fp(p);
    throw CLI::ValidationError("--ring must be z or fp");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"homology of symmetric deleted joins and k-fold Boolean algebras"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    GlobalOpts g;
    g.cache_dir = cache_dir_from_env();
    app.add_flag("--json", g.json, "machine-readable JSON output");
    app.add_flag("--tsv", g.tsv, "tab-separated output");
    app.add_option("--cache-dir", g.cache_dir, "report cache directory (env SDJ_CACHE_DIR)");
    app.add_option("--threads", g.threads, "worker threads for suites")->check(CLI::Range(1, 256));

    int ret = 0;
    std::string in_file, out_file;

    // ---- poset ----------------------------------------------------------
    auto* poset_cmd = app.add_subcommand("poset", "poset utilities on the JSON format");
    {
        auto* build = poset_cmd->add_subcommand("build", "validate and canonicalize");
        build->add_option("--in", in_file)->required();
        build->add_option("--out", out_file);
        build->callback([&] { emit(out_file, poset_to_json(poset_from_json(read_json_file(in_file)))); });

        auto* euler = poset_cmd->add_subcommand("euler", "reduced Euler characteristic");
        euler->add_option("--in", in_file)->required();
        euler->callback([&] {
            std::cout << reduced_euler(poset_from_json(read_json_file(in_file))) << "\n";
        });

        auto* bd = poset_cmd->add_subcommand("bd", "barycentric subdivision");
        bd->add_option("--in", in_file)->required();
        bd->add_option("--out", out_file);
        bd->callback([&] {
            emit(out_file,
                 poset_to_json(barycentric_subdivision(poset_from_json(read_json_file(in_file)))));
        });

        static std::string x, y;
        auto* interval = poset_cmd->add_subcommand("interval", "closed interval [x, y]");
        interval->add_option("--in", in_file)->required();
        interval->add_option("--x", x)->required();
        interval->add_option("--y", y)->required();
        interval->add_option("--out", out_file);
        interval->callback([&] {
            Poset p = poset_from_json(read_json_file(in_file));
            emit(out_file, poset_to_json(p.interval(p.index_of(x), p.index_of(y))));
        });

        auto* lower = poset_cmd->add_subcommand("lower", "lower set of x");
        lower->add_option("--in", in_file)->required();
        lower->add_option("--x", x)->required();
        lower->add_option("--out", out_file);
        lower->callback([&] {
            Poset p = poset_from_json(read_json_file(in_file));
            emit(out_file, poset_to_json(p.lower_set(p.index_of(x))));
        });
    }

    // ---- homology --------------------------------------------------------
    {
        auto* hom = app.add_subcommand("homology", "reduced homology of a poset's order complex");
        static std::string ring = "z";
        static int p = 2, qmax = -1;
        static bool proper = false;
        hom->add_option("--in", in_file, "poset JSON file")->required();
        hom->add_option("--ring", ring, "z or fp");
        hom->add_option("--p", p, "prime for fp");
        hom->add_option("--qmax", qmax, "truncate above this degree");
        hom->add_flag("--proper", proper, "strip bottom/top first");
        hom->callback([&] {
            Poset poset = poset_from_json(read_json_file(in_file));
            if (proper) poset = poset.proper_part();
            HomologyResult h = homology_of_poset(poset, parse_ring(ring, p), qmax);
            if (g.mode() == OutMode::Json) {
                std::cout << homology_to_json(h).dump(1) << "\n";
            } else {
                std::cout << h.to_string() << "\n";
            }
        });
    }

    // ---- bnk family ------------------------------------------------------
    {
        auto* gen = app.add_subcommand("bnk", "generate the deleted join/Boolean family posets");
        static std::string which;
        static int n = 1, k = 1, t = 0;
        gen->add_option("kind", which, "bool|djoin|dprod|bnk|bnkhat|bnkt")->required();
        gen->add_option("--n", n)->required();
        gen->add_option("--k", k);
        gen->add_option("--t", t);
        gen->add_option("--out", out_file);
        gen->callback([&] {
            Poset p;
            if (which == "bool")
                p = boolean_poset(n);
            else if (which == "djoin")
                p = deleted_join(boolean_poset(n), k).poset;
            else if (which == "dprod")
                p = deleted_product(boolean_poset(n), k).poset;
            else if (which == "bnk")
                p = bnk(n, k);
            else if (which == "bnkhat")
                p = bnk_hat(n, k);
            else if (which == "bnkt")
                p = bnkt(n, k, t);
            else
                throw CLI::ValidationError("unknown kind '" + which + "'");
            emit(out_file, poset_to_json(p));
        });
    }

    // ---- delta -----------------------------------------------------------
    {
        auto* delta = app.add_subcommand("delta", "the (J, pi, f) chain complexes");
        static int p = 2, n = 2, qmax = 6, nmax = 4;

        auto* build = delta->add_subcommand("build", "build and report homology");
        build->add_option("--p", p)->required();
        build->add_option("--n", n)->required();
        build->add_option("--qmax", qmax);
        build->callback([&] {
            DeltaComplex dc = build_delta_n(p, n, qmax);
            HomologyResult h = homology(dc.chains);
            h.truncate(qmax);
            if (g.mode() == OutMode::Json) {
                json j;
                j["complex"] = chain_complex_to_json(dc.chains);
                j["homology"] = homology_to_json(h);
                std::cout << j.dump(1) << "\n";
            } else {
                std::cout << "basis dims:";
                for (auto d : dc.chains.dims) std::cout << " " << d;
                std::cout << "\n" << h.to_string() << "\n";
            }
        });

        auto* dnt = delta->add_subcommand("verify-dnt", "acyclicity sweep of the shape complexes");
        dnt->add_option("--nmax", nmax);
        dnt->callback([&] {
            DntReport rep = verify_dnt(nmax);
            VerificationReport v;
            v.suite = "dnt";
            v.params = json{{"nmax", nmax}};
            v.add("acyclic except t=n with empty E (" + std::to_string(rep.checked) + " shapes)",
                  rep.ok(), "no failures", rep.ok() ? "no failures" : rep.failures.front());
            ret = finish_report(v, g);
        });

        auto* main_check = delta->add_subcommand("verify-main", "homology against the shifted count");
        main_check->add_option("--p", p)->required();
        main_check->add_option("--n", n)->required();
        main_check->add_option("--qmax", qmax);
        main_check->callback([&] {
            auto m = verify_main_theorem_internal(p, n, qmax);
            VerificationReport v;
            v.suite = "main";
            v.params = json{{"p", p}, {"n", n}, {"qmax", qmax}};
            for (int q = 1; q <= m.q_max; ++q)
                v.add("H_" + std::to_string(q), m.computed[q - 1] == m.expected[q - 1],
                      std::to_string(m.expected[q - 1]), std::to_string(m.computed[q - 1]));
            ret = finish_report(v, g);
        });
    }

    // ---- nakaoka ---------------------------------------------------------
    {
        auto* nak = app.add_subcommand("nakaoka", "admissible sequence counts");
        static int p = 2, dmax = 8, rmax = 8;
        auto* table = nak->add_subcommand("table", "u_dim / u_tilde_dim table");
        table->add_option("--p", p)->required();
        table->add_option("--dmax", dmax);
        table->add_option("--rmax", rmax);
        table->callback([&] {
            std::cout << "p\tr\td\tu_dim\tu_tilde_dim\n";
            for (int r = 1; r <= rmax; ++r)
                for (int d = 0; d <= dmax; ++d)
                    std::cout << p << '\t' << r << '\t' << d << '\t' << u_dim(p, r, d) << '\t'
                              << u_tilde_dim(p, r, d) << "\n";
        });
    }

    // ---- shelling ---------------------------------------------------------
    {
        auto* shell = app.add_subcommand("shelling", "EL-labeling checks");
        static int n = 2, k = 2, t = 1;
        auto* v = shell->add_subcommand("verify", "verify the labeling and count falling chains");
        v->add_option("--n", n)->required();
        v->add_option("--k", k)->required();
        v->add_option("--t", t)->required();
        v->callback([&] {
            EdgeLabeling el = el_label_bnkt(n, k, t);
            ElReport er = verify_el(el);
            auto falls = falling_chains(el);
            VerificationReport rep;
            rep.suite = "shelling";
            rep.params = json{{"n", n}, {"k", k}, {"t", t}};
            rep.add("EL condition (" + std::to_string(er.intervals_checked) + " intervals)",
                    er.ok, "unique rising lex-least chains",
                    er.ok ? "ok" : er.violations.front());
            long long total = 0;
            for (auto [len, c] : falls) {
                rep.add("falling chains of length " + std::to_string(len), true, "",
                        std::to_string(c));
                total += c;
            }
            long long chi = reduced_euler(el.poset.proper_part());
            rep.add("falling count = |reduced Euler|", total == std::llabs(chi),
                    std::to_string(std::llabs(chi)), std::to_string(total));
            ret = finish_report(rep, g);
        });
    }

    // ---- verify ------------------------------------------------------------
    {
        auto* verify = app.add_subcommand("verify", "verification suites");
        static int p = 2, k = 2, n = 4, m = 3, seeds = 50;
        static double budget = -1;
        static bool fault = false;

        auto* pm = verify->add_subcommand("pmain", "finite-instance homology statements");
        pm->add_option("--p", p)->required();
        pm->add_option("--k", k)->required();
        pm->add_option("--n", n)->required();
        pm->callback([&] {
            VerifyOptions opt;
            opt.cache_dir = g.cache_dir;
            opt.threads = g.threads;
            ret = finish_report(cmd_verify_pmain(p, k, n, opt), g);
        });

        auto* st = verify->add_subcommand("stability", "lower homology stable in n");
        st->add_option("--k", k)->required();
        st->add_option("--n", n)->required();
        st->callback([&] {
            VerifyOptions opt;
            opt.cache_dir = g.cache_dir;
            ret = finish_report(cmd_verify_stability(k, n, opt), g);
        });

        auto* sub = verify->add_subcommand("subdivision", "homology invariance under subdivision");
        sub->add_option("--m", m, "ground Boolean sizes up to m");
        sub->add_option("--n", n, "join arities up to n");
        sub->add_option("--seeds", seeds, "number of random diagrams");
        sub->callback([&] {
            VerifyOptions opt;
            opt.cache_dir = g.cache_dir;
            ret = finish_report(cmd_verify_subdivision(m, n, seeds, opt), g);
        });

        auto* all = verify->add_subcommand("all", "every suite under a time budget");
        all->add_option("--budget-sec", budget, "wall-clock budget; over-budget items skip");
        all->add_flag("--inject-fault", fault, "force one failing check (for testing)");
        all->callback([&] {
            VerifyOptions opt;
            opt.cache_dir = g.cache_dir;
            opt.threads = g.threads;
            opt.budget_sec = budget;
            opt.inject_fault = fault;
            ret = finish_report(cmd_verify_all(opt), g);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints help text or the usage error
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return ret;
}
