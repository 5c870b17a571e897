#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sdj/chain_complex.hpp"
#include "sdj/deleted.hpp"
#include "sdj/delta_complex.hpp"
#include "sdj/diagram.hpp"
#include "sdj/json_io.hpp"
#include "sdj/nakaoka.hpp"
#include "sdj/shelling.hpp"
#include "sdj/version.hpp"

namespace sdj {

struct CheckResult {
    std::string name;
    std::string status;  // "pass" | "fail" | "skip"
    std::string expected;
    std::string computed;
};

/// One verification suite run: parameters, per-check outcomes, wall time.
/// Serialized reports omit the wall time so equal inputs give equal bytes.
struct VerificationReport {
    std::string suite;
    json params = json::object();
    std::vector<CheckResult> checks;
    double wall_ms = 0;

    bool ok() const {
        for (const auto& c : checks)
            if (c.status == "fail") return false;
        return true;
    }
    long long count(const std::string& status) const {
        long long n = 0;
        for (const auto& c : checks)
            if (c.status == status) ++n;
        return n;
    }

    void add(std::string name, bool pass, std::string expected, std::string computed) {
        checks.push_back({std::move(name), pass ? "pass" : "fail", std::move(expected),
                          std::move(computed)});
    }
    void skip(std::string name, std::string why) {
        checks.push_back({std::move(name), "skip", "", std::move(why)});
    }

    json to_json() const {
        json j;
        j["suite"] = suite;
        j["params"] = params;
        json rows = json::array();
        for (const auto& c : checks) {
            json r;
            r["name"] = c.name;
            r["status"] = c.status;
            if (c.status == "fail" || !c.expected.empty()) {
                r["expected"] = c.expected;
                r["computed"] = c.computed;
            }
            rows.push_back(std::move(r));
        }
        j["checks"] = std::move(rows);
        return j;
    }

    static VerificationReport from_json(const json& j) {
        VerificationReport r;
        r.suite = j.at("suite").get<std::string>();
        r.params = j.at("params");
        for (const auto& row : j.at("checks")) {
            CheckResult c;
            c.name = row.at("name").get<std::string>();
            c.status = row.at("status").get<std::string>();
            if (row.contains("expected")) {
                c.expected = row.at("expected").get<std::string>();
                c.computed = row.at("computed").get<std::string>();
            }
            r.checks.push_back(std::move(c));
        }
        return r;
    }

    std::string to_tsv() const {
        std::ostringstream os;
        os << "suite\tname\tstatus\texpected\tcomputed\n";
        for (const auto& c : checks)
            os << suite << '\t' << c.name << '\t' << c.status << '\t' << c.expected << '\t'
               << c.computed << '\n';
        return os.str();
    }

    std::string to_table() const {
        std::ostringstream os;
        os << "== " << suite << " " << params.dump() << "\n";
        for (const auto& c : checks) {
            os << "  [" << c.status << "] " << c.name;
            if (c.status == "fail")
                os << "  expected=" << c.expected << " computed=" << c.computed;
            os << "\n";
        }
        os << "  (" << count("pass") << " pass, " << count("fail") << " fail, "
           << count("skip") << " skip; " << static_cast<long long>(wall_ms) << " ms)\n";
        return os.str();
    }
};

struct VerifyOptions {
    long long face_guard = 5000000;  // order-complex face cap
    std::string cache_dir;           // empty: caching disabled
    int threads = 1;
    double budget_sec = -1;  // < 0: unlimited (verify-all only)
    bool inject_fault = false;
};

inline std::string cache_dir_from_env() {
    const char* env = std::getenv("SDJ_CACHE_DIR");
    return env ? std::string(env) : std::string();
}

namespace detail {

inline uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// Content-addressed report cache keyed by (suite, canonical params, version).
/// A deterministic tenth of the hits is audited by recomputation.
template <class Compute>
VerificationReport cached_run(const VerifyOptions& opt, const std::string& suite,
                              const json& params, Compute&& compute) {
    if (opt.cache_dir.empty()) return compute();
    std::string key = suite + "|" + params.dump() + "|" + kVersion;
    uint64_t h = fnv1a(key);
    std::filesystem::create_directories(opt.cache_dir);
    std::ostringstream name;
    name << std::hex << h;
    std::filesystem::path file = std::filesystem::path(opt.cache_dir) / (name.str() + ".json");
    if (std::filesystem::exists(file)) {
        std::ifstream in(file);
        json j = json::parse(in);
        if (j.at("key").get<std::string>() == key) {
            VerificationReport cached = VerificationReport::from_json(j.at("report"));
            if (h % 10 == 0) {  // audit slice
                VerificationReport fresh = compute();
                if (fresh.to_json() != cached.to_json())
                    throw std::logic_error("cache audit mismatch for " + key);
            }
            return cached;
        }
    }
    VerificationReport rep = compute();
    json j;
    j["key"] = key;
    j["report"] = rep.to_json();
    std::ofstream out(file);
    out << j.dump(1) << "\n";
    return rep;
}

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    }
};

inline std::string groups_str(const HomologyResult& h, int q) {
    std::string s = std::to_string(h.betti_at(q));
    auto t = h.torsion_at(q);
    if (!t.empty()) {
        s += "+tors(";
        for (size_t i = 0; i < t.size(); ++i) {
            if (i) s += ',';
            s += t[i].str();
        }
        s += ")";
    }
    return s;
}

/// Guarded reduced homology of a poset: counts chains first and skips when
/// the order complex would exceed the face cap.
inline bool guarded_homology(const Poset& p, Ring ring, int qmax, long long guard,
                             HomologyResult& out) {
    int cap = qmax < 0 ? -1 : qmax + 2;
    long long faces = count_chains(p, cap, guard);
    if (faces < 0) return false;
    out = homology_of_poset(p, ring, qmax);
    return true;
}

}  // namespace detail

/// Finite-instance checks of the k-fold Boolean algebra homology statements:
/// the mod-p Betti numbers of the proper part against the shifted-algebra
/// prediction, concentration/freeness for the join and product variants, and
/// the hat variant against symmetric-group homology.
inline VerificationReport cmd_verify_pmain(int p, int k, int n, const VerifyOptions& opt) {
    json params{{"p", p}, {"k", k}, {"n", n}};
    return detail::cached_run(opt, "pmain", params, [&]() {
        detail::Stopwatch sw;
        VerificationReport rep;
        rep.suite = "pmain";
        rep.params = params;

        // (b)+(c): bnk minus its minimum against the prediction, q <= n-2
        {
            Poset prop = bnk(n, k).without_bottom();
            HomologyResult h;
            if (detail::guarded_homology(prop, Ring::fp(p), n - 2, opt.face_guard, h)) {
                for (int q = 0; q <= n - 2; ++q) {
                    long long want = predicted_homology(p, k, q);
                    rep.add("bnk(" + std::to_string(n) + "," + std::to_string(k) +
                                ") H_" + std::to_string(q) + " mod " + std::to_string(p),
                            h.betti_at(q) == want, std::to_string(want),
                            std::to_string(h.betti_at(q)));
                }
            } else {
                rep.skip("bnk homology", "face guard exceeded");
            }
        }
        // (a): deleted join minus the minimum: free, concentrated in n-1
        {
            TuplePoset join = deleted_join(boolean_poset(n), k);
            Poset punctured = join.poset.induced([&] {
                std::vector<int> keep;
                int bot = *join.poset.bottom();
                for (int v = 0; v < join.poset.size(); ++v)
                    if (v != bot) keep.push_back(v);
                return keep;
            }());
            HomologyResult h;
            if (detail::guarded_homology(punctured, Ring::integers(), -1, opt.face_guard, h)) {
                bool good = true;
                for (int q = -1; q < punctured.size(); ++q) {
                    if (!h.torsion_at(q).empty()) good = false;
                    if (q != n - 1 && h.betti_at(q) != 0) good = false;
                }
                rep.add("join(" + std::to_string(n) + "," + std::to_string(k) +
                            ") concentrated+free",
                        good, "free wedge in degree " + std::to_string(n - 1),
                        h.to_string());
            } else {
                rep.skip("join homology", "face guard exceeded");
            }
        }
        // (d): deleted product: free, concentrated in n-k
        {
            TuplePoset prod = deleted_product(boolean_poset(n), k);
            HomologyResult h;
            if (detail::guarded_homology(prod.poset, Ring::integers(), -1, opt.face_guard,
                                         h)) {
                bool good = true;
                for (int q = -1; q < std::max(prod.poset.size(), 1); ++q) {
                    if (!h.torsion_at(q).empty()) good = false;
                    if (q != n - k && h.betti_at(q) != 0) good = false;
                }
                rep.add("product(" + std::to_string(n) + "," + std::to_string(k) +
                            ") concentrated+free",
                        good, "free wedge in degree " + std::to_string(n - k),
                        h.to_string());
            } else {
                rep.skip("product homology", "face guard exceeded");
            }
        }
        // (e): hat variant against symmetric-group homology, q <= n-k-1
        if (n - k - 1 >= 0) {
            Poset hat = bnk_hat(n, k);
            HomologyResult h;
            if (detail::guarded_homology(hat, Ring::fp(p), n - k - 1, opt.face_guard, h)) {
                for (int q = 0; q <= n - k - 1; ++q) {
                    long long want = sym_homology_dim(p, k, q) - (q == 0 ? 1 : 0);
                    rep.add("hat-bnk H_" + std::to_string(q) + " mod " + std::to_string(p),
                            h.betti_at(q) == want, std::to_string(want),
                            std::to_string(h.betti_at(q)));
                }
            } else {
                rep.skip("hat homology", "face guard exceeded");
            }
        }
        rep.wall_ms = sw.ms();
        return rep;
    });
}

/// Stability of the lower homology in n, plus freeness of the top group with
/// rank pinned by the Euler characteristic.
inline VerificationReport cmd_verify_stability(int k, int n, const VerifyOptions& opt) {
    json params{{"k", k}, {"n", n}};
    return detail::cached_run(opt, "stability", params, [&]() {
        detail::Stopwatch sw;
        VerificationReport rep;
        rep.suite = "stability";
        rep.params = params;
        Poset a = bnk(n, k).without_bottom();
        Poset b = bnk(n + 1, k).without_bottom();
        HomologyResult ha, hb;
        if (!detail::guarded_homology(a, Ring::integers(), -1, opt.face_guard, ha) ||
            !detail::guarded_homology(b, Ring::integers(), n - 2, opt.face_guard, hb)) {
            rep.skip("stability", "face guard exceeded");
            rep.wall_ms = sw.ms();
            return rep;
        }
        for (int i = 0; i <= n - 2; ++i) {
            bool same = ha.betti_at(i) == hb.betti_at(i) && ha.torsion_at(i) == hb.torsion_at(i);
            rep.add("H_" + std::to_string(i) + "(n) = H_" + std::to_string(i) + "(n+1)", same,
                    detail::groups_str(hb, i), detail::groups_str(ha, i));
        }
        long long chi = reduced_euler(a);
        long long expect_top = chi;
        for (int q = -1; q <= n - 2; ++q) {
            long long sign = ((q % 2) == 0) ? 1 : -1;
            expect_top -= sign * ha.betti_at(q);
        }
        expect_top = (n - 1) % 2 == 0 ? expect_top : -expect_top;
        bool top_ok = ha.torsion_at(n - 1).empty() && ha.betti_at(n - 1) == expect_top;
        rep.add("top group free of Euler-determined rank", top_ok,
                "Z^" + std::to_string(expect_top), detail::groups_str(ha, n - 1));
        rep.wall_ms = sw.ms();
        return rep;
    });
}

/// Subdivision invariance on the deleted-join diagrams and on pseudo-random
/// small diagrams.
inline VerificationReport cmd_verify_subdivision(int max_m, int max_n, int random_count,
                                                 const VerifyOptions& opt) {
    json params{{"max_m", max_m}, {"max_n", max_n}, {"random", random_count}};
    return detail::cached_run(opt, "subdivision", params, [&]() {
        detail::Stopwatch sw;
        VerificationReport rep;
        rep.suite = "subdivision";
        rep.params = params;
        for (int m = 1; m <= max_m; ++m)
            for (int n = 1; n <= max_n; ++n) {
                DnDiagram dn = diagram_dn(boolean_poset(m), n);
                auto r = verify_subdivision_invariance(dn.diagram, Ring::integers());
                rep.add("diagram_dn(B_" + std::to_string(m) + "," + std::to_string(n) + ")",
                        r.equal, r.original.to_string(), r.subdivided.to_string());
            }
        for (int seed = 1; seed <= random_count; ++seed) {
            PosetDiagram d = random_small_diagram(static_cast<uint32_t>(seed));
            auto r = verify_subdivision_invariance(d, Ring::integers());
            rep.add("random seed " + std::to_string(seed), r.equal, r.original.to_string(),
                    r.subdivided.to_string());
        }
        rep.wall_ms = sw.ms();
        return rep;
    });
}

/// Deterministic composite suite with a wall-clock budget: over-budget items
/// are reported as skips, never failures.  Exit semantics: ok() iff no fail.
inline VerificationReport cmd_verify_all(const VerifyOptions& opt) {
    detail::Stopwatch sw;
    VerificationReport rep;
    rep.suite = "all";
    rep.params = json{{"budget_sec", opt.budget_sec}};

    struct Item {
        std::string name;
        std::function<VerificationReport()> run;
    };
    std::vector<Item> items;
    items.push_back({"dnt sweep n<=4", [&] {
                         VerificationReport r;
                         r.suite = "dnt";
                         DntReport d = verify_dnt(4);
                         r.add("acyclic except t=n with empty E (" +
                                   std::to_string(d.checked) + " shapes)",
                               d.ok(), "no failures",
                               d.ok() ? "no failures" : d.failures.front());
                         return r;
                     }});
    for (int p : {2, 3})
        for (int n = 1; n <= 4; ++n)
            items.push_back({"main p=" + std::to_string(p) + " n=" + std::to_string(n), [=] {
                                 VerificationReport r;
                                 r.suite = "main";
                                 auto m = verify_main_theorem_internal(p, n, 6);
                                 for (int q = 1; q <= m.q_max; ++q)
                                     r.add("H_" + std::to_string(q), m.computed[q - 1] ==
                                                                         m.expected[q - 1],
                                           std::to_string(m.expected[q - 1]),
                                           std::to_string(m.computed[q - 1]));
                                 return r;
                             }});
    for (int p : {2, 3})
        for (int k = 1; k <= 3; ++k)
            for (int n = std::max(2, k); n <= 5; ++n)
                items.push_back({"pmain p=" + std::to_string(p) + " k=" + std::to_string(k) +
                                     " n=" + std::to_string(n),
                                 [=] {
                                     VerifyOptions o = opt;
                                     o.cache_dir.clear();
                                     return cmd_verify_pmain(p, k, n, o);
                                 }});
    for (int n = 1; n <= 4; ++n)
        for (int k = 1; k <= 3; ++k)
            for (int t = 1; t <= k; ++t)
                items.push_back({"el n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                     " t=" + std::to_string(t),
                                 [=] {
                                     VerificationReport r;
                                     r.suite = "el";
                                     EdgeLabeling el = el_label_bnkt(n, k, t);
                                     auto v = verify_el(el);
                                     r.add("EL condition (" +
                                               std::to_string(v.intervals_checked) +
                                               " intervals)",
                                           v.ok, "unique rising lex-least chains",
                                           v.ok ? "ok" : v.violations.front());
                                     return r;
                                 }});
    items.push_back({"subdivision invariance", [&] {
                         VerifyOptions o = opt;
                         o.cache_dir.clear();
                         return cmd_verify_subdivision(3, 3, 50, o);
                     }});

    // worker pool; items claimed in order, budget checked at claim time
    std::vector<std::vector<CheckResult>> results(items.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= items.size()) break;
            if (opt.budget_sec >= 0 && sw.ms() / 1000.0 > opt.budget_sec) {
                results[i].push_back({items[i].name, "skip", "", "over budget"});
                continue;
            }
            VerificationReport r = items[i].run();
            for (auto& c : r.checks) {
                c.name = items[i].name + ": " + c.name;
                results[i].push_back(c);
            }
        }
    };
    int nthreads = std::max(1, opt.threads);
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& rows : results)
        for (auto& c : rows) rep.checks.push_back(std::move(c));
    if (opt.inject_fault)
        rep.add("injected fault", false, "none", "fault injected via flag");
    rep.wall_ms = sw.ms();
    return rep;
}

}  // namespace sdj
