// irclab: finite-resolution experiments on shift spaces, hyperspace levels,
// permutation-group orbits, and exact circle dilations.
//
// Every subcommand is seeded and reproducible: identical configuration
// (including --seed) produces byte-identical JSON-lines and CSV output,
// regardless of --workers.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "irclab/chacon.hpp"
#include "irclab/dilation.hpp"
#include "irclab/estimator.hpp"
#include "irclab/json_io.hpp"
#include "irclab/occupancy.hpp"
#include "irclab/orbit_stats.hpp"
#include "irclab/rng.hpp"
#include "irclab/weyl.hpp"

using namespace irclab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitCap = 3;
constexpr int kExitUsage = 64;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Output {
    Json config;
    std::vector<Json> records;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    std::string summary;

    void write(const std::string& prefix) const {
        {
            std::ofstream jsonl(prefix + ".jsonl", std::ios::binary);
            jsonl << Json{{"config", config}}.dump() << "\n";
            for (const Json& r : records) jsonl << r.dump() << "\n";
        }
        {
            std::ofstream csv(prefix + ".csv", std::ios::binary);
            csv << "# config: " << config.dump() << "\n";
            for (size_t i = 0; i < csv_header.size(); ++i)
                csv << (i ? "," : "") << csv_header[i];
            csv << "\n";
            for (const auto& row : csv_rows) {
                for (size_t i = 0; i < row.size(); ++i) csv << (i ? "," : "") << row[i];
                csv << "\n";
            }
        }
        if (!summary.empty()) std::cout << summary << "\n";
        std::cout << "wrote " << prefix << ".jsonl and " << prefix << ".csv\n";
    }
};

uint64_t cap_default() {
    if (const char* env = std::getenv("IRC_LAB_CAP_OVERRIDE")) {
        try {
            return static_cast<uint64_t>(std::stoull(env));
        } catch (...) {
            throw ValidationError("IRC_LAB_CAP_OVERRIDE is not an integer");
        }
    }
    return 16'777'216;  // 2^24
}

// Resolved options of the active subcommand chain, for embedding in outputs.
void collect_config(const CLI::App* app, Json& into) {
    for (const CLI::Option* opt : app->get_options()) {
        const std::string name = opt->get_name();
        // Worker count never changes results (per-item substreams), so it is
        // not part of the run configuration.
        if (name.empty() || name == "--help" || name == "--config" || name == "--workers")
            continue;
        std::string key = name;
        while (!key.empty() && key.front() == '-') key.erase(0, 1);
        if (opt->count() > 0 || !opt->get_default_str().empty()) {
            into[key] = opt->count() > 0 ? opt->results().front() : opt->get_default_str();
        }
    }
    for (const CLI::App* sub : app->get_subcommands()) {
        Json subj;
        collect_config(sub, subj);
        into[sub->get_name()] = std::move(subj);
    }
}

DigitSet digit_set_from(const std::string& digits_csv, const std::string& forbid_csv, int base) {
    if (!digits_csv.empty() && !forbid_csv.empty())
        throw ValidationError("give either --digits or --forbid, not both");
    if (!forbid_csv.empty()) {
        std::vector<std::string> words;
        std::string cur;
        for (char c : forbid_csv + ",") {
            if (c == ',') {
                if (!cur.empty()) words.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        return DigitSet::forbidden(base, words);
    }
    if (digits_csv.empty()) return DigitSet::full(base);
    std::vector<int> ds;
    std::string cur;
    for (char c : digits_csv + ",") {
        if (c == ',') {
            if (!cur.empty()) ds.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    return DigitSet::whitelist(base, ds);
}

LevelSet sunny_level_set(int n, int m) {
    LevelSet out{n, Sided::one, m, {}};
    std::vector<uint8_t> zeros(static_cast<size_t>(m), 0);
    out.cells.insert(Word(zeros, n));
    for (int j = 0; j < m; ++j) {
        auto v = zeros;
        v[static_cast<size_t>(j)] = 1;
        out.cells.insert(Word(v, n));
    }
    return out;
}

int smallest_block_level(int64_t needed) {
    for (int n = 1; n <= 14; ++n) {
        if (chacon::block_length(n) > needed) return n;
    }
    throw CapExceeded("window needs a block beyond the size cap");
}

void orbit_stat_row(Output& out, const OrbitStat& st) {
    out.csv_rows.push_back({st.window, orbit_mode_name(st.mode),
                            "2^-" + std::to_string(st.eps_exp),
                            st.r ? std::to_string(*st.r) : "",
                            rat_to_string(st.fraction),
                            st.wilson95 ? fmt_double(st.wilson95->first) : "",
                            st.wilson95 ? fmt_double(st.wilson95->second) : "",
                            std::to_string(st.samples), std::to_string(st.seed)});
}

const std::vector<std::string> kOrbitCsvHeader =
    {"window", "mode", "eps", "r", "fraction", "ci_lo", "ci_hi", "samples", "seed"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-resolution symbolic dynamics and circle dilation experiments"};
    app.fallthrough(true);
    app.require_subcommand(1);

    uint64_t seed = 0;
    int workers = 1;
    std::string out_prefix = "irclab_out";
    std::string config_path;
    app.add_option("--seed", seed, "RNG seed; recorded in all outputs")->capture_default_str();
    app.add_option("--workers", workers, "worker threads (results are independent of this)")
        ->capture_default_str();
    app.add_option("--out", out_prefix, "output path prefix")->capture_default_str();
    app.add_option("--config", config_path, "JSON config file (flags take precedence)");

    uint64_t cap = cap_default();

    // ---- chacon ----
    auto* chacon_cmd = app.add_subcommand("chacon", "Chacon block combinatorics");
    auto* verify = chacon_cmd->add_subcommand("verify-spacing",
                                              "occurrence gaps and forbidden distances in b_N");
    int max_level = 8;
    std::string pattern = "0010";
    verify->add_option("--max-level", max_level, "largest block index to scan")
        ->capture_default_str();
    verify->add_option("--pattern", pattern, "pattern word")->capture_default_str();

    auto* orbit_cmd = chacon_cmd->add_subcommand("orbit-stats",
                                                 "D/E/Z statistics over shift windows");
    std::string orbit_mode = "D";
    int os_level = 4, os_lcount = 5, os_eps = 5, os_block = 0;
    int64_t os_start = 0, os_end = 200;
    uint64_t os_r = 0;
    orbit_cmd->add_option("--mode", orbit_mode, "D | E | Z")->capture_default_str();
    orbit_cmd->add_option("--level", os_level, "hyperspace level m")->capture_default_str();
    orbit_cmd->add_option("--l-count", os_lcount, "truncation size of W")->capture_default_str();
    orbit_cmd->add_option("--eps-exp", os_eps, "threshold 2^-e")->capture_default_str();
    orbit_cmd->add_option("--window-start", os_start, "first shift")->capture_default_str();
    orbit_cmd->add_option("--window-end", os_end, "one past the last shift")->capture_default_str();
    orbit_cmd->add_option("--r", os_r, "finite-set size for E mode");
    orbit_cmd->add_option("--block-level", os_block, "embedding block (0 = auto)")
        ->capture_default_str();

    // ---- hyperspace ----
    auto* hyper = app.add_subcommand("hyperspace", "finite levels of K(X)");
    auto* covers = hyper->add_subcommand("count-covers", "covering r-subset counts");
    int cc_n = 2, cc_k = 1, cc_i = 1;
    uint64_t cc_r = 2;
    std::string cc_sided = "one";
    covers->add_option("--n", cc_n, "alphabet size")->capture_default_str();
    covers->add_option("--k", cc_k, "coarse level")->capture_default_str();
    covers->add_option("--i", cc_i, "level offset")->capture_default_str();
    covers->add_option("--r", cc_r, "subset size")->capture_default_str();
    covers->add_option("--sided", cc_sided, "one | two")->capture_default_str();

    auto* occup = hyper->add_subcommand("occupancy", "level image law of k iid points");
    int oc_n = 2, oc_k = 2, oc_m = 1;
    std::string oc_mode = "exact";
    uint64_t oc_samples = 100000;
    occup->add_option("--n", oc_n, "alphabet size")->capture_default_str();
    occup->add_option("--k", oc_k, "points")->capture_default_str();
    occup->add_option("--m", oc_m, "level")->capture_default_str();
    occup->add_option("--mode", oc_mode, "exact | mc")->capture_default_str();
    occup->add_option("--samples", oc_samples, "MC samples")->capture_default_str();

    // ---- actions ----
    auto* actions = app.add_subcommand("actions", "permutation-group actions");
    auto* trans = actions->add_subcommand("transitivity", "orbit BFS on r-sets / r-tuples");
    uint32_t tr_kappa = 4, tr_r = 2;
    std::string tr_mode = "tuple", tr_gens = "sym";
    trans->add_option("--kappa", tr_kappa, "level cell count")->capture_default_str();
    trans->add_option("--r", tr_r, "set/tuple size")->capture_default_str();
    trans->add_option("--mode", tr_mode, "set | tuple")->capture_default_str();
    trans->add_option("--generators", tr_gens, "sym | alt | cycle")->capture_default_str();

    auto* zk = actions->add_subcommand("zk", "prefix-permutation Z_k sweep");
    int zk_n = 2, zk_kmin = 1, zk_kmax = 8, zk_level = 10, zk_eps = 3;
    uint64_t zk_samples = 10000, zk_group_cap = 1000000;
    std::string zk_mode = "Z";
    uint64_t zk_r = 0;
    zk->add_option("--n", zk_n, "alphabet size")->capture_default_str();
    zk->add_option("--k-min", zk_kmin, "first prefix length")->capture_default_str();
    zk->add_option("--k-max", zk_kmax, "last prefix length")->capture_default_str();
    zk->add_option("--level", zk_level, "level of the sunny-side-up set")->capture_default_str();
    zk->add_option("--eps-exp", zk_eps, "threshold 2^-e")->capture_default_str();
    zk->add_option("--mode", zk_mode, "D | E | Z")->capture_default_str();
    zk->add_option("--r", zk_r, "finite-set size for E mode");
    zk->add_option("--samples", zk_samples, "MC samples per k")->capture_default_str();
    zk->add_option("--group-cap", zk_group_cap, "exhaustive enumeration cap on (n^k)!")
        ->capture_default_str();

    auto* rblock = actions->add_subcommand("rblock", "r-block containment probability");
    int rb_n = 2, rb_m = 2, rb_k = 1;
    uint64_t rb_alpha = 2, rb_r = 1, rb_samples = 10000;
    std::string rb_mode = "exact";
    rblock->add_option("--n", rb_n, "alphabet size")->capture_default_str();
    rblock->add_option("--m", rb_m, "word length")->capture_default_str();
    rblock->add_option("--k", rb_k, "interval scale: length n^(m-k)")->capture_default_str();
    rblock->add_option("--alpha", rb_alpha, "subset size")->capture_default_str();
    rblock->add_option("--r", rb_r, "number of intervals")->capture_default_str();
    rblock->add_option("--mode", rb_mode, "exact | mc | bound")->capture_default_str();
    rblock->add_option("--samples", rb_samples, "MC samples")->capture_default_str();

    // ---- torus ----
    auto* torus = app.add_subcommand("torus", "exact circle dilation experiments");
    int base = 3;
    std::string digits_csv = "0,2", forbid_csv;
    torus->add_option("--base", base, "digit base p")->capture_default_str();
    torus->add_option("--digits", digits_csv, "allowed digits, comma separated")
        ->capture_default_str();
    torus->add_option("--forbid", forbid_csv, "forbidden words, comma separated");

    auto* dens = torus->add_subcommand("dilate-density", "eps-density fractions over F_m");
    std::string dd_eps = "1/20";
    int dd_mmax = 3, dd_margin = 6;
    bool dd_noreduce = false;
    dens->add_option("--eps", dd_eps, "density threshold (rational)")->capture_default_str();
    dens->add_option("--m-max", dd_mmax, "largest Folner index")->capture_default_str();
    dens->add_option("--margin", dd_margin, "resolution margin")->capture_default_str();
    dens->add_flag("--no-reduce", dd_noreduce, "disable the p-part reduction");

    auto* extract = torus->add_subcommand("extract-j", "J-set construction over a horizon");
    int ej_horizon = 3, ej_rmax = 12, ej_margin = 6;
    extract->add_option("--horizon", ej_horizon, "Folner horizon")->capture_default_str();
    extract->add_option("--r-max", ej_rmax, "largest gap threshold index")->capture_default_str();
    extract->add_option("--margin", ej_margin, "resolution margin")->capture_default_str();

    auto* bp = torus->add_subcommand("berend-peres", "condensation construction");
    int bp_imax = 2, bp_t = 2, bp_m = 2;
    bool bp_scaled = false;
    std::string bp_delta = "1/4";
    bp->add_option("--i-max", bp_imax, "growth steps")->capture_default_str();
    bp->add_flag("--scaled", bp_scaled, "use the scaled qualitative rule");
    bp->add_option("--t", bp_t, "truncation of Y")->capture_default_str();
    bp->add_option("--m", bp_m, "Folner index for the condensation fraction")
        ->capture_default_str();
    bp->add_option("--delta", bp_delta, "condensation radius (rational)")->capture_default_str();

    auto* weyl = torus->add_subcommand("weyl", "star discrepancy along a dilation sequence");
    std::string wy_seq = "squares";
    std::vector<std::string> wy_alpha{"sqrt:2"};
    uint64_t wy_n = 100000;
    weyl->add_option("--seq", wy_seq, "naturals | squares")->capture_default_str();
    weyl->add_option("--alpha", wy_alpha, "alpha spec(s): sqrt:D | golden | rat:p/q | decimal")
        ->capture_default_str();
    weyl->add_option("--n", wy_n, "number of points")->capture_default_str();

    // ---- estimate ----
    auto* est = app.add_subcommand("estimate", "empirical measures on hyperspace levels");
    auto* acc = est->add_subcommand("accumulate", "average point masses over an orbit window");
    std::string ac_system = "chacon";
    int ac_level = 4, ac_lcount = 5, ac_block = 0, ac_eps = 5, ac_k = 1;
    int64_t ac_start = 0, ac_end = 100;
    std::string ac_rlist = "1,2,3";
    acc->add_option("--system", ac_system, "chacon | prefix-sunny")->capture_default_str();
    acc->add_option("--level", ac_level, "hyperspace level")->capture_default_str();
    acc->add_option("--l-count", ac_lcount, "Chacon truncation size")->capture_default_str();
    acc->add_option("--block-level", ac_block, "embedding block (0 = auto)")->capture_default_str();
    acc->add_option("--k", ac_k, "prefix length for prefix-sunny")->capture_default_str();
    acc->add_option("--window-start", ac_start, "first shift")->capture_default_str();
    acc->add_option("--window-end", ac_end, "one past the last shift")->capture_default_str();
    acc->add_option("--eps-exp", ac_eps, "diagnostic threshold 2^-e")->capture_default_str();
    acc->add_option("--r-list", ac_rlist, "finite-set sizes for diagnostics")
        ->capture_default_str();

    // Config file: apply values for options not set on the command line.
    std::vector<std::string> args(argv + 1, argv + argc);
    for (size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] == "--config") config_path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (!args.empty() && args.back().rfind("--config=", 0) == 0)
        config_path = args.back().substr(9);
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "config file not found: " << config_path << "\n";
            return kExitValidation;
        }
        Json cfg;
        try {
            in >> cfg;
        } catch (const std::exception& e) {
            std::cerr << "config parse error: " << e.what() << "\n";
            return kExitValidation;
        }
        for (const auto& [key, value] : cfg.items()) {
            const std::string flag = "--" + key;
            bool present = false;
            for (const auto& a : args) {
                if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
            }
            if (present) continue;
            args.push_back(flag + "=" +
                           (value.is_string() ? value.get<std::string>() : value.dump()));
        }
    }

    try {
        std::vector<const char*> cargs{argv[0]};
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    Output out;
    collect_config(&app, out.config);

    try {
        if (*verify) {
            out.csv_header = {"N", "block_length", "occurrences", "gaps_ok", "forbidden_hits"};
            bool all_ok = true;
            uint64_t total_hits = 0;
            for (int N = 1; N <= max_level; ++N) {
                const auto rep =
                    chacon::forbidden_distance_check(N, Word::parse(pattern, 2), {}, cap);
                const bool gaps_ok = rep.gaps_within({4, 5});
                all_ok = all_ok && gaps_ok && rep.forbidden_hits.empty();
                total_hits += rep.forbidden_hits.size();
                Json j = to_json(rep);
                j["N"] = N;
                out.records.push_back(std::move(j));
                out.csv_rows.push_back({std::to_string(N),
                                        chacon::block_length(N).str(),
                                        std::to_string(rep.starts.size()),
                                        gaps_ok ? "yes" : "no",
                                        std::to_string(rep.forbidden_hits.size())});
            }
            out.summary = "verify-spacing: gaps in {4,5} and zero forbidden hits: " +
                          std::string(all_ok ? "yes" : "NO");
            out.write(out_prefix);
            return all_ok ? kExitOk : kExitValidation;
        }

        if (*orbit_cmd) {
            const auto L = chacon::forbidden_distances(os_lcount + 1);
            const int64_t max_l = L.empty() ? 0 : L.back();
            const int N = os_block > 0
                              ? os_block
                              : smallest_block_level(os_end + max_l + os_level + 1);
            const auto ambient = chacon::language_level_set(os_level, cap);
            auto orbit = [&](int64_t j) {
                return chacon::shifted_y_level_set(j, os_level, os_lcount, N, cap);
            };
            OrbitMode mode = orbit_mode == "D"   ? OrbitMode::far_from_full
                             : orbit_mode == "E" ? OrbitMode::far_from_finite
                             : orbit_mode == "Z" ? OrbitMode::near_full
                                                 : throw ValidationError("mode must be D, E or Z");
            std::optional<uint64_t> r;
            if (os_r > 0) r = os_r;
            auto st = orbit_stat_window(orbit, os_start, os_end, ambient, mode, os_eps, r,
                                        workers);
            st.seed = seed;
            out.csv_header = kOrbitCsvHeader;
            out.records.push_back(to_json(st));
            orbit_stat_row(out, st);
            out.summary = "orbit-stats " + orbit_mode + ": fraction " +
                          rat_to_string(st.fraction) + " over " + st.window;
            out.write(out_prefix);
            return kExitOk;
        }

        if (*covers) {
            const auto profile =
                TreeProfile::full_shift(cc_n, cc_sided == "two" ? Sided::two : Sided::one);
            bool vacuous = false;
            const Int count = count_covering_subsets(profile, cc_k, cc_i, Int(cc_r), &vacuous);
            const Int total = binomial(profile.kappa(cc_k + cc_i), Int(cc_r));
            const auto bracket = covering_fraction_bound(profile, cc_k, Int(cc_r));
            Json j;
            j["count"] = count.str();
            j["total"] = total.str();
            j["fraction"] = total > 0 ? rat_to_string(Rat(count, total)) : "0";
            j["vacuous"] = vacuous;
            j["bound_lower"] = rat_to_string(bracket.lower);
            j["bound_upper"] = rat_to_string(bracket.upper);
            out.records.push_back(std::move(j));
            out.csv_header = {"n", "k", "i", "r", "count", "total", "fraction", "bound_lower"};
            out.csv_rows.push_back({std::to_string(cc_n), std::to_string(cc_k),
                                    std::to_string(cc_i), std::to_string(cc_r), count.str(),
                                    total.str(),
                                    total > 0 ? rat_to_string(Rat(count, total)) : "0",
                                    rat_to_string(bracket.lower)});
            out.summary = "count-covers: " + count.str() + "/" + total.str();
            out.write(out_prefix);
            return kExitOk;
        }

        if (*occup) {
            EmpiricalIRC law = oc_mode == "mc"
                                   ? occupancy_law_mc(oc_n, oc_k, oc_m, oc_samples, seed, workers)
                                   : occupancy_law_exact(oc_n, oc_k, oc_m, cap);
            Json j = to_json(law);
            j["mode"] = oc_mode;
            if (oc_mode == "mc") {
                j["samples"] = oc_samples;
                j["seed"] = seed;
                // Distance to the exact law when enumerable.
                try {
                    j["tv_to_exact"] =
                        rat_to_string(tv_distance(law, occupancy_law_exact(oc_n, oc_k, oc_m, cap)));
                } catch (const CapExceeded&) {
                }
            }
            out.records.push_back(std::move(j));
            out.csv_header = {"cells", "weight"};
            for (const auto& [ls, w] : law.atoms) {
                std::string cells;
                for (const Word& wd : ls.cells) cells += (cells.empty() ? "" : " ") + wd.str();
                out.csv_rows.push_back({cells, rat_to_string(w)});
            }
            out.summary = "occupancy " + oc_mode + ": " + std::to_string(law.atoms.size()) +
                          " atoms at level " + std::to_string(oc_m);
            out.write(out_prefix);
            return kExitOk;
        }

        if (*trans) {
            std::vector<std::vector<uint32_t>> gens;
            if (tr_gens == "sym") gens = symmetric_generators(tr_kappa);
            else if (tr_gens == "alt") gens = alternating_generators(tr_kappa);
            else if (tr_gens == "cycle") gens = {full_cycle(tr_kappa)};
            else throw ValidationError("generators must be sym, alt or cycle");
            const auto mode =
                tr_mode == "set" ? TransitivityMode::set : TransitivityMode::tuple;
            const bool transitive = transitivity_check(tr_kappa, gens, tr_r, mode, cap);
            Json j;
            j["kappa"] = tr_kappa;
            j["r"] = tr_r;
            j["mode"] = tr_mode;
            j["generators"] = tr_gens;
            j["transitive"] = transitive;
            out.records.push_back(std::move(j));
            out.csv_header = {"kappa", "r", "mode", "generators", "transitive"};
            out.csv_rows.push_back({std::to_string(tr_kappa), std::to_string(tr_r), tr_mode,
                                    tr_gens, transitive ? "true" : "false"});
            out.summary = "transitivity: " + std::string(transitive ? "true" : "false");
            out.write(out_prefix);
            return kExitOk;
        }

        if (*zk) {
            OrbitMode mode = zk_mode == "D"   ? OrbitMode::far_from_full
                             : zk_mode == "E" ? OrbitMode::far_from_finite
                             : zk_mode == "Z" ? OrbitMode::near_full
                                              : throw ValidationError("mode must be D, E or Z");
            std::optional<uint64_t> r;
            if (zk_r > 0) r = zk_r;
            out.csv_header = kOrbitCsvHeader;
            for (int k = zk_kmin; k <= zk_kmax; ++k) {
                const LevelSet y = sunny_level_set(zk_n, std::max(zk_level, k));
                OrbitStat st;
                Int order = 1;
                bool exhaustible = true;
                const uint64_t table =
                    static_cast<uint64_t>(pow_int(zk_n, static_cast<unsigned>(k)));
                for (uint64_t t = 2; t <= table && exhaustible; ++t) {
                    order *= t;
                    if (order > zk_group_cap) exhaustible = false;
                }
                if (exhaustible) {
                    st = zk_statistic_exhaustive(zk_n, k, y, mode, zk_eps, r, zk_group_cap);
                } else {
                    st = zk_statistic_mc(zk_n, k, y, mode, zk_eps, r, zk_samples,
                                         mix_seed(seed, static_cast<uint64_t>(k)), workers);
                }
                st.window = "k=" + std::to_string(k) + " " + st.window;
                Json j = to_json(st);
                j["k"] = k;
                out.records.push_back(std::move(j));
                orbit_stat_row(out, st);
            }
            out.summary = "zk sweep complete: k in [" + std::to_string(zk_kmin) + "," +
                          std::to_string(zk_kmax) + "]";
            out.write(out_prefix);
            return kExitOk;
        }

        if (*rblock) {
            Json j;
            out.csv_header = {"n", "m", "k", "alpha", "r", "mode", "value", "ci_lo", "ci_hi",
                              "samples", "seed"};
            std::string value_str;
            std::pair<double, double> ci{0, 0};
            bool has_ci = false;
            uint64_t used_samples = 0;
            if (rb_mode == "exact") {
                const auto res = rblock_exact(rb_n, rb_m, rb_k, rb_alpha, rb_r, 20);
                value_str = rat_to_string(res.value);
                j["value"] = value_str;
                j["hits"] = res.hits;
                j["total"] = res.total;
            } else if (rb_mode == "mc") {
                const auto res = rblock_mc(rb_n, rb_m, rb_k, rb_alpha, rb_r, rb_samples, seed,
                                           workers);
                value_str = rat_to_string(res.value);
                j["value"] = value_str;
                has_ci = true;
                ci = *res.wilson95;
                used_samples = rb_samples;
                j["ci_lo"] = ci.first;
                j["ci_hi"] = ci.second;
                j["samples"] = rb_samples;
                j["seed"] = seed;
            } else if (rb_mode == "bound") {
                const auto res = rblock_bound(rb_n, rb_m, rb_k, rb_alpha, rb_r);
                j["gamma"] = rat_to_string(res.gamma);
                j["vacuous"] = res.vacuous;
                if (res.counting) j["counting_bound"] = rat_to_string(*res.counting);
                if (res.asymptotic) j["asymptotic_bound"] = rat_to_string(*res.asymptotic);
                value_str = res.vacuous           ? "vacuous"
                            : res.asymptotic      ? rat_to_string(*res.asymptotic)
                                                  : "";
            } else {
                throw ValidationError("mode must be exact, mc or bound");
            }
            j["mode"] = rb_mode;
            out.records.push_back(std::move(j));
            out.csv_rows.push_back({std::to_string(rb_n), std::to_string(rb_m),
                                    std::to_string(rb_k), std::to_string(rb_alpha),
                                    std::to_string(rb_r), rb_mode, value_str,
                                    has_ci ? fmt_double(ci.first) : "",
                                    has_ci ? fmt_double(ci.second) : "",
                                    std::to_string(used_samples), std::to_string(seed)});
            out.summary = "rblock " + rb_mode + ": " + value_str;
            out.write(out_prefix);
            return kExitOk;
        }

        if (*dens || *extract) {
            const DigitSet y = digit_set_from(digits_csv, forbid_csv, base);
            DilationPolicy policy;
            policy.margin = *dens ? dd_margin : ej_margin;
            policy.word_cap = cap;
            policy.workers = workers;
            policy.reduce_by_invariance = !dd_noreduce && y.shift_invariant();
            if (*dens) {
                const Rat eps = parse_rat(dd_eps);
                const auto reports = dilation_density(y, dd_mmax, eps, policy);
                out.csv_header = {"m", "n", "m_prime", "max_gap", "verdict", "ambiguous"};
                for (const auto& rep : reports) {
                    Json j;
                    j["m"] = rep.m;
                    j["eps"] = rat_to_string(rep.eps);
                    j["dense"] = rep.dense;
                    j["not_dense"] = rep.not_dense;
                    j["ambiguous"] = rep.ambiguous;
                    j["fraction"] = rat_to_string(rep.fraction);
                    out.records.push_back(std::move(j));
                    if (rep.m == dd_mmax) {
                        for (const auto& v : rep.table) {
                            out.csv_rows.push_back({std::to_string(rep.m), v.n.str(),
                                                    std::to_string(v.m_prime),
                                                    rat_to_string(v.gap),
                                                    verdict_name(v.verdict),
                                                    v.verdict == Verdict::ambiguous ? "yes"
                                                                                    : "no"});
                        }
                    }
                }
                out.summary = "dilate-density " + y.describe() + ": fraction at m=" +
                              std::to_string(dd_mmax) + " is " +
                              rat_to_string(reports.back().fraction) + " (" +
                              std::to_string(reports.back().ambiguous) + " ambiguous)";
            } else {
                const auto rep = extract_j(y, ej_horizon, ej_rmax, policy);
                out.csv_header = {"m", "r_of_m", "I_defined", "j_m_fraction", "trace",
                                  "sup_ell_on_j_m"};
                for (int m = 1; m <= ej_horizon; ++m) {
                    const size_t mi = static_cast<size_t>(m);
                    Json j;
                    j["m"] = m;
                    j["r_of_m"] = rep.r_of_m[mi];
                    j["j_m_fraction"] = rat_to_string(rep.j_m_fraction[mi]);
                    j["trace"] = rat_to_string(rep.trace[mi]);
                    j["sup_ell_on_j_m"] = rat_to_string(rep.sup_ell_on_j_m[mi]);
                    out.records.push_back(std::move(j));
                    out.csv_rows.push_back({std::to_string(m), std::to_string(rep.r_of_m[mi]),
                                            rep.r_of_m[mi] > 0 ? "yes" : "no",
                                            rat_to_string(rep.j_m_fraction[mi]),
                                            rat_to_string(rep.trace[mi]),
                                            rat_to_string(rep.sup_ell_on_j_m[mi])});
                }
                Json members = Json::array();
                for (size_t i = 0; i < rep.universe.size(); ++i) {
                    if (rep.in_j[i]) members.push_back(rep.universe[i].str());
                }
                out.records.push_back(Json{{"J", std::move(members)},
                                           {"truncated", rep.truncated}});
                out.summary = "extract-j horizon " + std::to_string(ej_horizon) +
                              ": trace at horizon " +
                              rat_to_string(rep.trace[static_cast<size_t>(ej_horizon)]);
            }
            out.write(out_prefix);
            return kExitOk;
        }

        if (*bp) {
            const auto set = berend_peres(bp_imax, bp_scaled, 4096);
            Json j;
            j["scaled"] = set.scaled;
            Json qs = Json::array();
            for (const auto& q : set.Q) qs.push_back(q.str());
            j["Q"] = std::move(qs);
            if (!set.m_index.empty()) j["m_index"] = set.m_index;
            const Rat delta = parse_rat(bp_delta);
            const int t = std::min<int>(bp_t, static_cast<int>(set.Q.size()));
            j["t"] = t;
            const Rat frac = set.condensation_fraction(bp_m, delta, t);
            j["condensation_fraction"] = rat_to_string(frac);
            // Divisibility census against the closed form.
            Json divs = Json::array();
            for (int s = 0; s <= bp_m; ++s) {
                divs.push_back(Json{{"s", s},
                                    {"formula", rat_to_string(divisibility_fraction_formula(bp_m, s))},
                                    {"count", rat_to_string(divisibility_fraction_count(bp_m, s))}});
            }
            j["divisibility"] = std::move(divs);
            out.records.push_back(std::move(j));
            out.csv_header = {"i", "Q"};
            for (size_t i = 0; i < set.Q.size(); ++i)
                out.csv_rows.push_back({std::to_string(i + 1), set.Q[i].str()});
            out.summary = "berend-peres: condensation fraction " + rat_to_string(frac) +
                          " at m=" + std::to_string(bp_m) + ", delta=" + bp_delta;
            out.write(out_prefix);
            return kExitOk;
        }

        if (*weyl) {
            std::vector<AlphaSpec> alphas;
            for (const auto& a : wy_alpha) alphas.push_back(AlphaSpec::parse(a));
            const SeqKind kind = wy_seq == "naturals" ? SeqKind::naturals
                                 : wy_seq == "squares"
                                     ? SeqKind::squares
                                     : throw ValidationError("seq must be naturals or squares");
            const auto rep = weyl_discrepancy(kind, alphas, wy_n, cap);
            Json j;
            j["seq"] = wy_seq;
            Json al = Json::array();
            for (const auto& a : alphas) al.push_back(a.describe());
            j["alpha"] = std::move(al);
            j["n"] = rep.n_points;
            j["dstar"] = rep.dstar;
            j["coord_dstar"] = rep.coord_dstar;
            j["rational_flag"] = rep.rational_flag;
            if (rep.product_box) j["product_box"] = *rep.product_box;
            out.records.push_back(std::move(j));
            out.csv_header = {"seq", "alpha", "n", "dstar", "rational_flag"};
            std::string alpha_str;
            for (const auto& a : alphas) alpha_str += (alpha_str.empty() ? "" : " ") + a.describe();
            out.csv_rows.push_back({wy_seq, alpha_str, std::to_string(rep.n_points),
                                    fmt_double(rep.dstar), rep.rational_flag ? "yes" : "no"});
            out.summary = "weyl: D* = " + fmt_double(rep.dstar) + " at N = " +
                          std::to_string(rep.n_points);
            out.write(out_prefix);
            return kExitOk;
        }

        if (*acc) {
            EmpiricalIRC e;
            if (ac_system == "chacon") {
                const auto L = chacon::forbidden_distances(ac_lcount + 1);
                const int64_t max_l = L.empty() ? 0 : L.back();
                const int N = ac_block > 0
                                  ? ac_block
                                  : smallest_block_level(ac_end + max_l + ac_level + 1);
                e = accumulate(
                    [&](int64_t j) {
                        return chacon::shifted_y_level_set(j, ac_level, ac_lcount, N, cap);
                    },
                    ac_start, ac_end, chacon::language_level_set(ac_level, cap), workers,
                    "chacon shifts");
            } else if (ac_system == "prefix-sunny") {
                // Exhaustive over Sym(n^k) when small.
                const LevelSet y = sunny_level_set(2, std::max(ac_level, ac_k));
                const uint64_t table = uint64_t{1} << ac_k;
                std::vector<uint32_t> perm(table);
                for (uint64_t i = 0; i < table; ++i) perm[i] = static_cast<uint32_t>(i);
                std::vector<LevelSet> points;
                do {
                    points.push_back(
                        apply_permutation(BlockPermutation{2, ac_k, PermMode::prefix, perm}, y));
                } while (std::next_permutation(perm.begin(), perm.end()) &&
                         points.size() < 50000);
                e = accumulate(points, full_level_set(2, Sided::one, y.level),
                               "Sym(2^" + std::to_string(ac_k) + ") exhaustive");
            } else {
                throw ValidationError("system must be chacon or prefix-sunny");
            }
            Json j = to_json(e);
            j["mass_near_full"] = rat_to_string(mass_near_full(e, ac_eps));
            Json masses = Json::array();
            std::string cur;
            for (char c : ac_rlist + ",") {
                if (c == ',') {
                    if (!cur.empty()) {
                        const uint64_t r = std::stoull(cur);
                        masses.push_back(Json{
                            {"r", r},
                            {"mass_near_finite", rat_to_string(mass_near_finite(e, r, ac_eps))}});
                    }
                    cur.clear();
                } else {
                    cur.push_back(c);
                }
            }
            j["near_finite"] = std::move(masses);
            out.records.push_back(std::move(j));
            out.csv_header = {"atoms", "mass_near_full", "eps"};
            out.csv_rows.push_back({std::to_string(e.atoms.size()),
                                    rat_to_string(mass_near_full(e, ac_eps)),
                                    "2^-" + std::to_string(ac_eps)});
            out.summary = "accumulate: " + std::to_string(e.atoms.size()) + " atoms; " +
                          "mass near full at 2^-" + std::to_string(ac_eps) + " = " +
                          rat_to_string(mass_near_full(e, ac_eps));
            out.write(out_prefix);
            return kExitOk;
        }

        std::cerr << "no subcommand selected\n";
        return kExitUsage;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const ValidationError& e) {
        std::cerr << "invalid request: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
