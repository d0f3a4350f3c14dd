// cbal: command-line surface over the library modules.  Every run emits a
// self-contained report; --json switches to single-line machine output.
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "cbal/balance.hpp"
#include "cbal/construct.hpp"
#include "cbal/euler.hpp"
#include "cbal/graph.hpp"
#include "cbal/pattern.hpp"
#include "cbal/search.hpp"

using json = nlohmann::json;
using namespace cbal;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr const char* kSchema = "cbal.run-report/1";

// exit codes: 0 success, 1 definitive absence, 2 soft failure / budget, 3 validation
enum ExitCode { kOk = 0, kAbsent = 1, kSoft = 2, kInvalid = 3 };

struct RunContext {
    std::vector<std::string> argv_echo;
    json inputs = json::object();   // file -> content digest
    json counters = json::object();
    json payload = json::object();
    std::string status = "ok";
    std::uint64_t seed = 0;
    int exit_code = kOk;
    bool json_out = false;
};

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(RunContext& ctx, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    auto data = ss.str();
    ctx.inputs[path] = fnv1a_hex(data);
    return data;
}

ColoredCompleteGraph load_graph(RunContext& ctx, const std::string& path) {
    return ColoredCompleteGraph::from_text(read_file(ctx, path));
}

PatternTemplate load_template(RunContext& ctx, const std::string& path) {
    return template_from_json(read_file(ctx, path));
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw validation_error("bad integer '" + s + "' in " + what);
    }
}

// guest spec: path:L, cycle:L, or file:PATH (edge list: "n m" then m "u v" lines)
Guest parse_guest(RunContext& ctx, const std::string& spec) {
    auto pos = spec.find(':');
    if (pos == std::string::npos)
        throw validation_error("guest spec must be path:L, cycle:L, or file:PATH");
    auto kind = spec.substr(0, pos);
    auto arg = spec.substr(pos + 1);
    if (kind == "path") return path_guest(parse_int(arg, "guest spec"));
    if (kind == "cycle") return cycle_guest(parse_int(arg, "guest spec"));
    if (kind == "file") {
        std::istringstream in(read_file(ctx, arg));
        Guest g;
        long m = 0;
        if (!(in >> g.n >> m) || g.n < 1 || m < 0)
            throw validation_error("guest file must start with 'n m'");
        for (long i = 0; i < m; ++i) {
            int u, v;
            if (!(in >> u >> v)) throw validation_error("guest file: missing edge line");
            if (u < 0 || v < 0 || u >= g.n || v >= g.n || u == v)
                throw validation_error("guest file: bad edge endpoints");
            g.edges.push_back({u, v});
        }
        return g;
    }
    throw validation_error("unknown guest kind '" + kind + "'");
}

json embedding_json(const Embedding& e) {
    return json{{"map", e.map}, {"profile", e.profile}, {"guest_edges", e.guest.m()}};
}

json histogram_json(const ColoredCompleteGraph& g) { return json(g.histogram().counts); }

const char* certify_name(CertifyStatus s) {
    switch (s) {
        case CertifyStatus::CONFIRMED_ABSENT: return "CONFIRMED_ABSENT";
        case CertifyStatus::REFUTED_PRESENT: return "REFUTED_PRESENT";
        default: return "SKIPPED_TOO_LARGE";
    }
}

json certify_json(const CertifyResult& res) {
    json out{{"status", certify_name(res.status)}};
    if (res.found) out["found"] = embedding_json(*res.found);
    return out;
}

void emit(const RunContext& ctx, double wall_ms) {
    json report{{"schema", kSchema},      {"version", kVersion},
                {"command", ctx.argv_echo}, {"inputs", ctx.inputs},
                {"seed", ctx.seed},        {"status", ctx.status},
                {"counters", ctx.counters}, {"payload", ctx.payload},
                {"wall_ms", wall_ms}};
    if (ctx.json_out) {
        std::cout << report.dump() << "\n";
    } else {
        std::cout << "status: " << ctx.status << "\n" << ctx.payload.dump(2) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    RunContext ctx;
    for (int i = 0; i < argc; ++i) ctx.argv_echo.push_back(argv[i]);

    CLI::App app{"toolkit for balanced subgraphs of edge-colored complete graphs"};
    app.require_subcommand(1);
    app.set_config("--config");
    app.add_flag("--json", ctx.json_out, "single-line machine-readable report");
    app.add_option("--seed", ctx.seed, "random seed for sampled searches");
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = hardware)");
    std::uint64_t budget = 4000000000ULL;
    app.add_option("--budget", budget, "node budget for exhaustive searches")
        ->envname("CBAL_BUDGET");

    std::function<void(RunContext&)> run;

    // ---- patterns ----
    auto* patterns = app.add_subcommand("patterns", "unavoidable pattern catalogue")->fallthrough();
    patterns->require_subcommand(1);
    {
        {
            auto* en = patterns->add_subcommand("enumerate", "enumerate the r-color catalogue")->fallthrough();
            auto r = std::make_shared<int>(3);
            auto out = std::make_shared<std::string>();
            en->add_option("--r", *r, "number of colors")->required();
            en->add_option("--out", *out, "write catalogue JSON to this file");
            en->callback([&, r, out] {
                run = [r, out, &budget](RunContext& c) {
                    PatternCatalogue cat;
                    try {
                        cat = enumerate_patterns(*r, budget);
                    } catch (const enumeration_budget_exceeded& e) {
                        cat = e.partial;
                    }
                    auto text = catalogue_to_json(cat);
                    if (!out->empty()) {
                        std::ofstream f(*out);
                        if (!f) throw validation_error("cannot write file: " + *out);
                        f << text;
                    }
                    c.counters["nodes"] = cat.nodes;
                    c.payload = {{"count", cat.templates.size()},
                                 {"complete", cat.complete},
                                 {"catalogue", json::parse(text)}};
                    if (!cat.complete) {
                        c.status = "budget";
                        c.exit_code = kSoft;
                    }
                };
            });
        }

        {
            auto* va = patterns->add_subcommand("validate", "check a template JSON file")->fallthrough();
            auto file = std::make_shared<std::string>();
            va->add_option("file", *file, "template JSON")->required();
            va->callback([&, file] {
                run = [file](RunContext& c) {
                    auto T = load_template(c, *file);
                    auto chk = is_valid_template(T);
                    c.payload = {{"ok", chk.ok}, {"violation", chk.violation},
                                 {"r", T.r}, {"k", T.k}};
                    if (!chk.ok) {
                        c.status = "absent";
                        c.exit_code = kAbsent;
                    }
                };
            });
        }

        {
            auto* bl = patterns->add_subcommand("blowup", "blow a template up to a colored host")->fallthrough();
            auto bfile = std::make_shared<std::string>();
            auto t = std::make_shared<int>(0);
            bl->add_option("file", *bfile, "template JSON")->required();
            bl->add_option("--t", *t, "part size")->required();
            bl->callback([&, bfile, t] {
                run = [bfile, t](RunContext& c) {
                    auto T = load_template(c, *bfile);
                    auto g = blow_up(T, *t);
                    c.payload = {{"n", g.n()}, {"r", g.r()}, {"graph", g.to_text()}};
                };
            });
        }
    }

    // ---- balance ----
    auto* balance = app.add_subcommand("balance", "balanced copies and balancing numbers")->fallthrough();
    balance->require_subcommand(1);
    {
        {
            auto* fd = balance->add_subcommand("find", "exact balanced-copy search in a host")->fallthrough();
            auto host = std::make_shared<std::string>();
            auto guest = std::make_shared<std::string>();
            auto r = std::make_shared<int>(0);
            fd->add_option("--host", *host, "host graph file")->required();
            fd->add_option("--guest", *guest, "path:L | cycle:L | file:G")->required();
            fd->add_option("--r", *r, "number of colors")->required();
            fd->callback([&, host, guest, r] {
                run = [host, guest, r](RunContext& c) {
                    auto g = load_graph(c, *host);
                    auto gu = parse_guest(c, *guest);
                    std::optional<Embedding> emb;
                    if (guest->rfind("path:", 0) == 0)
                        emb = find_balanced_path(g, static_cast<int>(gu.m()), *r);
                    else if (guest->rfind("cycle:", 0) == 0)
                        emb = find_balanced_cycle(g, static_cast<int>(gu.m()), *r);
                    else
                        emb = find_balanced_copy(g, gu, *r);
                    c.payload["found"] = emb.has_value();
                    if (emb) {
                        c.payload["embedding"] = embedding_json(*emb);
                    } else {
                        c.status = "absent";
                        c.exit_code = kAbsent;
                    }
                };
            });
        }

        {
            auto* nu = balance->add_subcommand("number", "exact balancing number with certificate")->fallthrough();
            auto n = std::make_shared<int>(0);
            auto guest = std::make_shared<std::string>();
            auto r = std::make_shared<int>(0);
            nu->add_option("--n", *n, "host order")->required();
            nu->add_option("--guest", *guest, "path:L | cycle:L | file:G")->required();
            nu->add_option("--r", *r, "number of colors")->required();
            nu->callback([&, n, guest, r] {
                run = [n, guest, r, &budget, &threads](RunContext& c) {
                    auto gu = parse_guest(c, *guest);
                    BalancingOptions opts;
                    opts.node_budget = budget;
                    opts.threads = threads;
                    auto cert = balancing_number_exact(*n, gu, *r, opts);
                    c.counters["nodes"] = cert.nodes;
                    c.payload = {{"n", cert.n}, {"r", cert.r}, {"complete", cert.complete}};
                    if (cert.all_colorings_contain) {
                        c.payload["value"] = "ALL_COLORINGS_CONTAIN";
                    } else {
                        c.payload["value"] = cert.value;
                        c.payload["witness"] = cert.witness->to_text();
                    }
                    if (!cert.complete) {
                        c.status = "budget";
                        c.exit_code = kSoft;
                    }
                };
            });
        }

        {
            auto* cb = balance->add_subcommand("check-balanceable",
                                               "balanced embeddability into every pattern blow-up")->fallthrough();
            auto guest = std::make_shared<std::string>();
            auto r = std::make_shared<int>(0);
            cb->add_option("--guest", *guest, "path:L | cycle:L | file:G")->required();
            cb->add_option("--r", *r, "number of colors")->required();
            cb->callback([&, guest, r] {
                run = [guest, r](RunContext& c) {
                    auto gu = parse_guest(c, *guest);
                    auto cat = enumerate_patterns(*r);
                    auto rep = balanceable_check(gu, *r, cat);
                    c.payload = {{"balanceable", rep.balanceable},
                                 {"pattern_count", cat.templates.size()},
                                 {"failing_patterns", rep.failing_patterns}};
                    if (!rep.balanceable) {
                        c.status = "absent";
                        c.exit_code = kAbsent;
                    }
                };
            });
        }
    }

    // ---- construct ----
    auto* construct = app.add_subcommand("construct", "extremal colorings with certificates")->fallthrough();
    construct->require_subcommand(1);
    {
        {
            auto* pb = construct->add_subcommand("path-blocker", "3-coloring with no balanced P_3k")->fallthrough();
            auto n = std::make_shared<int>(0);
            auto k = std::make_shared<int>(0);
            pb->add_option("--n", *n, "host order")->required();
            pb->add_option("--k", *k, "path parameter: blocks P_{3k}")->required();
            pb->callback([&, n, k] {
                run = [n, k](RunContext& c) {
                    auto g = construct_path_blocker(*n, *k);
                    auto cert = certify_avoidance(g, path_guest(3 * *k));
                    c.payload = {{"graph", g.to_text()},
                                 {"histogram", histogram_json(g)},
                                 {"certificate", certify_json(cert)}};
                };
            });
        }

        {
            auto* cp = construct->add_subcommand("clique-partition",
                                                 "l cliques, one color per cross pair")->fallthrough();
            auto n = std::make_shared<int>(0);
            auto l = std::make_shared<int>(0);
            auto k = std::make_shared<int>(1);
            cp->add_option("--n", *n, "host order")->required();
            cp->add_option("--l", *l, "number of cliques")->required();
            cp->add_option("--k", *k, "path parameter for the parity check (P_{rk})");
            cp->callback([&, n, l, k] {
                run = [n, l, k](RunContext& c) {
                    auto g = construct_clique_partition(*n, *l);
                    int r = *l * (*l - 1) / 2 + 1;
                    auto cert = certify_avoidance(g, path_guest(r * *k));
                    c.payload = {{"graph", g.to_text()},
                                 {"r", r},
                                 {"histogram", histogram_json(g)},
                                 {"parity_obstruction", parity_obstruction_check(g, *l, *k)},
                                 {"certificate", certify_json(cert)}};
                };
            });
        }

        {
            auto* sp = construct->add_subcommand("separator", "separator pattern blow-up")->fallthrough();
            auto r = std::make_shared<int>(0);
            auto t = std::make_shared<int>(1);
            sp->add_option("--r", *r, "number of colors")->required();
            sp->add_option("--t", *t, "part size");
            sp->callback([&, r, t] {
                run = [r, t](RunContext& c) {
                    auto T = separator_pattern(*r);
                    auto g = blow_up(T, *t);
                    c.payload = {{"graph", g.to_text()},
                                 {"template", json::parse(template_to_json(T))},
                                 {"histogram", histogram_json(g)}};
                };
            });
        }

        {
            auto* pbb = construct->add_subcommand("pattern-blowup",
                                                  "blocker blow-up from a guest-avoiding template")->fallthrough();
            auto file = std::make_shared<std::string>();
            auto guest = std::make_shared<std::string>();
            auto n = std::make_shared<int>(0);
            pbb->add_option("--template", *file, "template JSON")->required();
            pbb->add_option("--guest", *guest, "path:L | cycle:L | file:G")->required();
            pbb->add_option("--n", *n, "host order")->required();
            pbb->callback([&, file, guest, n] {
                run = [file, guest, n](RunContext& c) {
                    auto T = load_template(c, *file);
                    auto gu = parse_guest(c, *guest);
                    auto g = construct_pattern_blowup_blocker(T, gu, *n);
                    auto cert = certify_avoidance(g, gu);
                    c.payload = {{"graph", g.to_text()},
                                 {"histogram", histogram_json(g)},
                                 {"certificate", certify_json(cert)}};
                };
            });
        }
    }

    // ---- euler ----
    auto* euler = app.add_subcommand("euler", "Eulerian balanced-path embedding")->fallthrough();
    euler->require_subcommand(1);
    {
        {
            auto* em = euler->add_subcommand("embed", "balanced P_2rk in a template blow-up")->fallthrough();
            auto file = std::make_shared<std::string>();
            auto k = std::make_shared<int>(0);
            auto t = std::make_shared<int>(0);
            auto mode = std::make_shared<std::string>("relaxed");
            em->add_option("--template", *file, "template JSON")->required();
            em->add_option("--k", *k, "edges per color = k; path has 2rk edges")->required();
            em->add_option("--t", *t, "part size (default: exact vertex budget)");
            em->add_option("--mode", *mode, "uniform | relaxed")
                ->check(CLI::IsMember({"uniform", "relaxed"}));
            em->callback([&, file, k, t, mode] {
                run = [file, k, t, mode](RunContext& c) {
                    auto T = load_template(c, *file);
                    bool uniform = *mode == "uniform";
                    auto budget = embed_vertex_budget(T, *k, uniform);
                    int part_size = *t;
                    if (part_size == 0)
                        part_size = *std::max_element(budget.begin(), budget.end());
                    auto emb = embed_balanced_long_path(T, part_size, *k, uniform);
                    c.payload = {{"t", part_size},
                                 {"k", *k},
                                 {"mode", *mode},
                                 {"vertex_budget", budget},
                                 {"embedding", embedding_json(emb)}};
                };
            });
        }

        {
            auto* pa = euler->add_subcommand("parity", "forced part degrees of the contracted walk")->fallthrough();
            auto file = std::make_shared<std::string>();
            auto k = std::make_shared<int>(0);
            pa->add_option("--template", *file, "template JSON")->required();
            pa->add_option("--k", *k, "edges per color")->required();
            pa->callback([&, file, k] {
                run = [file, k](RunContext& c) {
                    auto T = load_template(c, *file);
                    auto rep = walk_parity_report(T, *k);
                    c.payload = {{"determined", rep.determined},
                                 {"degree", rep.degree},
                                 {"odd_parts", rep.odd_parts},
                                 {"trail_feasible", rep.trail_feasible}};
                };
            });
        }
    }

    // ---- search ----
    auto* search = app.add_subcommand("search", "pattern-member search in a host")->fallthrough();
    search->require_subcommand(1);
    {
        {
            auto* sp = search->add_subcommand("pattern", "find a pattern blow-up member")->fallthrough();
            auto host = std::make_shared<std::string>();
            auto t = std::make_shared<int>(2);
            auto exact = std::make_shared<bool>(false);
            auto trials = std::make_shared<int>(200);
            sp->add_option("--host", *host, "host graph file")->required();
            sp->add_option("--t", *t, "part size to find")->required();
            sp->add_flag("--exact", *exact, "exhaustive search (absence is definitive)");
            sp->add_option("--trials", *trials, "sampler trials per color (heuristic mode)");
            sp->callback([&, host, t, exact, trials] {
                run = [host, t, exact, trials](RunContext& c) {
                    auto g = load_graph(c, *host);
                    std::optional<PatternMatch> m;
                    if (*exact) {
                        m = find_pattern_member_exact(g, *t, enumerate_patterns(g.r()));
                    } else {
                        DrcConfig cfg;
                        cfg.seed = c.seed;
                        cfg.trials = *trials;
                        m = find_pattern_member(g, *t, cfg);
                    }
                    c.payload["found"] = m.has_value();
                    c.payload["mode"] = *exact ? "exact" : "heuristic";
                    if (m) {
                        bool ok = verify_pattern_match(g, *m);
                        if (!ok) throw validation_error("search: internal: match failed verification");
                        c.payload["verified"] = true;
                        c.payload["template"] = json::parse(template_to_json(m->T));
                        c.payload["parts"] = m->parts;
                    } else if (*exact) {
                        c.status = "absent";
                        c.exit_code = kAbsent;
                    } else {
                        c.status = "soft-failure";
                        c.exit_code = kSoft;
                    }
                };
            });
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kInvalid;
    }

    auto start = std::chrono::steady_clock::now();
    try {
        run(ctx);
    } catch (const budget_exceeded& e) {
        ctx.status = "budget";
        ctx.payload = {{"error", e.what()}};
        ctx.exit_code = kSoft;
    } catch (const validation_error& e) {
        ctx.status = "error";
        ctx.payload = {{"error", e.what()}};
        ctx.exit_code = kInvalid;
    } catch (const std::exception& e) {
        ctx.status = "error";
        ctx.payload = {{"error", e.what()}};
        ctx.exit_code = kInvalid;
    }
    auto wall = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    emit(ctx, wall);
    return ctx.exit_code;
}
