#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "epstein/approx_model.hpp"
#include "epstein/critical_zeros.hpp"
#include "epstein/edge_catalog.hpp"
#include "epstein/epstein_zeta.hpp"
#include "epstein/offcritical_zeros.hpp"
#include "output.hpp"

namespace epstein::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

struct GlobalOptions {
    std::string format = "csv";
    std::string output_path;
    double tol = 1e-13;
    int threads = 0; // 0: hardware concurrency
};

int resolve_threads(int requested) {
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("EPSTEIN_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    return n;
}

// index-ordered parallel map; output order is deterministic regardless of
// the thread count
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    threads = std::min<std::size_t>(threads, n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (std::thread& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

QuadratureSpec quad_spec(const GlobalOptions& g) {
    return {g.tol, g.tol, 4096};
}

void write_text(const GlobalOptions& g, const std::string& text) {
    if (g.output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.output_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + g.output_path);
    out << text;
}

nlohmann::json make_meta(const std::string& command, const GlobalOptions& g,
                         nlohmann::json config) {
    config["format"] = g.format;
    config["tol"] = g.tol;
    return nlohmann::json{{"version", kVersion}, {"command", command},
                          {"config", std::move(config)}};
}

std::string dump_json(const nlohmann::json& j) {
    return j.dump(2) + "\n";
}

void emit_curves(const GlobalOptions& g, const std::string& command,
                 const nlohmann::json& config, const std::vector<CurveTrace>& curves) {
    if (g.format == "json") {
        nlohmann::json j;
        j["meta"] = make_meta(command, g, config);
        j["curves"] = nlohmann::json::array();
        for (const CurveTrace& t : curves) {
            nlohmann::json tj;
            to_json(tj, t);
            j["curves"].push_back(std::move(tj));
        }
        write_text(g, dump_json(j));
        return;
    }
    std::string text = std::string(kZeroCsvHeader) + "\n";
    for (std::size_t id = 0; id < curves.size(); ++id) {
        const CurveTrace& t = curves[id];
        for (std::size_t i = 0; i < t.points.size(); ++i) {
            std::string flags;
            if (std::find(t.turning_points.begin(), t.turning_points.end(), i) !=
                t.turning_points.end())
                flags = "turning";
            if (t.closed && i == 0) flags = flags.empty() ? "closed" : flags + "|closed";
            text += zero_csv_row(t.points[i], static_cast<long>(id), flags);
            text += '\n';
        }
    }
    write_text(g, text);
}

void emit_rows(const GlobalOptions& g, const std::string& command,
               const nlohmann::json& config, const std::string& csv_header,
               const std::vector<std::string>& csv_rows, const nlohmann::json& rows_json) {
    if (g.format == "json") {
        nlohmann::json j;
        j["meta"] = make_meta(command, g, config);
        j["rows"] = rows_json;
        write_text(g, dump_json(j));
        return;
    }
    std::string text = csv_header + "\n";
    for (const std::string& r : csv_rows) {
        text += r;
        text += '\n';
    }
    write_text(g, text);
}

std::string edge_csv_row(const std::string& name, const EdgeZero& e) {
    std::string row = name;
    row += ',';
    row += format_double(e.delta_star);
    row += ',';
    row += format_double(e.rho_y_star);
    row += ',';
    row += to_string(e.side);
    row += ',';
    row += format_double(e.a);
    row += ',';
    row += format_double(e.b);
    row += ',';
    row += format_double(e.c);
    row += ',';
    row += format_double(e.d);
    return row;
}

nlohmann::json edge_json(const std::string& name, const EdgeZero& e) {
    nlohmann::json ej;
    to_json(ej, e);
    ej["name"] = name;
    return ej;
}

// ---- subcommand payloads -------------------------------------------------

struct EvalArgs {
    double s_re = 0.0, s_im = 0.0, delta = 1.0;
};

void run_eval(const GlobalOptions& g, const EvalArgs& a) {
    QuadratureSpec q = quad_spec(g);
    Complex s(a.s_re, a.s_im);
    ZetaValue zeta2 = epstein_zeta(s, a.delta, q);
    nlohmann::json config{{"s_re", a.s_re}, {"s_im", a.s_im}, {"delta", a.delta}};
    std::string header = "s_re,s_im,delta,zeta2_re,zeta2_im,z_re,z_im,err_bound";
    nlohmann::json row{{"s_re", a.s_re},
                       {"s_im", a.s_im},
                       {"delta", a.delta},
                       {"zeta2_re", zeta2.value.real()},
                       {"zeta2_im", zeta2.value.imag()},
                       {"err_bound", zeta2.err_bound}};
    std::string csv = format_double(a.s_re) + "," + format_double(a.s_im) + "," +
                      format_double(a.delta) + "," + format_double(zeta2.value.real()) + "," +
                      format_double(zeta2.value.imag()) + ",";
    if (s == Complex(0.0, 0.0) || s == Complex(1.0, 0.0)) {
        csv += "nan,nan";
        row["z_re"] = nullptr;
        row["z_im"] = nullptr;
    } else {
        ZetaValue z = completed_zeta(s, a.delta, q);
        csv += format_double(z.value.real()) + "," + format_double(z.value.imag());
        row["z_re"] = z.value.real();
        row["z_im"] = z.value.imag();
    }
    csv += "," + format_double(zeta2.err_bound);
    emit_rows(g, "eval", config, header, {csv}, nlohmann::json::array({row}));
}

struct ScanArgs {
    double delta = 1.0;
    double rho_y_min = 0.0;
    double rho_y_max = 15.0;
    double grid_step = 0.05;
};

void run_scan(const GlobalOptions& g, const ScanArgs& a, int threads) {
    QuadratureSpec q = quad_spec(g);
    std::vector<Bracket> brackets =
        scan_critical(a.delta, a.rho_y_min, a.rho_y_max, a.grid_step, q);
    std::vector<ZeroRecord> zeros(brackets.size());
    parallel_for(brackets.size(), threads,
                 [&](std::size_t i) { zeros[i] = refine_critical(brackets[i], a.delta, q); });
    CurveTrace pseudo;
    pseudo.kind = ZeroKind::critical;
    pseudo.points = zeros;
    nlohmann::json config{{"delta", a.delta},
                          {"rho_y_min", a.rho_y_min},
                          {"rho_y_max", a.rho_y_max},
                          {"grid_step", a.grid_step}};
    emit_curves(g, "scan", config, {pseudo});
}

struct TraceCriticalArgs {
    double delta = 1.0;
    double rho_y = 1.0;
    int direction = +1;
    double delta_lo = 1e-2;
    double delta_hi = 1.0;
    double bracket_halfwidth = 0.2;
    StepControl ctrl;
};

void run_trace_critical(const GlobalOptions& g, const TraceCriticalArgs& a) {
    QuadratureSpec q = quad_spec(g);
    std::vector<Bracket> brackets = scan_critical(
        a.delta, a.rho_y - a.bracket_halfwidth, a.rho_y + a.bracket_halfwidth,
        a.bracket_halfwidth / 8.0, q);
    if (brackets.empty())
        throw NoConvergenceError("trace-critical: no sign change near the requested rho_y");
    // nearest bracket to the requested seed
    const Bracket* best = &brackets.front();
    for (const Bracket& b : brackets)
        if (std::abs(0.5 * (b.lo + b.hi) - a.rho_y) <
            std::abs(0.5 * (best->lo + best->hi) - a.rho_y))
            best = &b;
    ZeroRecord seed = refine_critical(*best, a.delta, q);
    StepControl ctrl = a.ctrl;
    ctrl.direction = a.direction;
    CurveTrace trace = trace_critical_curve(seed, a.delta_lo, a.delta_hi, ctrl, q);
    nlohmann::json config{{"delta", a.delta},     {"rho_y", a.rho_y},
                          {"direction", a.direction}, {"delta_lo", a.delta_lo},
                          {"delta_hi", a.delta_hi}};
    emit_curves(g, "trace-critical", config, {trace});
}

struct EdgesArgs {
    bool all = false;
    std::vector<std::string> names;
    double seed_delta = 0.0;
    double seed_rho_y = 0.0;
    bool have_seed = false;
    bool coefficients = false;
};

void run_edges(const GlobalOptions& g, const EdgesArgs& a, int threads) {
    QuadratureSpec q = quad_spec(g);
    struct Item {
        std::string name;
        double sd, sr;
    };
    std::vector<Item> items;
    if (a.all) {
        for (const NamedEdgeSeed& e : edge_catalog())
            items.push_back({std::string(e.name), e.delta, e.rho_y});
    }
    for (const std::string& n : a.names) {
        std::optional<NamedEdgeSeed> e = find_edge_seed(n);
        if (!e)
            throw std::invalid_argument("edges: unknown edge name '" + n + "'");
        items.push_back({n, e->delta, e->rho_y});
    }
    if (a.have_seed)
        items.push_back({"custom", a.seed_delta, a.seed_rho_y});
    if (items.empty())
        throw std::invalid_argument("edges: nothing to solve (use --all, --edge or --seed-*)");

    std::vector<EdgeZero> solved(items.size());
    parallel_for(items.size(), threads, [&](std::size_t i) {
        solved[i] = solve_edge(items[i].sd, items[i].sr, q);
        if (a.coefficients) edge_coefficients(solved[i], q);
    });

    std::vector<std::string> rows;
    nlohmann::json jrows = nlohmann::json::array();
    for (std::size_t i = 0; i < items.size(); ++i) {
        rows.push_back(edge_csv_row(items[i].name, solved[i]));
        jrows.push_back(edge_json(items[i].name, solved[i]));
    }
    nlohmann::json config{{"all", a.all}, {"coefficients", a.coefficients}};
    emit_rows(g, "edges", config, "edge,delta_star,rho_y_star,side,a,b,c,d", rows, jrows);
}

struct TraceOffArgs {
    std::string edge_name;
    double seed_delta = 0.0;
    double seed_rho_y = 0.0;
    bool have_seed = false;
    OffStepControl ctrl;
};

void run_trace_offcritical(const GlobalOptions& g, const TraceOffArgs& a) {
    QuadratureSpec q = quad_spec(g);
    double sd = a.seed_delta, sr = a.seed_rho_y;
    if (!a.edge_name.empty()) {
        std::optional<NamedEdgeSeed> e = find_edge_seed(a.edge_name);
        if (!e)
            throw std::invalid_argument("trace-offcritical: unknown edge name '" +
                                        a.edge_name + "'");
        sd = e->delta;
        sr = e->rho_y;
    } else if (!a.have_seed) {
        throw std::invalid_argument("trace-offcritical: need --edge or --seed-*");
    }
    EdgeZero edge = solve_edge(sd, sr, q);
    edge_coefficients(edge, q);
    CurveTrace trace = trace_offcritical(edge, q, a.ctrl);
    nlohmann::json config{{"edge", a.edge_name}, {"seed_delta", sd}, {"seed_rho_y", sr}};
    emit_curves(g, "trace-offcritical", config, {trace});
}

struct RealZerosArgs {
    std::vector<double> deltas;
    double delta_min = 0.0, delta_max = 0.0;
    int count = 0;
};

void run_real_zeros(const GlobalOptions& g, const RealZerosArgs& a, int threads) {
    QuadratureSpec q = quad_spec(g);
    std::vector<double> deltas = a.deltas;
    if (a.count > 0) {
        if (!(a.delta_min > 0.0) || !(a.delta_max > a.delta_min))
            throw std::invalid_argument("real-zeros: need 0 < delta-min < delta-max");
        for (int i = 0; i < a.count; ++i) {
            double f = (a.count == 1) ? 0.0 : static_cast<double>(i) / (a.count - 1);
            deltas.push_back(a.delta_min * std::pow(a.delta_max / a.delta_min, f));
        }
    }
    if (deltas.empty())
        throw std::invalid_argument("real-zeros: no deltas requested");

    std::vector<std::optional<std::pair<double, double>>> found(deltas.size());
    parallel_for(deltas.size(), threads,
                 [&](std::size_t i) { found[i] = real_offcritical(deltas[i], q); });

    std::vector<CurveTrace> curves(1);
    curves[0].kind = ZeroKind::real_off_critical;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!found[i]) continue;
        curves[0].points.push_back(
            {deltas[i], found[i]->first, 0.0, ZeroKind::real_off_critical, 0.0});
        curves[0].points.push_back(
            {deltas[i], found[i]->second, 0.0, ZeroKind::real_off_critical, 0.0});
    }
    nlohmann::json config{{"deltas", deltas}};
    emit_curves(g, "real-zeros", config, curves);
}

struct ApproxArgs {
    double delta = 0.1;
    double rho_y_max = 15.0;
    bool compare = false;
    double grid_step = 0.05;
};

void run_approx(const GlobalOptions& g, const ApproxArgs& a, int threads) {
    std::vector<double> approx = approx_critical_zeros(a.delta, a.rho_y_max);
    std::vector<double> exact;
    if (a.compare) {
        QuadratureSpec q = quad_spec(g);
        std::vector<Bracket> brackets =
            scan_critical(a.delta, 0.0, a.rho_y_max, a.grid_step, q);
        exact.resize(brackets.size());
        parallel_for(brackets.size(), threads, [&](std::size_t i) {
            exact[i] = refine_critical(brackets[i], a.delta, q).rho_y;
        });
    }
    std::vector<std::string> rows;
    nlohmann::json jrows = nlohmann::json::array();
    std::size_t n = a.compare ? std::max(approx.size(), exact.size()) : approx.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::string row = std::to_string(i + 1);
        nlohmann::json jr{{"index", i + 1}};
        if (a.compare) {
            row += ',';
            if (i < exact.size()) {
                row += format_double(exact[i]);
                jr["rho_y_exact"] = exact[i];
            } else {
                jr["rho_y_exact"] = nullptr;
            }
        }
        row += ',';
        if (i < approx.size()) {
            row += format_double(approx[i]);
            jr["rho_y_approx"] = approx[i];
        } else {
            jr["rho_y_approx"] = nullptr;
        }
        rows.push_back(row);
        jrows.push_back(std::move(jr));
    }
    nlohmann::json config{{"delta", a.delta},
                          {"rho_y_max", a.rho_y_max},
                          {"compare", a.compare}};
    emit_rows(g, "approx", config,
              a.compare ? "index,rho_y_exact,rho_y_approx" : "index,rho_y_approx", rows,
              jrows);
}

struct ReproduceArgs {
    int table = 1;
};

void run_reproduce(const GlobalOptions& g, const ReproduceArgs& a, int threads) {
    QuadratureSpec q = quad_spec(g);
    if (a.table == 1) {
        std::span<const NamedEdgeSeed> catalog = edge_catalog();
        std::vector<EdgeZero> solved(catalog.size());
        parallel_for(catalog.size(), threads, [&](std::size_t i) {
            solved[i] = solve_edge(catalog[i].delta, catalog[i].rho_y, q);
        });
        std::vector<std::string> rows;
        nlohmann::json jrows = nlohmann::json::array();
        for (std::size_t i = 0; i < catalog.size(); ++i) {
            rows.push_back(std::string(catalog[i].name) + "," +
                           format_double(solved[i].delta_star) + "," +
                           format_double(solved[i].rho_y_star));
            jrows.push_back(nlohmann::json{{"edge", std::string(catalog[i].name)},
                                           {"delta_star", solved[i].delta_star},
                                           {"rho_y_star", solved[i].rho_y_star}});
        }
        emit_rows(g, "reproduce", {{"table", 1}}, "edge,delta_star,rho_y_star", rows, jrows);
        return;
    }
    if (a.table == 2) {
        const double delta = 1.0 / std::sqrt(7.0);
        const double rho_max = 15.0;
        std::vector<Bracket> brackets = scan_critical(delta, 0.5, rho_max, 0.05, q);
        std::vector<double> exact(brackets.size());
        parallel_for(brackets.size(), threads, [&](std::size_t i) {
            exact[i] = refine_critical(brackets[i], delta, q).rho_y;
        });
        std::vector<double> approx = approx_critical_zeros(delta, rho_max);
        std::vector<std::string> rows;
        nlohmann::json jrows = nlohmann::json::array();
        std::size_t n = std::min(exact.size(), approx.size());
        for (std::size_t i = 0; i < n; ++i) {
            rows.push_back(std::to_string(i + 1) + "," + format_double(exact[i]) + "," +
                           format_double(approx[i]));
            jrows.push_back(nlohmann::json{
                {"index", i + 1}, {"rho_y_exact", exact[i]}, {"rho_y_approx", approx[i]}});
        }
        emit_rows(g, "reproduce", {{"table", 2}}, "index,rho_y_exact,rho_y_approx", rows,
                  jrows);
        return;
    }
    throw std::invalid_argument("reproduce: --table must be 1 or 2");
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Two-dimensional lattice zeta function toolkit: evaluation, zero scans, "
                 "edge solves and zero-curve continuation"};
    app.set_config("--config", "", "plain key=value config file merged under explicit flags");

    GlobalOptions g;
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--output", g.output_path, "output file (default: stdout)");
    app.add_option("--tol", g.tol, "quadrature tolerance (absolute and relative)")
        ->check(CLI::Range(1e-14, 1e-2))
        ->capture_default_str();
    app.add_option("--threads", g.threads,
                   "worker threads (0 = hardware; capped by EPSTEIN_THREADS)");
    app.require_subcommand(1);

    EvalArgs eval_args;
    CLI::App* eval = app.add_subcommand("eval", "evaluate the lattice zeta at one point");
    eval->fallthrough();
    eval->add_option("--s-re", eval_args.s_re, "re(s)")->required();
    eval->add_option("--s-im", eval_args.s_im, "im(s)")->required();
    eval->add_option("--delta", eval_args.delta, "lattice anisotropy")->required();

    ScanArgs scan_args;
    CLI::App* scan = app.add_subcommand("scan", "scan and refine critical zeros at fixed delta");
    scan->fallthrough();
    scan->add_option("--delta", scan_args.delta, "lattice anisotropy")->required();
    scan->add_option("--rho-y-min", scan_args.rho_y_min, "lower end of the scan");
    scan->add_option("--rho-y-max", scan_args.rho_y_max, "upper end of the scan")->required();
    scan->add_option("--grid-step", scan_args.grid_step, "scan grid step");

    TraceCriticalArgs tc_args;
    CLI::App* tc = app.add_subcommand("trace-critical", "continue a critical zero curve");
    tc->fallthrough();
    tc->add_option("--delta", tc_args.delta, "seed delta")->required();
    tc->add_option("--rho-y", tc_args.rho_y, "seed rho_y (refined before tracing)")->required();
    tc->add_option("--direction", tc_args.direction, "initial delta orientation (+1/-1)")
        ->check(CLI::IsMember({-1, 1}));
    tc->add_option("--delta-lo", tc_args.delta_lo, "lower delta bound");
    tc->add_option("--delta-hi", tc_args.delta_hi, "upper delta bound");
    tc->add_option("--max-steps", tc_args.ctrl.max_steps, "continuation step budget");
    tc->add_option("--max-step", tc_args.ctrl.max_step, "maximum arclength step");
    tc->add_option("--rho-y-min", tc_args.ctrl.rho_y_min, "lower rho_y bound");
    tc->add_option("--rho-y-max", tc_args.ctrl.rho_y_max, "upper rho_y bound");

    EdgesArgs edges_args;
    CLI::App* edges = app.add_subcommand("edges", "solve edge zeros and their coefficients");
    edges->fallthrough();
    edges->add_flag("--all", edges_args.all, "solve every catalogued edge");
    edges->add_option("--edge", edges_args.names, "named edge seed (repeatable)");
    CLI::Option* esd = edges->add_option("--seed-delta", edges_args.seed_delta, "custom seed delta");
    CLI::Option* esr = edges->add_option("--seed-rho-y", edges_args.seed_rho_y, "custom seed rho_y");
    esd->needs(esr);
    esr->needs(esd);
    edges->add_flag("--coefficients", edges_args.coefficients,
                    "also evaluate the expansion coefficients a,b,c,d");

    TraceOffArgs to_args;
    CLI::App* toff = app.add_subcommand("trace-offcritical",
                                        "continue the off-critical curve leaving an edge");
    toff->fallthrough();
    toff->add_option("--edge", to_args.edge_name, "named edge to start from");
    CLI::Option* tsd = toff->add_option("--seed-delta", to_args.seed_delta, "custom edge seed delta");
    CLI::Option* tsr = toff->add_option("--seed-rho-y", to_args.seed_rho_y, "custom edge seed rho_y");
    tsd->needs(tsr);
    tsr->needs(tsd);
    toff->add_option("--max-steps", to_args.ctrl.max_steps, "step budget");

    RealZerosArgs rz_args;
    CLI::App* rz = app.add_subcommand("real-zeros", "real zero pairs on the rho_y = 0 axis");
    rz->fallthrough();
    rz->add_option("--delta", rz_args.deltas, "anisotropy value (repeatable)");
    rz->add_option("--delta-min", rz_args.delta_min, "sweep start");
    rz->add_option("--delta-max", rz_args.delta_max, "sweep end");
    rz->add_option("--count", rz_args.count, "sweep sample count (log-spaced)");

    ApproxArgs ap_args;
    CLI::App* ap = app.add_subcommand("approx", "closed-form approximate critical zeros");
    ap->fallthrough();
    ap->add_option("--delta", ap_args.delta, "lattice anisotropy")->required();
    ap->add_option("--rho-y-max", ap_args.rho_y_max, "upper end of the zero list");
    ap->add_flag("--compare", ap_args.compare, "add the exact-solver column");
    ap->add_option("--grid-step", ap_args.grid_step, "scan step for the exact column");

    ReproduceArgs rp_args;
    CLI::App* rp = app.add_subcommand("reproduce", "re-derive the reference tables");
    rp->fallthrough();
    rp->add_option("--table", rp_args.table, "table number (1 or 2)")->required();

    std::vector<const char*> argv;
    argv.push_back("epstein2d");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    int threads = resolve_threads(g.threads);
    try {
        if (eval->parsed()) run_eval(g, eval_args);
        else if (scan->parsed()) run_scan(g, scan_args, threads);
        else if (tc->parsed()) run_trace_critical(g, tc_args);
        else if (edges->parsed()) run_edges(g, edges_args, threads);
        else if (toff->parsed()) run_trace_offcritical(g, to_args);
        else if (rz->parsed()) run_real_zeros(g, rz_args, threads);
        else if (ap->parsed()) run_approx(g, ap_args, threads);
        else if (rp->parsed()) run_reproduce(g, rp_args, threads);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace epstein::cli
