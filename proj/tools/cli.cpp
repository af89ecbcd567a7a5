// Copyright 2026 The qapprox Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qapprox/qapprox.hpp"

namespace qapprox::cli {
namespace {

struct Globals {
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
};

/// Rows of string cells rendered as CSV or as aligned text.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void render(std::ostream &os, const std::string &format) const {
        if (format == "csv") {
            auto line = [&](const std::vector<std::string> &cells) {
                for (std::size_t i = 0; i < cells.size(); ++i) {
                    os << (i ? "," : "") << cells[i];
                }
                os << '\n';
            };
            line(header);
            for (const auto &r : rows) {
                line(r);
            }
            return;
        }
        std::vector<std::size_t> width(header.size());
        for (std::size_t i = 0; i < header.size(); ++i) {
            width[i] = header[i].size();
            for (const auto &r : rows) {
                width[i] = std::max(width[i], r[i].size());
            }
        }
        auto line = [&](const std::vector<std::string> &cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                os << (i ? "  " : "") << cells[i];
                if (i + 1 < cells.size()) {
                    os << std::string(width[i] - cells[i].size(), ' ');
                }
            }
            os << '\n';
        };
        line(header);
        for (const auto &r : rows) {
            line(r);
        }
    }
};

std::string num(double x) { return io_detail::fmt_double(x); }

std::string num(long double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17Lg", x);
    return buf;
}

std::uint64_t parse_u64(const std::string &s, const std::string &name) {
    detail::require(!s.empty() && s.find_first_not_of("0123456789") == std::string::npos,
                    name + " must be a nonnegative integer");
    try {
        return std::stoull(s);
    } catch (const std::out_of_range &) {
        throw DomainError(name + " is too large");
    }
}

double parse_real(const std::string &s, const std::string &name) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        throw DomainError(name + " must be a number");
    }
    detail::require(used == s.size() && std::isfinite(v), name + " must be a number");
    return v;
}

BigInt parse_big(const std::string &s, const std::string &name) {
    detail::require(!s.empty() && s.find_first_not_of("0123456789") == std::string::npos,
                    name + " must be a nonnegative integer");
    return BigInt(s);
}

std::string read_text(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// First non-comment token of a file: "qstate", "qcircuit" or "qproblem".
std::string file_kind(const std::string &text) {
    std::istringstream in(text);
    const auto lines = io_detail::content_lines(in);
    if (lines.empty()) {
        return {};
    }
    const auto t = io_detail::tokens(lines[0].second);
    return t.empty() ? std::string() : t[0];
}

StateVec state_arg(const std::string &spec, std::optional<int> n) {
    if (spec == "zero") {
        detail::require(n.has_value(), "--state zero needs --n");
        return StateVec::zero(*n);
    }
    StateVec s = load_state(spec);
    detail::require(!n || *n == s.num_qubits(), "--n does not match the state file");
    return s;
}

/// Unitary from a qcircuit file, or the completion of a qstate file to a
/// unitary with that state as its first column.
ComplexMatrix operator_from_file(const std::string &path) {
    const std::string text = read_text(path);
    std::istringstream in(text);
    const std::string kind = file_kind(text);
    if (kind == "qstate") {
        const StateVec s = read_state(in);
        return extend_targets(OrthoSeq(s.num_qubits(), {s}));
    }
    if (kind == "qcircuit") {
        const Circuit c = read_circuit(in);
        detail::require(c.num_qubits() <= kDenseQubitCap, "operator files are limited to 10 qubits");
        return circuit_to_matrix(c);
    }
    throw IoError("'" + path + "' is neither a qstate nor a qcircuit file");
}

// ---- subcommand bodies; each writes its result into `body` ----

struct Output {
    std::ostringstream body;
    bool tabular = true; // false for qstate/qcircuit payloads
};

void cmd_synth_state(const std::string &state, std::optional<int> n, Output &o, std::ostream &err) {
    const SynthesisReport r = prepare_state(state_arg(state, n));
    write_circuit(o.body, r.circuit);
    o.tabular = false;
    err << "# primitives=" << r.primitive_count << " two_qubit_equiv=" << num(r.two_qubit_equiv)
        << " residual=" << num(r.residual) << '\n';
}

void cmd_synth_unitary(const std::vector<std::string> &targets, Output &o, std::ostream &err) {
    detail::require(!targets.empty(), "synth-unitary needs at least one --target");
    std::vector<StateVec> states;
    for (const auto &t : targets) {
        states.push_back(load_state(t));
    }
    const int n = states.front().num_qubits();
    const SynthesisReport r = synthesize_transitive(OrthoSeq(n, std::move(states)));
    write_circuit(o.body, r.circuit);
    o.tabular = false;
    err << "# primitives=" << r.primitive_count << " two_qubit_equiv=" << num(r.two_qubit_equiv)
        << " residual=" << num(r.residual) << '\n';
}

void cmd_apply(const std::string &circuit_path, const std::string &state, std::optional<int> n,
               Output &o) {
    const Circuit c = load_circuit(circuit_path);
    const StateVec s = state_arg(state, n ? n : std::optional<int>(c.num_qubits()));
    detail::require(s.num_qubits() == c.num_qubits(), "state and circuit sizes differ");
    write_state(o.body, apply_circuit(c, s));
    o.tabular = false;
}

MetricKind metric_arg(const std::string &name, int l, long k) {
    if (name == "frobenius") {
        return Frobenius{};
    }
    if (name == "two-norm") {
        return TwoNorm{};
    }
    if (name == "weak-two-norm") {
        return WeakTwoNorm{k};
    }
    if (name == "tv-states") {
        return TvStates{l};
    }
    if (name == "tv-operators") {
        return TvOperators{l, k};
    }
    throw DomainError("unknown metric '" + name + "'");
}

void cmd_dist(const std::string &a, const std::string &b, const std::string &metric, int l,
              long k, Output &o, const std::string &format) {
    const MetricKind kind = metric_arg(metric, l, k);
    const std::string ta = read_text(a);
    const std::string tb = read_text(b);
    const std::string ka = file_kind(ta);
    detail::require(ka == file_kind(tb), "both inputs must be of the same kind");
    std::istringstream ia(ta);
    std::istringstream ib(tb);
    double value = 0.0;
    if (ka == "qstate") {
        value = state_distance(kind, read_state(ia), read_state(ib));
    } else if (ka == "qcircuit") {
        const Circuit ca = read_circuit(ia);
        const Circuit cb = read_circuit(ib);
        detail::require(ca.num_qubits() <= kDenseQubitCap && cb.num_qubits() <= kDenseQubitCap,
                        "operator distances are limited to 10 qubits");
        value = operator_distance(kind, circuit_to_matrix(ca), circuit_to_matrix(cb));
    } else {
        throw IoError("inputs must be qstate or qcircuit files");
    }
    Table{{"metric", "value"}, {{metric_name(kind), num(value)}}}.render(o.body, format);
}

void cmd_net(int g, double delta, bool count, const std::string &point, const std::string &nearest,
             Output &o, const std::string &format) {
    const NetSpec spec = NetSpec::from_delta(g, delta);
    const int actions = (count ? 1 : 0) + (point.empty() ? 0 : 1) + (nearest.empty() ? 0 : 1);
    detail::require(actions <= 1, "net takes at most one of --count, --point, --nearest");
    if (!point.empty()) {
        const NetIndex idx{parse_big(point, "--point")};
        write_matrix(o.body, net_point(idx, spec));
        o.tabular = false;
        return;
    }
    if (!nearest.empty()) {
        const ComplexMatrix u = operator_from_file(nearest);
        detail::require(u.rows() == spec.dim(), "--nearest operand must act on g qubits");
        const NetIndex idx = nearest_net_index(u, spec);
        const double d = two_norm(u - net_point(idx, spec));
        Table{{"g", "delta", "index", "two_norm_distance"},
              {{std::to_string(g), num(delta), idx.value.str(), num(d)}}}
            .render(o.body, format);
        return;
    }
    const NetCardinality c = net_cardinality(spec);
    Table{{"g", "delta", "rho", "axis_points", "exact", "paper_bound", "paper_count_log2"},
          {{std::to_string(g), num(delta), num(spec.rho), std::to_string(spec.axis_points),
            c.exact.str(), c.paper_bound.str(), num(c.paper_count_log2)}}}
        .render(o.body, format);
}

void cmd_mc(const std::string &experiment, std::optional<int> m, std::optional<std::size_t> big_n,
            double eps, std::uint64_t samples, std::uint64_t seed, Output &o,
            const std::string &format) {
    const RngStream rng(seed);
    McEstimate e;
    std::string params;
    if (experiment == "sphere-ball") {
        detail::require(m.has_value(), "sphere-ball needs --m");
        ComplexVector centre = ComplexVector::Zero(*m);
        centre(0) = 1.0;
        e = mc_sphere_cap(centre, eps, *m, samples, rng);
        params = "m=" + std::to_string(*m) + ";eps=" + num(eps);
    } else if (experiment == "simplex-ball") {
        detail::require(big_n.has_value(), "simplex-ball needs --N");
        e = mc_simplex_ball(simplex_barycenter(*big_n), eps, samples, rng);
        params = "N=" + std::to_string(*big_n) + ";eps=" + num(eps);
    } else {
        throw DomainError("unknown experiment '" + experiment + "'");
    }
    params += ";samples=" + std::to_string(samples);
    Table{{"experiment", "params", "estimate", "std_error", "bound", "pass"},
          {{experiment, params, num(e.estimate), num(e.std_error), num(e.bound),
            e.within_bound() ? "true" : "false"}}}
        .render(o.body, format);
}

struct BoundArgs {
    std::string table;
    std::map<std::string, std::string> values;
    std::string variant = "proof-end";
    bool sharp = false;
    std::string sweep;
    bool crossover = false;
    double target = 1.0;
};

const std::map<std::string, std::vector<std::string>> &table_params() {
    static const std::map<std::string, std::vector<std::string>> p{
        {"thm34", {"n", "k"}},
        {"thm41", {"n", "k", "g", "b", "eps", "alpha"}},
        {"thm45", {"n", "l", "k", "g", "b", "eps", "alpha"}},
        {"thm51", {"n", "D", "g", "b", "q"}},
        {"thm53", {"n", "D", "g", "b", "q"}},
    };
    return p;
}

BoundParams to_params(const std::map<std::string, std::string> &v) {
    BoundParams p;
    p.n = parse_u64(v.at("n"), "--n");
    p.l = parse_u64(v.at("l"), "--l");
    p.k = parse_u64(v.at("k"), "--k");
    p.g = parse_u64(v.at("g"), "--g");
    p.b = parse_u64(v.at("b"), "--b");
    p.eps = parse_real(v.at("eps"), "--eps");
    p.alpha = parse_real(v.at("alpha"), "--alpha");
    p.q = parse_real(v.at("q"), "--q");
    p.D_size = parse_big(v.at("D"), "--D");
    return p;
}

Extended evaluate(const BoundArgs &a, const std::map<std::string, std::string> &v) {
    const BoundParams p = to_params(v);
    if (a.table == "thm41") {
        detail::require(a.variant == "proof-end" || a.variant == "displayed",
                        "--variant must be proof-end or displayed");
        return thm41_log2(p, a.variant == "displayed" ? Thm41Variant::displayed
                                                      : Thm41Variant::proof_end);
    }
    if (a.table == "thm45") {
        return thm45_log2(p, a.sharp);
    }
    if (a.table == "thm51") {
        return thm51_log2(p.n, p.D_size, p.g, p.b, p.q);
    }
    return thm53_log2(p.n, p.D_size, p.g, p.b, p.q);
}

BoundFormula formula_of(const std::string &table) {
    if (table == "thm41") {
        return BoundFormula::thm41;
    }
    if (table == "thm45") {
        return BoundFormula::thm45;
    }
    if (table == "thm51") {
        return BoundFormula::thm51;
    }
    return BoundFormula::thm53;
}

bool is_integer_param(const std::string &name) { return name != "eps" && name != "alpha" && name != "q"; }

/// Values of `p=start:stop:step`, formatted for the parameter's type.
std::pair<std::string, std::vector<std::string>> sweep_values(const std::string &sweep) {
    const auto eq = sweep.find('=');
    detail::require(eq != std::string::npos, "--sweep must look like p=start:stop:step");
    const std::string name = sweep.substr(0, eq);
    const auto parts = io_detail::split(sweep.substr(eq + 1), ':');
    detail::require(parts.size() == 3, "--sweep must look like p=start:stop:step");
    std::vector<std::string> out;
    if (is_integer_param(name)) {
        const std::uint64_t start = parse_u64(parts[0], "sweep start");
        const std::uint64_t stop = parse_u64(parts[1], "sweep stop");
        const std::uint64_t step = parse_u64(parts[2], "sweep step");
        detail::require(step >= 1, "sweep step must be positive");
        detail::require(stop >= start, "sweep stop must not precede start");
        detail::require((stop - start) / step < 100000, "sweep has too many rows");
        for (std::uint64_t v = start;; v += step) {
            out.push_back(std::to_string(v));
            if (stop - v < step) {
                break;
            }
        }
    } else {
        const double start = parse_real(parts[0], "sweep start");
        const double stop = parse_real(parts[1], "sweep stop");
        const double step = parse_real(parts[2], "sweep step");
        detail::require(step > 0.0, "sweep step must be positive");
        detail::require(stop >= start, "sweep stop must not precede start");
        const double rows = std::floor((stop - start) / step + 1e-9);
        detail::require(rows < 100000, "sweep has too many rows");
        for (std::uint64_t i = 0; i <= static_cast<std::uint64_t>(rows); ++i) {
            out.push_back(num(start + static_cast<double>(i) * step));
        }
    }
    return {name, out};
}

void cmd_bounds(const BoundArgs &a, Output &o, const std::string &format) {
    const auto &all = table_params();
    const auto it = all.find(a.table);
    detail::require(it != all.end(), "--table must be one of thm34, thm41, thm45, thm51, thm53");
    const auto &names = it->second;

    std::vector<std::map<std::string, std::string>> rows;
    if (a.sweep.empty()) {
        rows.push_back(a.values);
    } else {
        const auto [name, values] = sweep_values(a.sweep);
        detail::require(std::find(names.begin(), names.end(), name) != names.end(),
                        "--sweep parameter '" + name + "' is not used by " + a.table);
        for (const auto &v : values) {
            auto r = a.values;
            r[name] = v;
            rows.push_back(std::move(r));
        }
    }

    Table t;
    t.header = names;
    if (a.table == "thm34") {
        detail::require(!a.crossover, "--crossover does not apply to thm34");
        t.header.emplace_back("lower_bound");
    } else if (a.crossover) {
        t.header.erase(std::find(t.header.begin(), t.header.end(), "b"));
        t.header.emplace_back("target");
        t.header.emplace_back("crossover_b");
    } else {
        t.header.emplace_back("log2_bound");
        t.header.emplace_back("clipped");
    }

    for (const auto &r : rows) {
        std::vector<std::string> cells;
        for (const auto &name : names) {
            if (!(a.crossover && name == "b")) {
                cells.push_back(r.at(name));
            }
        }
        if (a.table == "thm34") {
            cells.push_back(num(thm34_lower(parse_u64(r.at("n"), "--n"), parse_big(r.at("k"), "--k"))));
        } else if (a.crossover) {
            detail::require(a.variant == "proof-end" && !a.sharp,
                            "--crossover uses the default formula variants");
            cells.push_back(num(a.target));
            cells.push_back(std::to_string(crossover_b(formula_of(a.table), to_params(r), a.target)));
        } else {
            const BoundRow row = make_bound_row({}, evaluate(a, r));
            cells.push_back(num(row.log2_value));
            cells.push_back(num(row.clipped));
        }
        t.rows.push_back(std::move(cells));
    }
    t.render(o.body, format);
}

void cmd_advantage(const std::string &circuit_path, const std::string &problem_path, Output &o,
                   const std::string &format) {
    const Circuit c = load_circuit(circuit_path);
    const Problem p = load_problem(problem_path);
    const Advantage adv = std::visit(
        detail::overloaded{[&](const DecisionProblem &d) { return decision_advantage(c, d); },
                           [&](const GuessProblem &g) { return guess_advantage(c, g); }},
        p);
    Table{{"p_star", "q_or_none"}, {{num(adv.p_star), adv.q ? num(*adv.q) : "none"}}}.render(o.body,
                                                                                            format);
}

std::string provenance(const Globals &g, const std::vector<std::string> &args) {
    std::string s = "# qapprox " QAPPROX_VERSION " seed=" + std::to_string(g.seed) + " args=";
    for (std::size_t i = 0; i < args.size(); ++i) {
        s += (i ? " " : "") + args[i];
    }
    return s + '\n';
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Circuit synthesis, distances, nets, Monte Carlo volumes and counting bounds."};
    app.name("qapprox");
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "RNG seed for randomized subcommands");
    app.add_option("--out", g.out, "Output path (default stdout)");
    app.add_option("--format", g.format, "Table format")->check(CLI::IsMember({"csv", "text"}));

    std::string state;
    std::optional<int> n;
    std::string circuit;
    std::vector<std::string> targets;

    auto *synth_state = app.add_subcommand("synth-state", "Circuit preparing a state from |0...0>");
    synth_state->add_option("--state", state, "qstate file, or 'zero'")->required();
    synth_state->add_option("--n", n, "Qubit count for --state zero");

    auto *synth_unitary =
        app.add_subcommand("synth-unitary", "Circuit mapping |i> to the i-th target state");
    synth_unitary->add_option("--target", targets, "qstate file (repeat, in order)")->required();

    auto *apply = app.add_subcommand("apply", "Apply a circuit to a state");
    apply->add_option("--circuit", circuit, "qcircuit file")->required();
    apply->add_option("--state", state, "qstate file, or 'zero'")->required();
    apply->add_option("--n", n, "Qubit count for --state zero");

    std::string a_path;
    std::string b_path;
    std::string metric = "frobenius";
    int l = 1;
    long k = 1;
    auto *dist = app.add_subcommand("dist", "Distance between two states or two circuits");
    dist->add_option("--a", a_path, "First qstate or qcircuit file")->required();
    dist->add_option("--b", b_path, "Second file, same kind")->required();
    dist->add_option("--metric", metric,
                     "frobenius|two-norm|weak-two-norm|tv-states|tv-operators");
    dist->add_option("--l", l, "Measured prefix length");
    dist->add_option("--k", k, "Number of leading basis inputs");

    int net_g = 1;
    double delta = 1.0;
    bool count = false;
    std::string point;
    std::string nearest;
    auto *net = app.add_subcommand("net", "Grid net over g-qubit unitaries");
    net->add_option("--g", net_g, "Gate arity (1..3)");
    net->add_option("--delta", delta, "Covering radius");
    net->add_flag("--count", count, "Print cardinalities (default action)");
    net->add_option("--point", point, "Print the net point with this index");
    net->add_option("--nearest", nearest, "qstate or qcircuit file on g qubits");

    std::string experiment;
    std::optional<int> m;
    std::optional<std::size_t> big_n;
    double eps = 0.0;
    std::uint64_t samples = 1000000;
    auto *mc = app.add_subcommand("mc", "Monte Carlo ball-volume estimate vs. closed-form bound");
    mc->add_option("--experiment", experiment, "sphere-ball|simplex-ball")->required();
    mc->add_option("--m", m, "Complex dimension (sphere-ball)");
    mc->add_option("--N", big_n, "Simplex size (simplex-ball)");
    mc->add_option("--eps", eps, "Ball radius")->required();
    mc->add_option("--samples", samples, "Sample count");

    BoundArgs ba;
    ba.values = {{"n", "3"}, {"l", "1"},     {"k", "1"},   {"g", "2"}, {"b", "2"},
                 {"eps", "0.1"}, {"alpha", "1"}, {"q", "2"}, {"D", "1"}};
    auto *bounds = app.add_subcommand("bounds", "Counting and measure bound tables");
    bounds->add_option("--table", ba.table, "thm34|thm41|thm45|thm51|thm53")->required();
    for (auto &[name, value] : ba.values) {
        bounds->add_option("--" + name, value, "Parameter " + name);
    }
    bounds->add_option("--variant", ba.variant, "thm41 form: proof-end|displayed");
    bounds->add_flag("--sharp", ba.sharp, "thm45 with the k(2^l - 1) weight");
    bounds->add_option("--sweep", ba.sweep, "p=start:stop:step");
    bounds->add_flag("--crossover", ba.crossover, "Report the smallest b reaching --target");
    bounds->add_option("--target", ba.target, "Crossover target in (0, 1]");

    std::string problem;
    auto *advantage = app.add_subcommand("advantage", "Worst-case advantage on a problem file");
    advantage->add_option("--circuit", circuit, "qcircuit file")->required();
    advantage->add_option("--problem", problem, "qproblem file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }

    Output o;
    try {
        if (*synth_state) {
            cmd_synth_state(state, n, o, err);
        } else if (*synth_unitary) {
            cmd_synth_unitary(targets, o, err);
        } else if (*apply) {
            cmd_apply(circuit, state, n, o);
        } else if (*dist) {
            cmd_dist(a_path, b_path, metric, l, k, o, g.format);
        } else if (*net) {
            cmd_net(net_g, delta, count, point, nearest, o, g.format);
        } else if (*mc) {
            cmd_mc(experiment, m, big_n, eps, samples, g.seed, o, g.format);
        } else if (*bounds) {
            cmd_bounds(ba, o, g.format);
        } else if (*advantage) {
            cmd_advantage(circuit, problem, o, g.format);
        }

        const std::string header = provenance(g, args);
        std::string payload = o.body.str();
        if (o.tabular) {
            payload = header + payload;
        } else {
            err << header;
        }
        if (g.out.empty()) {
            out << payload;
        } else {
            io_detail::with_file_out(g.out, [&](std::ostream &f) { f << payload; });
        }
        return kExitOk;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const DomainError &e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const NumericalError &e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

} // namespace qapprox::cli
