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
/**
 * @file
 * Text formats for states, circuits and problems.
 *
 *     qstate v1          qcircuit v1                    qproblem v1
 *     n=<int>            n=<int>                        n=<int>
 *     <re> <im>  × 2^n   local <q0,q1,...> <re:im>...   kind=decision|guess
 *                        ctrl <q:pol,...|-> <t> <re:im>×4   <bits> <bits>
 *                        iw <w>
 *
 * Doubles are written with 17 significant digits so every file reads back
 * to the identical value. Blank lines and lines starting with `#` are
 * ignored. Binary strings list qubit 0 first.
 */
#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qapprox/error.hpp"
#include "qapprox/problems.hpp"
#include "qapprox/tensor_core.hpp"

namespace qapprox {

namespace io_detail {

inline std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string fmt_complex(Complex z) { return fmt_double(z.real()) + ":" + fmt_double(z.imag()); }

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

inline std::vector<std::string> tokens(const std::string &line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string t; in >> t;) {
        out.push_back(t);
    }
    return out;
}

/// Content lines with comments and blanks removed, paired with their
/// 1-based line numbers.
inline std::vector<std::pair<int, std::string>> content_lines(std::istream &in) {
    std::vector<std::pair<int, std::string>> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        out.emplace_back(number, line.substr(first));
    }
    return out;
}

[[noreturn]] inline void fail(const char *format, int line, const std::string &what) {
    throw IoError(std::string(format) + ": line " + std::to_string(line) + ": " + what);
}

inline double parse_double(const std::string &s, const char *format, int line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        fail(format, line, "bad number '" + s + "'");
    }
    return v;
}

inline long long parse_int(const std::string &s, const char *format, int line) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        fail(format, line, "bad integer '" + s + "'");
    }
    return v;
}

inline Complex parse_complex(const std::string &s, const char *format, int line) {
    const auto parts = split(s, ':');
    if (parts.size() != 2) {
        fail(format, line, "expected re:im, got '" + s + "'");
    }
    return {parse_double(parts[0], format, line), parse_double(parts[1], format, line)};
}

inline void expect_header(const std::vector<std::pair<int, std::string>> &lines, const char *format) {
    if (lines.empty() || tokens(lines[0].second) != std::vector<std::string>{format, "v1"}) {
        fail(format, lines.empty() ? 0 : lines[0].first, std::string("expected '") + format + " v1'");
    }
}

inline int parse_n(const std::vector<std::pair<int, std::string>> &lines, const char *format) {
    if (lines.size() < 2 || lines[1].second.rfind("n=", 0) != 0) {
        fail(format, lines.size() < 2 ? 0 : lines[1].first, "expected n=<int>");
    }
    const long long n = parse_int(lines[1].second.substr(2), format, lines[1].first);
    if (n < 1 || n > kStateQubitCap) {
        fail(format, lines[1].first, "n out of range");
    }
    return static_cast<int>(n);
}

template <class F> auto with_file_in(const std::string &path, F &&f) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    return f(in);
}

template <class F> void with_file_out(const std::string &path, F &&f) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    f(out);
    out.flush();
    if (!out) {
        throw IoError("write to '" + path + "' failed");
    }
}

} // namespace io_detail

// ---- qstate v1 ----

inline void write_state(std::ostream &out, const StateVec &s) {
    out << "qstate v1\nn=" << s.num_qubits() << '\n';
    for (std::size_t b = 0; b < s.dimension(); ++b) {
        out << io_detail::fmt_double(s[b].real()) << ' ' << io_detail::fmt_double(s[b].imag()) << '\n';
    }
}

inline StateVec read_state(std::istream &in) {
    constexpr const char *kFmt = "qstate";
    const auto lines = io_detail::content_lines(in);
    io_detail::expect_header(lines, kFmt);
    const int n = io_detail::parse_n(lines, kFmt);
    const std::size_t dim = dimension_of(n);
    if (lines.size() != dim + 2) {
        io_detail::fail(kFmt, lines.back().first,
                        "expected " + std::to_string(dim) + " amplitude lines, got " +
                            std::to_string(lines.size() - 2));
    }
    ComplexVector v(static_cast<Eigen::Index>(dim));
    for (std::size_t b = 0; b < dim; ++b) {
        const auto &[no, text] = lines[b + 2];
        const auto t = io_detail::tokens(text);
        if (t.size() != 2) {
            io_detail::fail(kFmt, no, "expected '<re> <im>'");
        }
        v(static_cast<Eigen::Index>(b)) = {io_detail::parse_double(t[0], kFmt, no),
                                           io_detail::parse_double(t[1], kFmt, no)};
    }
    return {n, std::move(v)};
}

// ---- qcircuit v1 ----

inline void write_gate(std::ostream &out, const Gate &gate) {
    std::visit(detail::overloaded{
                   [&](const LocalGate &g) {
                       out << "local ";
                       for (std::size_t i = 0; i < g.positions.size(); ++i) {
                           out << (i ? "," : "") << g.positions[i];
                       }
                       for (Eigen::Index r = 0; r < g.matrix.rows(); ++r) {
                           for (Eigen::Index c = 0; c < g.matrix.cols(); ++c) {
                               out << ' ' << io_detail::fmt_complex(g.matrix(r, c));
                           }
                       }
                   },
                   [&](const ControlledGate &g) {
                       out << "ctrl ";
                       if (g.controls.empty()) {
                           out << '-';
                       }
                       for (std::size_t i = 0; i < g.controls.size(); ++i) {
                           out << (i ? "," : "") << g.controls[i].qubit << ':'
                               << (g.controls[i].polarity ? 1 : 0);
                       }
                       out << ' ' << g.target;
                       for (Eigen::Index r = 0; r < 2; ++r) {
                           for (Eigen::Index c = 0; c < 2; ++c) {
                               out << ' ' << io_detail::fmt_complex(g.matrix(r, c));
                           }
                       }
                   },
                   [&](const PhaseOnZero &g) { out << "iw " << io_detail::fmt_double(g.w); }},
               gate);
    out << '\n';
}

inline void write_circuit(std::ostream &out, const Circuit &c) {
    out << "qcircuit v1\nn=" << c.num_qubits() << '\n';
    for (const auto &g : c.gates()) {
        write_gate(out, g);
    }
}

/// A 2^g × 2^g matrix written as a one-gate circuit on qubits 0..g−1.
/// The matrix need not be unitary.
inline void write_matrix(std::ostream &out, const ComplexMatrix &m) {
    const auto dim = static_cast<std::size_t>(m.rows());
    detail::require(m.rows() == m.cols() && dim >= 2 && (dim & (dim - 1)) == 0,
                    "write_matrix: matrix must be 2^g × 2^g");
    int g = 0;
    while ((std::size_t{1} << g) < dim) {
        ++g;
    }
    out << "qcircuit v1\nn=" << g << '\n';
    out << "local ";
    for (int i = 0; i < g; ++i) {
        out << (i ? "," : "") << i;
    }
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out << ' ' << io_detail::fmt_complex(m(r, c));
        }
    }
    out << '\n';
}

inline Circuit read_circuit(std::istream &in) {
    constexpr const char *kFmt = "qcircuit";
    const auto lines = io_detail::content_lines(in);
    io_detail::expect_header(lines, kFmt);
    const int n = io_detail::parse_n(lines, kFmt);
    Circuit circuit(n);
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto &[no, text] = lines[i];
        const auto t = io_detail::tokens(text);
        Gate gate;
        if (t[0] == "iw") {
            if (t.size() != 2) {
                io_detail::fail(kFmt, no, "expected 'iw <w>'");
            }
            gate = PhaseOnZero{io_detail::parse_double(t[1], kFmt, no)};
        } else if (t[0] == "local") {
            if (t.size() < 2) {
                io_detail::fail(kFmt, no, "missing qubit list");
            }
            std::vector<int> pos;
            for (const auto &q : io_detail::split(t[1], ',')) {
                pos.push_back(static_cast<int>(io_detail::parse_int(q, kFmt, no)));
            }
            if (pos.size() > 10) {
                io_detail::fail(kFmt, no, "local gate arity too large");
            }
            const auto dim = static_cast<Eigen::Index>(dimension_of(static_cast<int>(pos.size())));
            if (t.size() != static_cast<std::size_t>(2 + dim * dim)) {
                io_detail::fail(kFmt, no, "expected " + std::to_string(dim * dim) + " matrix entries");
            }
            ComplexMatrix m(dim, dim);
            for (Eigen::Index e = 0; e < dim * dim; ++e) {
                m(e / dim, e % dim) = io_detail::parse_complex(t[static_cast<std::size_t>(2 + e)], kFmt, no);
            }
            gate = LocalGate{std::move(pos), std::move(m)};
        } else if (t[0] == "ctrl") {
            if (t.size() != 7) {
                io_detail::fail(kFmt, no, "expected 'ctrl <q:pol,...> <target> <4 entries>'");
            }
            std::vector<Control> controls;
            if (t[1] != "-") {
                for (const auto &c : io_detail::split(t[1], ',')) {
                    const auto qp = io_detail::split(c, ':');
                    if (qp.size() != 2 || (qp[1] != "0" && qp[1] != "1")) {
                        io_detail::fail(kFmt, no, "bad control '" + c + "'");
                    }
                    controls.push_back({static_cast<int>(io_detail::parse_int(qp[0], kFmt, no)), qp[1] == "1"});
                }
            }
            const int target = static_cast<int>(io_detail::parse_int(t[2], kFmt, no));
            ComplexMatrix m(2, 2);
            for (Eigen::Index e = 0; e < 4; ++e) {
                m(e / 2, e % 2) = io_detail::parse_complex(t[static_cast<std::size_t>(3 + e)], kFmt, no);
            }
            gate = ControlledGate{std::move(controls), target, std::move(m)};
        } else {
            io_detail::fail(kFmt, no, "unknown gate '" + t[0] + "'");
        }
        try {
            circuit.append(std::move(gate));
        } catch (const DomainError &e) {
            io_detail::fail(kFmt, no, e.what());
        }
    }
    return circuit;
}

// ---- qproblem v1 ----

inline std::string to_bits(std::uint64_t v, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i) {
        s[static_cast<std::size_t>(i)] = ((v >> i) & 1U) ? '1' : '0';
    }
    return s;
}

/// Inverse of to_bits; throws DomainError on anything but 0/1 characters.
inline std::uint64_t from_bits(const std::string &s) {
    detail::require(!s.empty() && s.size() <= 63, "binary string length out of range");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        detail::require(s[i] == '0' || s[i] == '1', "binary string must contain only 0 and 1");
        v |= static_cast<std::uint64_t>(s[i] == '1') << i;
    }
    return v;
}

using Problem = std::variant<DecisionProblem, GuessProblem>;

inline void write_problem(std::ostream &out, const Problem &p) {
    std::visit(detail::overloaded{
                   [&](const DecisionProblem &d) {
                       out << "qproblem v1\nn=" << d.n << "\nkind=decision\n";
                       for (const auto &[b, fb] : d.table) {
                           out << to_bits(b, d.n) << ' ' << fb << '\n';
                       }
                   },
                   [&](const GuessProblem &g) {
                       out << "qproblem v1\nn=" << g.n << "\nkind=guess\n";
                       for (const auto &[b, fb] : g.table) {
                           out << to_bits(b, g.n) << ' ' << to_bits(fb, g.n) << '\n';
                       }
                   }},
               p);
}

inline Problem read_problem(std::istream &in) {
    constexpr const char *kFmt = "qproblem";
    const auto lines = io_detail::content_lines(in);
    io_detail::expect_header(lines, kFmt);
    const int n = io_detail::parse_n(lines, kFmt);
    if (lines.size() < 3 || lines[2].second.rfind("kind=", 0) != 0) {
        io_detail::fail(kFmt, lines.size() < 3 ? 0 : lines[2].first, "expected kind=decision|guess");
    }
    const std::string kind = io_detail::tokens(lines[2].second.substr(5)).empty()
                                 ? std::string()
                                 : io_detail::tokens(lines[2].second.substr(5))[0];
    if (kind != "decision" && kind != "guess") {
        io_detail::fail(kFmt, lines[2].first, "kind must be decision or guess");
    }
    const bool decision = kind == "decision";
    std::vector<std::pair<std::uint64_t, std::uint64_t>> table;
    for (std::size_t i = 3; i < lines.size(); ++i) {
        const auto &[no, text] = lines[i];
        const auto t = io_detail::tokens(text);
        if (t.size() != 2) {
            io_detail::fail(kFmt, no, "expected '<b> <f(b)>'");
        }
        if (t[0].size() != static_cast<std::size_t>(n)) {
            io_detail::fail(kFmt, no, "input must have n bits");
        }
        if (t[1].size() != (decision ? 1U : static_cast<std::size_t>(n))) {
            io_detail::fail(kFmt, no, decision ? "value must be one bit" : "value must have n bits");
        }
        try {
            table.emplace_back(from_bits(t[0]), from_bits(t[1]));
        } catch (const DomainError &e) {
            io_detail::fail(kFmt, no, e.what());
        }
    }
    try {
        if (decision) {
            return DecisionProblem(n, std::move(table));
        }
        return GuessProblem(n, std::move(table));
    } catch (const DomainError &e) {
        io_detail::fail(kFmt, lines.back().first, e.what());
    }
}

// ---- file helpers ----

inline StateVec load_state(const std::string &path) {
    return io_detail::with_file_in(path, [](std::istream &in) { return read_state(in); });
}
inline Circuit load_circuit(const std::string &path) {
    return io_detail::with_file_in(path, [](std::istream &in) { return read_circuit(in); });
}
inline Problem load_problem(const std::string &path) {
    return io_detail::with_file_in(path, [](std::istream &in) { return read_problem(in); });
}
inline void save_state(const std::string &path, const StateVec &s) {
    io_detail::with_file_out(path, [&](std::ostream &out) { write_state(out, s); });
}
inline void save_circuit(const std::string &path, const Circuit &c) {
    io_detail::with_file_out(path, [&](std::ostream &out) { write_circuit(out, c); });
}
inline void save_problem(const std::string &path, const Problem &p) {
    io_detail::with_file_out(path, [&](std::ostream &out) { write_problem(out, p); });
}

/// Reads a 2^g × 2^g matrix from a qcircuit file holding exactly one
/// `local` gate on qubits 0..g−1 in order, without requiring unitarity.
inline ComplexMatrix read_matrix(std::istream &in) {
    constexpr const char *kFmt = "qcircuit";
    const auto lines = io_detail::content_lines(in);
    io_detail::expect_header(lines, kFmt);
    const int g = io_detail::parse_n(lines, kFmt);
    if (lines.size() != 3) {
        io_detail::fail(kFmt, lines.back().first, "matrix file must hold exactly one local gate");
    }
    const auto &[no, text] = lines[2];
    const auto t = io_detail::tokens(text);
    const auto dim = static_cast<Eigen::Index>(dimension_of(g));
    if (t.size() != static_cast<std::size_t>(2 + dim * dim) || t[0] != "local") {
        io_detail::fail(kFmt, no, "expected a local gate with " + std::to_string(dim * dim) + " entries");
    }
    const auto pos = io_detail::split(t[1], ',');
    for (int i = 0; i < g; ++i) {
        if (static_cast<int>(pos.size()) != g || io_detail::parse_int(pos[static_cast<std::size_t>(i)], kFmt, no) != i) {
            io_detail::fail(kFmt, no, "matrix gate must act on qubits 0..n-1 in order");
        }
    }
    ComplexMatrix m(dim, dim);
    for (Eigen::Index e = 0; e < dim * dim; ++e) {
        m(e / dim, e % dim) = io_detail::parse_complex(t[static_cast<std::size_t>(2 + e)], kFmt, no);
    }
    return m;
}

inline ComplexMatrix load_matrix(const std::string &path) {
    return io_detail::with_file_in(path, [](std::istream &in) { return read_matrix(in); });
}

} // namespace qapprox
