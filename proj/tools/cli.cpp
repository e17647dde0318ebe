#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "report.hpp"

namespace slet::cli {

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_input:
        case ErrorKind::domain:
        case ErrorKind::unsupported_order:
            return exit_code::invalid_input;
        case ErrorKind::unphysical_coupling:
        case ErrorKind::supercritical_coupling:
        case ErrorKind::non_monotone_point:
        case ErrorKind::no_harmonic_regime:
            return exit_code::unphysical;
        default:
            return exit_code::convergence;
    }
}

const char* to_string(Method m) noexcept {
    switch (m) {
        case Method::slet: return "slet";
        case Method::oracle: return "oracle";
        case Method::both: return "both";
        case Method::closed_form: return "closed-form";
    }
    return "unknown";
}

void RunManifest::validate() const {
    if (potential.empty()) throw Error(ErrorKind::invalid_input, "--potential is required");
    (void)Potential::parse(potential);
    if (!(m1 > 0.0) || !(m2 > 0.0)) throw Error(ErrorKind::invalid_input, "masses must be positive");
    if (states.empty()) throw Error(ErrorKind::invalid_input, "no quantum numbers requested");
    slet.validate();
}

std::vector<int> parse_range(const std::string& text) {
    auto to_int = [&](std::string_view s) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || v < 0)
            throw Error(ErrorKind::invalid_input, "bad range '" + text + "'");
        return v;
    };
    const auto colon = text.find(':');
    if (colon == std::string::npos) return {to_int(text)};
    const int lo = to_int(std::string_view(text).substr(0, colon));
    const int hi = to_int(std::string_view(text).substr(colon + 1));
    if (hi < lo) throw Error(ErrorKind::invalid_input, "empty range '" + text + "'");
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
}

namespace {

Record solve_one(const RunManifest& m, const Potential& potential, const ParticlePair& pair, QuantumNumbers qn,
                 Method method) {
    Record r;
    r.qn = qn;
    r.method = method;
    try {
        switch (method) {
            case Method::slet: {
                r.slet = solve(potential, pair, qn, m.slet);
                r.binding_energy = r.slet->binding_energy;
                r.mass = r.slet->mass;
                break;
            }
            case Method::oracle: {
                r.oracle = solve_selfconsistent(potential, pair, qn, m.oracle);
                r.binding_energy = r.oracle->binding_energy;
                r.mass = r.oracle->mass;
                break;
            }
            case Method::closed_form: {
                if (potential.kind() != Potential::Kind::coulomb || m.m1 != m.m2 || qn.l != 0 || pair.nonrelativistic())
                    throw Error(ErrorKind::invalid_input,
                                "closed form covers equal-mass relativistic Coulomb S-waves only");
                r.closed_form = coulomb_closed_form(m.m1, potential.coulomb_strength(), qn.n);
                r.binding_energy = r.closed_form->E0;
                r.mass = r.closed_form->M;
                break;
            }
            case Method::both: throw Error(ErrorKind::internal, "method 'both' is expanded before solving");
        }
    } catch (const Error& e) {
        r.status = slet::to_string(e.kind());
        r.error = e.kind();
        r.message = e.what();
    }
    return r;
}

}  // namespace

std::vector<Record> run_states(const RunManifest& manifest) {
    const auto potential = Potential::parse(manifest.potential);
    const auto pair = manifest.pair();

    std::vector<std::pair<QuantumNumbers, Method>> jobs;
    for (const auto& qn : manifest.states) {
        if (manifest.method == Method::both) {
            jobs.emplace_back(qn, Method::slet);
            jobs.emplace_back(qn, Method::oracle);
        } else {
            jobs.emplace_back(qn, manifest.method);
        }
    }

    std::vector<Record> records(jobs.size());
    int workers = manifest.jobs > 0 ? manifest.jobs : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, static_cast<int>(jobs.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++)
            records[i] = solve_one(manifest, potential, pair, jobs[i].first, jobs[i].second);
    };
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    pool.clear();
    return records;
}

RunManifest parse_arguments(int argc, const char* const* argv) {
    RunManifest m;
    CLI::App app{"Shifted-l expansion solver for the reduced semi-relativistic two-body equation"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value file; command-line flags win");

    std::string method = "slet", format = "text";
    std::string n_text, l_text, n_range, l_range, bracket;
    std::optional<int> grid_points, pt_basis;
    std::optional<double> rmax;

    app.add_option("--potential", m.potential, "e.g. cornell:alpha=0.25,b=0.18");
    app.add_option("--m1", m.m1, "constituent mass, GeV");
    app.add_option("--m2", m.m2, "constituent mass, GeV");
    app.add_option("--n", n_text, "radial quantum number");
    app.add_option("--l", l_text, "orbital angular momentum");
    app.add_option("--n-range", n_range, "inclusive a:b");
    app.add_option("--l-range", l_range, "inclusive a:b");
    app.add_option("--method", method)->check(CLI::IsMember({"slet", "oracle", "both", "closed-form"}));
    app.add_option("--format", format)->check(CLI::IsMember({"csv", "json", "text"}));
    app.add_option("--out", m.out, "output file (stdout when absent)");
    app.add_flag("--nonrelativistic", m.nonrelativistic, "drop the 1/eta terms");
    app.add_flag("--breakdown", m.breakdown, "dump intermediate quantities");
    app.add_option("--r0-bracket", bracket, "lo:hi scan range for r0, GeV^-1");
    app.add_option("--grid-points", grid_points, "oracle interior points");
    app.add_option("--rmax", rmax, "oracle outer radius, GeV^-1");
    app.add_option("--pt-basis", pt_basis, "oscillator basis size for the RSPT cross-check");
    app.add_option("--jobs", m.jobs, "worker threads");

    auto* solve_cmd = app.add_subcommand("solve", "solve states");
    auto* table_cmd = app.add_subcommand("table", "recompute a published table");
    app.add_subcommand("compare", "slet against the finite-difference oracle");
    app.add_subcommand("breakdown", "intermediate quantities of a slet solve");
    table_cmd->add_option("id", m.table, "table 1, 2 or 3")->required()->check(CLI::Range(1, 3));
    (void)solve_cmd;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        const int code = app.exit(e, out, err);
        throw UsageExit{code, out.str() + err.str()};
    }
    m.command = app.get_subcommands().front()->get_name();

    if (method == "slet") m.method = Method::slet;
    else if (method == "oracle") m.method = Method::oracle;
    else if (method == "both") m.method = Method::both;
    else m.method = Method::closed_form;
    m.format = format == "csv" ? Format::csv : format == "json" ? Format::json : Format::text;

    if (!bracket.empty()) {
        const auto colon = bracket.find(':');
        try {
            if (colon == std::string::npos) throw std::invalid_argument(bracket);
            m.slet.r0_lo = std::stod(bracket.substr(0, colon));
            m.slet.r0_hi = std::stod(bracket.substr(colon + 1));
        } catch (const std::exception&) {
            throw Error(ErrorKind::invalid_input, "--r0-bracket expects lo:hi");
        }
    }
    if (pt_basis) m.slet.pt_basis_size = *pt_basis;
    if (grid_points) m.oracle.point_count = *grid_points;
    if (rmax) m.oracle.r_max = *rmax;

    if (m.command == "table") {
        const auto& f = published_table(m.table);
        if (m.potential.empty()) m.potential = f.potential;
        if (m.m1 == 0.0) m.m1 = f.m1;
        if (m.m2 == 0.0) m.m2 = f.m2;
        if (m.table == 1) m.method = Method::closed_form;
        else if (m.method == Method::both) m.method = Method::slet;
        for (const auto& cell : f.column(FixtureColumn::slet)) m.states.emplace_back(cell.n, cell.l);
        std::sort(m.states.begin(), m.states.end(),
                  [](const auto& a, const auto& b) { return std::pair(a.n, a.l) < std::pair(b.n, b.l); });
    } else {
        if (m.command == "compare") m.method = Method::both;
        if (m.command == "breakdown") {
            m.method = Method::slet;
            m.breakdown = true;
        }
        const auto ns = parse_range(!n_range.empty() ? n_range : n_text.empty() ? "0" : n_text);
        const auto ls = parse_range(!l_range.empty() ? l_range : l_text.empty() ? "0" : l_text);
        for (int n : ns)
            for (int l : ls) m.states.emplace_back(n, l);
    }
    m.validate();
    return m;
}

namespace {

int worst_exit(const std::vector<Record>& records) {
    int code = exit_code::ok;
    for (const auto& r : records)
        if (r.error) code = std::max(code, exit_code_for(*r.error));
    return code;
}

void emit(const RunManifest& m, std::ostream& out, const std::string& text) {
    if (m.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(m.out, std::ios::binary);
    if (!file) throw Error(ErrorKind::invalid_input, "cannot write " + m.out);
    file << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunManifest m;
    try {
        m = parse_arguments(argc, argv);
    } catch (const UsageExit& e) {
        (e.code == 0 ? out : err) << e.text;
        return e.code == 0 ? exit_code::ok : exit_code::invalid_input;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    }

    try {
        const auto records = run_states(m);
        for (const auto& r : records)
            if (r.error) err << "n=" << r.qn.n << " l=" << r.qn.l << " " << to_string(r.method) << ": " << r.message << "\n";
        std::ostringstream os;
        int code = worst_exit(records);

        if (m.command == "table") {
            const auto report = build_table_report(m.table, records);
            switch (m.format) {
                case Format::csv:
                    write_csv(os, m, records);
                    write_table_text(err, report);
                    break;
                case Format::json: os << table_json(report).dump(2) << "\n"; break;
                case Format::text: write_table_text(os, report); break;
            }
            if (code == exit_code::ok && !report.pass()) {
                err << "table " << m.table << ": cells outside tolerance\n";
                for (const auto& c : report.cells)
                    if (!c.pass())
                        err << "  n=" << c.n << " l=" << c.l << " diff=" << text_number(c.difference().value_or(0.0))
                            << "\n";
                code = exit_code::divergence;
            }
        } else if (m.command == "compare") {
            const auto summary = build_compare(m, records);
            switch (m.format) {
                case Format::csv: write_csv(os, m, records); break;
                case Format::json: os << compare_json(m, summary).dump(2) << "\n"; break;
                case Format::text: write_compare_text(os, summary); break;
            }
        } else {
            switch (m.format) {
                case Format::csv: write_csv(os, m, records); break;
                case Format::json: os << records_json(m, records).dump(2) << "\n"; break;
                case Format::text: write_text(os, m, records); break;
            }
        }
        emit(m, out, os.str());
        return code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    }
}

}  // namespace slet::cli
