#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <map>
#include <ostream>

namespace slet::cli {

using nlohmann::ordered_json;

std::string csv_number(std::optional<double> v) {
    if (!v) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", *v);
    return buf;
}

std::string text_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

namespace {

std::string fixed(double v, int decimals) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

ordered_json optional_json(std::optional<double> v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

template <std::size_t N>
ordered_json array_json(const std::array<double, N>& a) {
    auto j = ordered_json::array();
    for (double v : a) j.push_back(v);
    return j;
}

}  // namespace

void write_csv(std::ostream& os, const RunManifest& m, const std::vector<Record>& records) {
    os << kCsvHeader << "\n";
    for (const auto& r : records) {
        std::optional<double> r0, Q, omega, a1, a2;
        if (r.slet) {
            r0 = r.slet->r0;
            Q = r.slet->Q;
            omega = r.slet->omega;
            a1 = r.slet->alpha1;
            a2 = r.slet->alpha2;
        } else if (r.closed_form) {
            r0 = r.closed_form->r0;
            Q = r.closed_form->Q;
        }
        os << csv_field(m.potential) << ',' << csv_number(m.m1) << ',' << csv_number(m.m2) << ',' << r.qn.n << ','
           << r.qn.l << ',' << to_string(r.method) << ',' << csv_number(r.binding_energy) << ','
           << csv_number(r.mass) << ',' << csv_number(r0) << ',' << csv_number(Q) << ',' << csv_number(omega) << ','
           << csv_number(a1) << ',' << csv_number(a2) << ',' << r.status << "\n";
    }
}

ordered_json breakdown_json(const SletSolution& s) {
    ordered_json j;
    j["r0"] = s.r0;
    j["xi"] = std::isfinite(s.xi) ? ordered_json(s.xi) : ordered_json(nullptr);
    j["Q"] = s.Q;
    j["omega"] = s.omega;
    j["beta"] = s.beta;
    j["lbar"] = s.lbar;
    j["V_r0"] = s.V_at_r0;
    j["E0"] = s.E0;
    j["eps"] = array_json(s.coefficients.eps);
    j["eps_bar"] = array_json(s.coefficients.eps_bar);
    j["delta"] = array_json(s.coefficients.delta);
    j["delta_bar"] = array_json(s.coefficients.delta_bar);
    j["alpha1"] = s.alpha1;
    j["alpha1_closed_form"] = s.alpha1_closed_form;
    j["alpha2"] = s.alpha2;
    j["series"] = array_json(s.series_full.c);
    j["denominator"] = s.corrections.denominator;
    j["centrifugal"] = s.corrections.centrifugal;
    j["E2"] = s.corrections.E2;
    j["E3"] = s.corrections.E3;
    j["E2_term"] = s.E2_term;
    j["E3_term"] = s.E3_term;
    j["diagnostics"] = {
        {"scan_evaluations", s.diagnostics.scan_evaluations},
        {"root_iterations", s.diagnostics.root_iterations},
        {"root_count", s.diagnostics.root_count},
        {"r0_residual", s.diagnostics.r0_residual},
        {"q_lbar_mismatch", s.diagnostics.q_lbar_mismatch},
        {"warnings", s.diagnostics.warnings},
    };
    return j;
}

ordered_json breakdown_json(const OracleSolution& s) {
    ordered_json j;
    j["node_count"] = s.node_count;
    j["outer_iterations"] = s.outer_iterations;
    j["residual"] = s.residual;
    j["grid"] = {{"r_min", s.grid.r_min}, {"r_max", s.grid.r_max}, {"point_count", s.grid.point_count}};
    j["capped"] = s.capped;
    j["cap_radius"] = s.capped ? ordered_json(s.cap_radius) : ordered_json(nullptr);
    j["warnings"] = s.warnings;
    return j;
}

ordered_json records_json(const RunManifest& m, const std::vector<Record>& records) {
    ordered_json j;
    j["potential"] = m.potential;
    j["m1"] = m.m1;
    j["m2"] = m.m2;
    j["nonrelativistic"] = m.nonrelativistic;
    auto rows = ordered_json::array();
    for (const auto& r : records) {
        ordered_json row;
        row["n"] = r.qn.n;
        row["l"] = r.qn.l;
        row["method"] = to_string(r.method);
        row["E_binding_GeV"] = optional_json(r.binding_energy);
        row["M_GeV"] = optional_json(r.mass);
        row["status"] = r.status;
        if (r.error) row["message"] = r.message;
        if (m.breakdown && r.slet) row["breakdown"] = breakdown_json(*r.slet);
        if (m.breakdown && r.oracle) row["breakdown"] = breakdown_json(*r.oracle);
        rows.push_back(std::move(row));
    }
    j["records"] = std::move(rows);
    return j;
}

void write_breakdown_text(std::ostream& os, const SletSolution& s) {
    auto line = [&](const char* name, double v) { os << "  " << std::left << std::setw(20) << name << text_number(v) << "\n"; };
    line("r0 [1/GeV]", s.r0);
    line("xi", s.xi);
    line("Q", s.Q);
    line("omega", s.omega);
    line("beta", s.beta);
    line("lbar", s.lbar);
    line("V(r0) [GeV]", s.V_at_r0);
    line("E0 [GeV]", s.E0);
    for (int i = 0; i < 4; ++i) line(("eps" + std::to_string(i + 1)).c_str(), s.coefficients.eps[i]);
    for (int i = 0; i < 6; ++i) line(("delta" + std::to_string(i + 1)).c_str(), s.coefficients.delta[i]);
    line("alpha1", s.alpha1);
    line("alpha2", s.alpha2);
    line("D", s.corrections.denominator);
    line("E2", s.corrections.E2);
    line("E3", s.corrections.E3);
    line("E2 term [GeV]", s.E2_term);
    line("E3 term [GeV]", s.E3_term);
    line("E [GeV]", s.binding_energy);
    line("M [GeV]", s.mass);
    line("|sqrt(Q)-lbar|/lbar", s.diagnostics.q_lbar_mismatch);
    for (const auto& w : s.diagnostics.warnings) os << "  warning: " << w << "\n";
}

void write_text(std::ostream& os, const RunManifest& m, const std::vector<Record>& records) {
    os << m.potential << "  m1=" << text_number(m.m1) << " m2=" << text_number(m.m2)
       << (m.nonrelativistic ? "  (nonrelativistic)" : "") << "\n";
    os << std::left << std::setw(4) << "n" << std::setw(4) << "l" << std::setw(13) << "method" << std::setw(14)
       << "E [GeV]" << std::setw(14) << "M [GeV]" << "status\n";
    for (const auto& r : records) {
        os << std::left << std::setw(4) << r.qn.n << std::setw(4) << r.qn.l << std::setw(13) << to_string(r.method)
           << std::setw(14) << (r.binding_energy ? text_number(*r.binding_energy) : "-") << std::setw(14)
           << (r.mass ? text_number(*r.mass) : "-") << r.status << "\n";
        if (m.breakdown && r.slet) write_breakdown_text(os, *r.slet);
    }
}

std::optional<double> TableCell::difference() const {
    if (!computed) return std::nullopt;
    return *computed - printed;
}

bool TableCell::pass() const {
    const auto d = difference();
    return d && std::abs(*d) <= tolerance;
}

bool TableReport::pass() const {
    for (const auto& c : cells)
        if (!c.pass()) return false;
    return true;
}

TableReport build_table_report(int table, const std::vector<Record>& records) {
    const auto& f = published_table(table);
    TableReport report{table, {}, {}, {}};
    for (const auto& cell : f.column(FixtureColumn::slet)) {
        TableCell c{cell.n, cell.l, std::nullopt, cell.value(), cell.decimals(), f.tolerance, "missing", {}};
        for (const auto& r : records) {
            if (r.qn.n == cell.n && r.qn.l == cell.l) {
                c.computed = r.binding_energy;
                c.status = r.status;
            }
        }
        for (const auto& other : f.cells)
            if (other.n == cell.n && other.l == cell.l && other.column != FixtureColumn::slet &&
                other.column != FixtureColumn::exact)
                c.context.push_back(other);
        report.cells.push_back(std::move(c));
    }
    if (table == 1) {
        report.reference_row = f.column(FixtureColumn::exact);
        for (const auto& cell : report.reference_row) {
            const auto ref = coulomb_reference(f.m1, Potential::parse(f.potential).coulomb_strength(), cell.n);
            report.reference_computed.push_back(ref.exact_mass - f.m1 - f.m2);
        }
    }
    return report;
}

void write_table_text(std::ostream& os, const TableReport& report) {
    const auto& f = published_table(report.table);
    os << "Table " << report.table << ": " << f.potential << "  m1=" << text_number(f.m1)
       << " m2=" << text_number(f.m2) << "\n";
    int max_n = 0, max_l = 0;
    for (const auto& c : report.cells) {
        max_n = std::max(max_n, c.n);
        max_l = std::max(max_l, c.l);
    }
    os << std::left << std::setw(8) << "";
    for (int n = 0; n <= max_n; ++n) os << std::setw(12) << ("n=" + std::to_string(n));
    os << "\n";
    if (!report.reference_row.empty()) {
        os << std::setw(8) << "exact";
        for (double v : report.reference_computed) os << std::setw(12) << fixed(v, 6);
        os << "\n";
    }
    for (int l = 0; l <= max_l; ++l) {
        os << std::setw(8) << ("l=" + std::to_string(l));
        for (int n = 0; n <= max_n; ++n) {
            for (const auto& c : report.cells)
                if (c.n == n && c.l == l)
                    os << std::setw(12) << (c.computed ? fixed(*c.computed, c.decimals) : std::string("-"));
        }
        os << "\n";
    }
    os << "\ndivergence (computed - printed), tolerance " << text_number(f.tolerance) << " GeV\n";
    for (const auto& c : report.cells) {
        os << "  n=" << c.n << " l=" << c.l << "  computed "
           << (c.computed ? text_number(*c.computed) : std::string("-")) << "  printed " << fixed(c.printed, c.decimals)
           << "  diff " << (c.difference() ? text_number(*c.difference()) : std::string("-")) << "  "
           << (c.pass() ? "ok" : "OUTSIDE");
        for (const auto& ctx : c.context) os << "  " << to_string(ctx.column) << "=" << ctx.text;
        os << "\n";
    }
    for (std::size_t i = 0; i < report.reference_row.size(); ++i)
        os << "  exact n=" << report.reference_row[i].n << "  computed " << text_number(report.reference_computed[i])
           << "  printed " << report.reference_row[i].text << "\n";
}

ordered_json table_json(const TableReport& report) {
    ordered_json j;
    j["table"] = report.table;
    j["pass"] = report.pass();
    auto cells = ordered_json::array();
    for (const auto& c : report.cells) {
        ordered_json cell;
        cell["n"] = c.n;
        cell["l"] = c.l;
        cell["computed_GeV"] = optional_json(c.computed);
        cell["printed_GeV"] = c.printed;
        cell["difference_GeV"] = optional_json(c.difference());
        cell["tolerance_GeV"] = c.tolerance;
        cell["status"] = c.status;
        cell["pass"] = c.pass();
        ordered_json ctx = ordered_json::object();
        for (const auto& x : c.context) ctx[to_string(x.column)] = x.value();
        cell["reference_columns"] = std::move(ctx);
        cells.push_back(std::move(cell));
    }
    j["cells"] = std::move(cells);
    return j;
}

std::optional<int> matching_table(const RunManifest& m) {
    if (m.nonrelativistic) return std::nullopt;
    const auto spec = Potential::parse(m.potential).spec();
    for (int t = 1; t <= 3; ++t) {
        const auto& f = published_table(t);
        if (Potential::parse(f.potential).spec() == spec && f.m1 == m.m1 && f.m2 == m.m2) return t;
    }
    return std::nullopt;
}

CompareSummary build_compare(const RunManifest& m, const std::vector<Record>& records) {
    CompareSummary s;
    const auto table = matching_table(m);
    std::map<std::pair<int, int>, CompareRow> rows;
    std::vector<std::pair<int, int>> order;
    for (const auto& r : records) {
        const std::pair key{r.qn.n, r.qn.l};
        auto [it, inserted] = rows.try_emplace(key, CompareRow{r.qn, nullptr, nullptr, std::nullopt, {}});
        if (inserted) order.push_back(key);
        (r.method == Method::oracle ? it->second.oracle : it->second.slet) = &r;
    }
    double sum = 0.0;
    for (const auto& key : order) {
        auto row = rows.at(key);
        if (row.slet && row.oracle && row.slet->binding_energy && row.oracle->binding_energy) {
            row.difference = *row.oracle->binding_energy - *row.slet->binding_energy;
            s.max_abs_difference = std::max(s.max_abs_difference, std::abs(*row.difference));
            sum += std::abs(*row.difference);
            ++s.compared;
        }
        if (table)
            for (const auto& cell : published_table(*table).cells)
                if (cell.n == key.first && cell.l == key.second) row.fixtures.push_back(cell);
        s.rows.push_back(std::move(row));
    }
    if (s.compared > 0) s.mean_abs_difference = sum / s.compared;
    return s;
}

void write_compare_text(std::ostream& os, const CompareSummary& s) {
    auto value = [](const Record* r) {
        return r && r->binding_energy ? text_number(*r->binding_energy) : std::string(r ? r->status : "-");
    };
    os << std::left << std::setw(4) << "n" << std::setw(4) << "l" << std::setw(14) << "slet" << std::setw(14)
       << "oracle" << std::setw(14) << "oracle-slet" << "published\n";
    for (const auto& row : s.rows) {
        os << std::setw(4) << row.qn.n << std::setw(4) << row.qn.l << std::setw(14) << value(row.slet)
           << std::setw(14) << value(row.oracle) << std::setw(14)
           << (row.difference ? text_number(*row.difference) : std::string("-"));
        for (const auto& c : row.fixtures) os << to_string(c.column) << "=" << c.text << " ";
        os << "\n";
    }
    os << "compared " << s.compared << "  max |diff| " << text_number(s.max_abs_difference) << " GeV  mean |diff| "
       << text_number(s.mean_abs_difference) << " GeV\n";
}

ordered_json compare_json(const RunManifest& m, const CompareSummary& s) {
    ordered_json j;
    j["potential"] = m.potential;
    j["m1"] = m.m1;
    j["m2"] = m.m2;
    auto rows = ordered_json::array();
    for (const auto& row : s.rows) {
        ordered_json r;
        r["n"] = row.qn.n;
        r["l"] = row.qn.l;
        r["slet_GeV"] = row.slet ? optional_json(row.slet->binding_energy) : ordered_json(nullptr);
        r["slet_status"] = row.slet ? row.slet->status : "missing";
        r["oracle_GeV"] = row.oracle ? optional_json(row.oracle->binding_energy) : ordered_json(nullptr);
        r["oracle_status"] = row.oracle ? row.oracle->status : "missing";
        r["difference_GeV"] = optional_json(row.difference);
        ordered_json fx = ordered_json::object();
        for (const auto& c : row.fixtures) fx[to_string(c.column)] = c.value();
        r["published"] = std::move(fx);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["summary"] = {{"compared", s.compared},
                    {"max_abs_difference_GeV", s.max_abs_difference},
                    {"mean_abs_difference_GeV", s.mean_abs_difference}};
    return j;
}

}  // namespace slet::cli
