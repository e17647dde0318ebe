#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace slet::cli {

inline constexpr const char* kCsvHeader =
    "potential,m1,m2,n,l,method,E_binding_GeV,M_GeV,r0,Q,omega,alpha1,alpha2,status";

/// %.10g, or empty for a missing value.
std::string csv_number(std::optional<double> v);
/// Six significant digits for human-readable reports.
std::string text_number(double v);

void write_csv(std::ostream& os, const RunManifest& manifest, const std::vector<Record>& records);
nlohmann::ordered_json records_json(const RunManifest& manifest, const std::vector<Record>& records);
void write_text(std::ostream& os, const RunManifest& manifest, const std::vector<Record>& records);

nlohmann::ordered_json breakdown_json(const SletSolution& s);
nlohmann::ordered_json breakdown_json(const OracleSolution& s);
void write_breakdown_text(std::ostream& os, const SletSolution& s);

/// One published cell set against a recomputation.
struct TableCell {
    int n;
    int l;
    std::optional<double> computed;
    double printed;
    int decimals;
    double tolerance;
    std::string status;
    std::vector<FixtureCell> context;  ///< comparison columns at (n, l)

    std::optional<double> difference() const;
    bool pass() const;
};

struct TableReport {
    int table;
    std::vector<TableCell> cells;
    std::vector<FixtureCell> reference_row;  ///< table 1 exact row, for context
    std::vector<double> reference_computed;

    bool pass() const;
};

TableReport build_table_report(int table, const std::vector<Record>& records);
void write_table_text(std::ostream& os, const TableReport& report);
nlohmann::ordered_json table_json(const TableReport& report);

struct CompareRow {
    QuantumNumbers qn;
    const Record* slet;
    const Record* oracle;
    std::optional<double> difference;
    std::vector<FixtureCell> fixtures;
};

struct CompareSummary {
    std::vector<CompareRow> rows;
    double max_abs_difference = 0.0;
    double mean_abs_difference = 0.0;
    int compared = 0;
};

/// Pairs slet and oracle records and attaches fixture cells when the
/// configuration matches a published table.
CompareSummary build_compare(const RunManifest& manifest, const std::vector<Record>& records);
void write_compare_text(std::ostream& os, const CompareSummary& summary);
nlohmann::ordered_json compare_json(const RunManifest& manifest, const CompareSummary& summary);

/// Published table whose configuration equals the manifest's, if any.
std::optional<int> matching_table(const RunManifest& manifest);

}  // namespace slet::cli
