#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace slet {

/// Which column of a published table a value came from. Only `slet` cells are
/// ever used as pass/fail targets; the rest are context for reports.
enum class FixtureColumn { slet, exact, square_root, integral, miller };

const char* to_string(FixtureColumn c);

struct FixtureCell {
    int n;
    int l;
    FixtureColumn column;
    std::string_view text;  ///< as printed, e.g. "-0.002516"

    double value() const;
    /// Decimal places in the printed value.
    int decimals() const;
};

struct PublishedTable {
    int table;
    std::string potential;
    double m1;
    double m2;
    double tolerance;  ///< GeV, for slet cells
    std::vector<FixtureCell> cells;

    std::vector<FixtureCell> column(FixtureColumn c) const;
    /// Cell lookup; nullptr when the table has no such entry.
    const FixtureCell* find(int n, int l, FixtureColumn c) const;
};

/// Tables 1, 2 and 3. Throws invalid_input for other ids, internal if the
/// embedded values no longer match their frozen checksum.
const PublishedTable& published_table(int table);

/// FNV-1a over table id, quantum numbers, column and printed text.
std::uint64_t fixture_checksum(const PublishedTable& fixture);
std::uint64_t expected_checksum(int table);

}  // namespace slet
