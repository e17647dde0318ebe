#include "slet/fixtures.hpp"

#include <charconv>
#include <stdexcept>

#include "slet/error.hpp"

namespace slet {

const char* to_string(FixtureColumn c) {
    switch (c) {
        case FixtureColumn::slet: return "slet";
        case FixtureColumn::exact: return "exact";
        case FixtureColumn::square_root: return "square_root";
        case FixtureColumn::integral: return "integral";
        case FixtureColumn::miller: return "miller";
    }
    return "unknown";
}

double FixtureCell::value() const {
    double v = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), v);
    return v;
}

int FixtureCell::decimals() const {
    const auto dot = text.find('.');
    return dot == std::string_view::npos ? 0 : static_cast<int>(text.size() - dot - 1);
}

std::vector<FixtureCell> PublishedTable::column(FixtureColumn c) const {
    std::vector<FixtureCell> out;
    for (const auto& cell : cells)
        if (cell.column == c) out.push_back(cell);
    return out;
}

const FixtureCell* PublishedTable::find(int n, int l, FixtureColumn c) const {
    for (const auto& cell : cells)
        if (cell.n == n && cell.l == l && cell.column == c) return &cell;
    return nullptr;
}

namespace {

PublishedTable coulomb_table() {
    return {1, "coulomb:alpha=0.25", 1.45, 1.45, 1e-5,
        {
            {0, 0, FixtureColumn::exact, "-0.022394"},
            {1, 0, FixtureColumn::exact, "-0.005648"},
            {2, 0, FixtureColumn::exact, "-0.002514"},
            {3, 0, FixtureColumn::exact, "-0.001415"},
            {4, 0, FixtureColumn::exact, "-0.000906"},
            {5, 0, FixtureColumn::exact, "-0.000629"},
            {0, 0, FixtureColumn::slet, "-0.02274"},
            {1, 0, FixtureColumn::slet, "-0.00566"},
            {2, 0, FixtureColumn::slet, "-0.002516"},
            {3, 0, FixtureColumn::slet, "-0.001415"},
            {4, 0, FixtureColumn::slet, "-0.000906"},
            {5, 0, FixtureColumn::slet, "-0.000629"},
            {0, 0, FixtureColumn::square_root, "-0.02306"},
            {1, 0, FixtureColumn::square_root, "-0.00574"},
            {2, 0, FixtureColumn::square_root, "-0.00254"},
            {3, 0, FixtureColumn::square_root, "-0.00143"},
            {4, 0, FixtureColumn::square_root, "-0.000912"},
            {5, 0, FixtureColumn::square_root, "-0.000635"},
            {0, 0, FixtureColumn::integral, "-0.02251"},
            {1, 0, FixtureColumn::integral, "-0.00556"},
            {2, 0, FixtureColumn::integral, "-0.00244"},
            {3, 0, FixtureColumn::integral, "-0.00140"},
            {4, 0, FixtureColumn::integral, "-0.00085"},
            {5, 0, FixtureColumn::integral, "-0.00065"},
        }};
}

PublishedTable oscillator_table() {
    return {2, "oscillator:k=1", 1.31, 1.31, 5e-4,
        {
            {0, 0, FixtureColumn::slet, "1.6536"},
            {1, 0, FixtureColumn::slet, "3.5048"},
            {2, 0, FixtureColumn::slet, "5.1409"},
            {3, 0, FixtureColumn::slet, "6.6269"},
            {4, 0, FixtureColumn::slet, "8.0049"},
            {0, 0, FixtureColumn::square_root, "1.6595"},
            {1, 0, FixtureColumn::square_root, "3.5280"},
            {2, 0, FixtureColumn::square_root, "5.1654"},
            {3, 0, FixtureColumn::square_root, "6.6553"},
            {4, 0, FixtureColumn::square_root, "8.0395"},
            {0, 0, FixtureColumn::miller, "1.6595"},
            {1, 0, FixtureColumn::miller, "3.5280"},
            {2, 0, FixtureColumn::miller, "5.1654"},
            {3, 0, FixtureColumn::miller, "6.6553"},
            {4, 0, FixtureColumn::miller, "8.0394"},
            {0, 1, FixtureColumn::slet, "2.6609"},
            {1, 1, FixtureColumn::slet, "4.3719"},
            {2, 1, FixtureColumn::slet, "5.9218"},
            {3, 1, FixtureColumn::slet, "7.3484"},
            {4, 1, FixtureColumn::slet, "8.6823"},
            {0, 1, FixtureColumn::square_root, "2.6663"},
            {1, 1, FixtureColumn::square_root, "4.3932"},
            {2, 1, FixtureColumn::square_root, "5.9441"},
            {3, 1, FixtureColumn::square_root, "7.3737"},
            {4, 1, FixtureColumn::square_root, "8.7125"},
            {0, 1, FixtureColumn::miller, "2.6663"},
            {1, 1, FixtureColumn::miller, "4.3932"},
            {2, 1, FixtureColumn::miller, "5.9441"},
            {3, 1, FixtureColumn::miller, "7.3737"},
            {4, 1, FixtureColumn::miller, "8.7124"},
            {0, 2, FixtureColumn::slet, "3.6066"},
            {1, 2, FixtureColumn::slet, "5.2086"},
            {2, 2, FixtureColumn::slet, "6.6844"},
            {3, 2, FixtureColumn::slet, "8.0577"},
            {4, 2, FixtureColumn::slet, "9.3508"},
            {0, 2, FixtureColumn::square_root, "3.6110"},
            {1, 2, FixtureColumn::square_root, "5.2268"},
            {2, 2, FixtureColumn::square_root, "6.7039"},
            {3, 2, FixtureColumn::square_root, "8.0796"},
            {4, 2, FixtureColumn::square_root, "9.3766"},
            {0, 2, FixtureColumn::miller, "3.6110"},
            {1, 2, FixtureColumn::miller, "5.2268"},
            {2, 2, FixtureColumn::miller, "6.7039"},
            {3, 2, FixtureColumn::miller, "8.0796"},
            {4, 2, FixtureColumn::miller, "9.3765"},
        }};
}

PublishedTable cornell_table() {
    return {3, "cornell:alpha=0.25,b=0.18", 1.45, 1.45, 5e-4,
        {
            {0, 0, FixtureColumn::slet, "0.4930"},
            {1, 0, FixtureColumn::slet, "1.0069"},
            {2, 0, FixtureColumn::slet, "1.3988"},
            {3, 0, FixtureColumn::slet, "1.7323"},
            {4, 0, FixtureColumn::slet, "2.0295"},
            {0, 0, FixtureColumn::square_root, "0.4924"},
            {1, 0, FixtureColumn::square_root, "1.0022"},
            {2, 0, FixtureColumn::square_root, "1.3925"},
            {3, 0, FixtureColumn::square_root, "1.7252"},
            {4, 0, FixtureColumn::square_root, "2.0205"},
            {0, 1, FixtureColumn::slet, "0.8342"},
            {1, 1, FixtureColumn::slet, "1.2484"},
            {2, 1, FixtureColumn::slet, "1.5971"},
            {3, 1, FixtureColumn::slet, "1.9053"},
            {4, 1, FixtureColumn::slet, "2.1855"},
            {0, 1, FixtureColumn::square_root, "0.8345"},
            {1, 1, FixtureColumn::square_root, "1.2481"},
            {2, 1, FixtureColumn::square_root, "1.5960"},
            {3, 1, FixtureColumn::square_root, "1.9033"},
            {4, 1, FixtureColumn::square_root, "2.1793"},
            {0, 2, FixtureColumn::slet, "1.0958"},
            {1, 2, FixtureColumn::slet, "1.4600"},
            {2, 2, FixtureColumn::slet, "1.7796"},
            {3, 2, FixtureColumn::slet, "2.0685"},
            {4, 2, FixtureColumn::slet, "2.3345"},
            {0, 2, FixtureColumn::square_root, "1.0962"},
            {1, 2, FixtureColumn::square_root, "1.4601"},
            {2, 2, FixtureColumn::square_root, "1.7797"},
            {3, 2, FixtureColumn::square_root, "2.0687"},
            {4, 2, FixtureColumn::square_root, "2.3346"},
        }};
}

const PublishedTable& checked(const PublishedTable& f) {
    if (fixture_checksum(f) != expected_checksum(f.table))
        throw Error(ErrorKind::internal, "fixture table " + std::to_string(f.table) + " failed its checksum");
    return f;
}

}  // namespace

std::uint64_t fixture_checksum(const PublishedTable& fixture) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::string_view bytes) {
        for (unsigned char ch : bytes) {
            h ^= ch;
            h *= 0x100000001b3ull;
        }
    };
    mix(std::to_string(fixture.table));
    mix(fixture.potential);
    for (const auto& cell : fixture.cells) {
        mix("|" + std::to_string(cell.n) + "," + std::to_string(cell.l) + "," + to_string(cell.column) + "=");
        mix(cell.text);
    }
    return h;
}

std::uint64_t expected_checksum(int table) {
    switch (table) {
        case 1: return 0x90ab0785848ff65full;
        case 2: return 0x49946d3411953c77ull;
        case 3: return 0x57b52a504655e3afull;
        default: throw Error(ErrorKind::invalid_input, "table id must be 1, 2 or 3");
    }
}

const PublishedTable& published_table(int table) {
    static const PublishedTable t1 = coulomb_table();
    static const PublishedTable t2 = oscillator_table();
    static const PublishedTable t3 = cornell_table();
    switch (table) {
        case 1: return checked(t1);
        case 2: return checked(t2);
        case 3: return checked(t3);
        default: throw Error(ErrorKind::invalid_input, "table id must be 1, 2 or 3");
    }
}

}  // namespace slet
