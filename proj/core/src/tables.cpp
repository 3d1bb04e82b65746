#include "btcert/tables.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace btcert {

namespace {

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cell.erase(0, cell.find_first_not_of(" \t"));
        cell.erase(cell.find_last_not_of(" \t\r") + 1);
        out.push_back(cell);
    }
    return out;
}

Csv read_csv(const std::filesystem::path& file, const std::vector<std::string>& expected) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    Csv csv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (csv.header.empty()) {
            csv.header = split(line);
            if (csv.header != expected)
                throw std::runtime_error(file.string() + ": unexpected header");
            continue;
        }
        auto cells = split(line);
        if (cells.size() != expected.size())
            throw std::runtime_error(file.string() + ": wrong number of fields in '" + line + "'");
        csv.rows.push_back(std::move(cells));
    }
    return csv;
}

std::uint64_t as_u64(const std::string& s) { return std::stoull(s); }

}  // namespace

std::filesystem::path default_data_dir() {
#ifdef BTCERT_DEFAULT_DATA_DIR
    return BTCERT_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
}

std::vector<XiRow> load_table1(const std::filesystem::path& file) {
    std::vector<XiRow> out;
    for (auto& r : read_csv(file, {"k", "xi"}).rows) out.push_back({as_u64(r[0]), Rational::parse(r[1]), r[1]});
    return out;
}

std::map<std::uint64_t, RemainderWindowTable> load_table2(const std::filesystem::path& file) {
    std::map<std::uint64_t, RemainderWindowTable> out;
    for (auto& r : read_csv(file, {"k", "i", "z", "c"}).rows) {
        auto k = as_u64(r[0]);
        auto& t = out[k];
        t.k = k;
        if (as_u64(r[1]) != t.rows.size() + 1) throw std::runtime_error("table2: rows out of order for k=" + r[0]);
        t.rows.push_back({as_u64(r[2]), Rational::parse(r[3]), r[3]});
    }
    for (auto& [k, t] : out) t.validate();
    return out;
}

std::vector<ExtremalRow> load_table3(const std::filesystem::path& file) {
    std::vector<ExtremalRow> out;
    for (auto& r : read_csv(file, {"k", "r", "A_num", "A_den", "B_num", "B_den"}).rows)
        out.push_back({as_u64(r[0]), static_cast<unsigned>(as_u64(r[1])), Rational(BigInt(r[2]), BigInt(r[3])),
                       Rational(BigInt(r[4]), BigInt(r[5]))});
    return out;
}

std::vector<DeltaRow> load_table4(const std::filesystem::path& file) {
    std::vector<DeltaRow> out;
    for (auto& r : read_csv(file, {"k", "I", "d1", "d2", "y0"}).rows)
        out.push_back({as_u64(r[0]), static_cast<std::size_t>(as_u64(r[1])), Rational::parse(r[2]),
                       Rational::parse(r[3]), as_u64(r[4]), r[2], r[3]});
    return out;
}

std::vector<SieveRangeRow> load_table5(const std::filesystem::path& file) {
    std::vector<SieveRangeRow> out;
    for (auto& r : read_csv(file, {"k", "r", "y1", "y2"}).rows) {
        SieveRangeRow row{as_u64(r[0]), static_cast<unsigned>(as_u64(r[1])), as_u64(r[2]), as_u64(r[3])};
        if (row.y1 >= row.y2) throw std::runtime_error("table5: y1 must be below y2");
        out.push_back(row);
    }
    return out;
}

TableSet load_tables(const std::filesystem::path& dir) {
    TableSet t;
    t.xi = load_table1(dir / "table1.csv");
    t.remainder = load_table2(dir / "table2.csv");
    t.extremal = load_table3(dir / "table3.csv");
    t.delta = load_table4(dir / "table4.csv");
    t.sieve_ranges = load_table5(dir / "table5.csv");
    return t;
}

std::optional<XiRow> TableSet::xi_for(std::uint64_t k) const {
    for (const auto& r : xi)
        if (r.k == k) return r;
    return std::nullopt;
}

std::optional<DeltaRow> TableSet::delta_for(std::uint64_t k) const {
    for (const auto& r : delta)
        if (r.k == k) return r;
    return std::nullopt;
}

std::vector<SieveRangeRow> TableSet::sieve_ranges_for(std::uint64_t k) const {
    std::vector<SieveRangeRow> out;
    std::copy_if(sieve_ranges.begin(), sieve_ranges.end(), std::back_inserter(out),
                 [k](const SieveRangeRow& r) { return r.k == k; });
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.y1 < b.y1; });
    return out;
}

const RemainderWindowTable& TableSet::remainder_for(std::uint64_t k) const {
    auto it = remainder.find(k);
    if (it == remainder.end()) throw std::out_of_range("no remainder table for k=" + std::to_string(k));
    return it->second;
}

}  // namespace btcert
