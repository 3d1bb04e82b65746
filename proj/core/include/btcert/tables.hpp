#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "btcert/legendre.hpp"
#include "btcert/mertens.hpp"
#include "btcert/rational.hpp"

namespace btcert {

struct XiRow {
    std::uint64_t k;
    Rational xi;
    std::string xi_text;
};

struct DeltaRow {
    std::uint64_t k;
    std::size_t I;
    Rational d1;
    Rational d2;
    std::uint64_t y0;
    std::string d1_text;
    std::string d2_text;
};

/// The five shipped data files.
struct TableSet {
    std::vector<XiRow> xi;
    std::map<std::uint64_t, RemainderWindowTable> remainder;
    std::vector<ExtremalRow> extremal;
    std::vector<DeltaRow> delta;
    std::vector<SieveRangeRow> sieve_ranges;

    std::optional<XiRow> xi_for(std::uint64_t k) const;
    std::optional<DeltaRow> delta_for(std::uint64_t k) const;
    std::vector<SieveRangeRow> sieve_ranges_for(std::uint64_t k) const;
    const RemainderWindowTable& remainder_for(std::uint64_t k) const;
};

/// Compiled-in location of the data files.
std::filesystem::path default_data_dir();

std::vector<XiRow> load_table1(const std::filesystem::path& file);
std::map<std::uint64_t, RemainderWindowTable> load_table2(const std::filesystem::path& file);
std::vector<ExtremalRow> load_table3(const std::filesystem::path& file);
std::vector<DeltaRow> load_table4(const std::filesystem::path& file);
std::vector<SieveRangeRow> load_table5(const std::filesystem::path& file);

/// Loads table1.csv .. table5.csv from a directory.
TableSet load_tables(const std::filesystem::path& dir = default_data_dir());

}  // namespace btcert
