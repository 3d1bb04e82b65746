#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "btcert/report.hpp"

namespace btcert {

std::string_view tool_version();

/// Top-level certificate written by the command-line tool.
struct CertificateDocument {
    std::string tool_version;
    std::string task;
    Json parameters = Json::object();
    Status status = Status::verified;
    Json witnesses = Json::array();
    std::map<std::string, std::string> mode_flags;
    std::optional<std::uint64_t> seed;
    double runtime_seconds = 0.0;
    std::vector<VerificationReport> subtasks;

    static CertificateDocument from_report(const VerificationReport& report, std::optional<std::uint64_t> seed = {});

    /// Keys are emitted in sorted order, so equal inputs give identical text.
    Json to_json(bool include_runtime = true) const;
    std::string dump_json(bool include_runtime = true) const;
    /// One row per report in depth-first order: path, task, status, runtime, parameters, notes.
    std::string to_csv(bool include_runtime = true) const;
};

}  // namespace btcert
