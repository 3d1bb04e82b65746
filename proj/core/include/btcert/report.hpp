#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace btcert {

using Json = nlohmann::json;

enum class Status { verified, failed, inconclusive };

std::string_view to_string(Status s);
Status parse_status(std::string_view s);
/// failed dominates inconclusive, which dominates verified.
Status combine(Status a, Status b);

/// Machine-readable certificate of one verification task.
struct VerificationReport {
    std::string task;
    Json parameters = Json::object();
    Status status = Status::verified;
    Json witnesses = Json::array();
    std::map<std::string, std::string> mode_flags;
    std::vector<std::string> notes;
    double runtime_seconds = 0.0;
    std::vector<VerificationReport> subreports;

    explicit VerificationReport(std::string task_name = {}) : task(std::move(task_name)) {}

    bool verified() const { return status == Status::verified; }
    /// Lowers the status to `s` if it is worse than the current one.
    void demote(Status s) { status = combine(status, s); }
    void fail(std::string note) {
        demote(Status::failed);
        notes.push_back(std::move(note));
    }
    /// Appends a child report and folds its status into this one.
    void add(VerificationReport child);

    Json to_json(bool include_runtime = true) const;
};

/// Records wall-clock time into a report on destruction.
class ScopedTimer {
public:
    explicit ScopedTimer(VerificationReport& report);
    ~ScopedTimer();
    ScopedTimer(const ScopedTimer&) = delete;
    ScopedTimer& operator=(const ScopedTimer&) = delete;

private:
    VerificationReport& report_;
    long long start_ns_;
};

}  // namespace btcert
