#include "btcert/report.hpp"

#include <chrono>
#include <stdexcept>

namespace btcert {

std::string_view to_string(Status s) {
    switch (s) {
        case Status::verified: return "verified";
        case Status::failed: return "failed";
        case Status::inconclusive: return "inconclusive";
    }
    return "unknown";
}

Status parse_status(std::string_view s) {
    if (s == "verified") return Status::verified;
    if (s == "failed") return Status::failed;
    if (s == "inconclusive") return Status::inconclusive;
    throw std::invalid_argument("unknown status '" + std::string(s) + "'");
}

Status combine(Status a, Status b) {
    if (a == Status::failed || b == Status::failed) return Status::failed;
    if (a == Status::inconclusive || b == Status::inconclusive) return Status::inconclusive;
    return Status::verified;
}

void VerificationReport::add(VerificationReport child) {
    demote(child.status);
    subreports.push_back(std::move(child));
}

Json VerificationReport::to_json(bool include_runtime) const {
    Json j = Json::object();
    j["task"] = task;
    j["parameters"] = parameters;
    j["status"] = std::string(to_string(status));
    j["witnesses"] = witnesses;
    j["mode_flags"] = Json(mode_flags);
    if (!notes.empty()) j["notes"] = notes;
    if (include_runtime) j["runtime_seconds"] = runtime_seconds;
    if (!subreports.empty()) {
        Json subs = Json::array();
        for (const auto& s : subreports) subs.push_back(s.to_json(include_runtime));
        j["subreports"] = std::move(subs);
    }
    return j;
}

namespace {
long long now_ns() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}
}  // namespace

ScopedTimer::ScopedTimer(VerificationReport& report) : report_(report), start_ns_(now_ns()) {}

ScopedTimer::~ScopedTimer() { report_.runtime_seconds = static_cast<double>(now_ns() - start_ns_) * 1e-9; }

}  // namespace btcert
