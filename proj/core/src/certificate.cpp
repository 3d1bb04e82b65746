#include "btcert/certificate.hpp"

#include <sstream>

#ifndef BTCERT_VERSION
#define BTCERT_VERSION "0.0.0"
#endif

namespace btcert {
namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
    return out;
}

void csv_rows(std::ostringstream& os, const VerificationReport& r, const std::string& path, bool include_runtime) {
    os << csv_field(path) << ',' << csv_field(r.task) << ',' << to_string(r.status) << ',';
    if (include_runtime) os << r.runtime_seconds;
    os << ',' << csv_field(r.parameters.dump()) << ',' << csv_field(join(r.notes)) << '\n';
    for (std::size_t i = 0; i < r.subreports.size(); ++i)
        csv_rows(os, r.subreports[i], path + "/" + std::to_string(i), include_runtime);
}

}  // namespace

std::string_view tool_version() { return BTCERT_VERSION; }

CertificateDocument CertificateDocument::from_report(const VerificationReport& report,
                                                     std::optional<std::uint64_t> seed) {
    CertificateDocument doc;
    doc.tool_version = std::string(btcert::tool_version());
    doc.task = report.task;
    doc.parameters = report.parameters;
    doc.status = report.status;
    doc.witnesses = report.witnesses;
    doc.mode_flags = report.mode_flags;
    doc.seed = seed;
    doc.runtime_seconds = report.runtime_seconds;
    doc.subtasks = report.subreports;
    for (const auto& s : doc.subtasks) doc.status = combine(doc.status, s.status);
    if (!report.notes.empty()) doc.witnesses.push_back({{"kind", "notes"}, {"notes", report.notes}});
    return doc;
}

Json CertificateDocument::to_json(bool include_runtime) const {
    Json j = Json::object();
    j["tool_version"] = tool_version;
    j["task"] = task;
    j["parameters"] = parameters;
    j["status"] = std::string(to_string(status));
    j["witnesses"] = witnesses;
    j["mode_flags"] = Json(mode_flags);
    j["seed"] = seed ? Json(*seed) : Json(nullptr);
    if (include_runtime) j["runtime_seconds"] = runtime_seconds;
    Json subs = Json::array();
    for (const auto& s : subtasks) subs.push_back(s.to_json(include_runtime));
    j["subtasks"] = std::move(subs);
    return j;
}

std::string CertificateDocument::dump_json(bool include_runtime) const { return to_json(include_runtime).dump(2) + "\n"; }

std::string CertificateDocument::to_csv(bool include_runtime) const {
    std::ostringstream os;
    os << "path,task,status,runtime_seconds,parameters,notes\n";
    VerificationReport root(task);
    root.parameters = parameters;
    root.status = status;
    root.runtime_seconds = runtime_seconds;
    root.subreports = subtasks;
    csv_rows(os, root, "0", include_runtime);
    return os.str();
}

}  // namespace btcert
