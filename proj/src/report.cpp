#include "riesz/report.hpp"

#include "riesz/errors.hpp"
#include "riesz/version.hpp"

#include <json.hpp>

#include <cmath>
#include <set>

namespace riesz {

int VerificationReport::count(const std::string& status) const {
    int c = 0;
    for (const auto& r : checks)
        if (r.status == status) ++c;
    return c;
}

void VerificationReport::append(std::vector<CheckRecord> more) {
    std::set<std::string> ids;
    for (const auto& r : checks) ids.insert(r.id);
    for (auto& r : more) {
        if (!ids.insert(r.id).second)
            throw invariant_violation("VerificationReport: duplicate check id " + r.id);
        checks.push_back(std::move(r));
    }
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = schema;
    j["version"] = version.empty() ? RIESZWEAK_VERSION : version;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& r : checks) {
        nlohmann::ordered_json c;
        c["id"] = r.id;
        c["anchor"] = r.anchor;
        c["status"] = r.status;
        c["measured"] = std::isfinite(r.measured) ? nlohmann::ordered_json(r.measured)
                                                  : nlohmann::ordered_json(nullptr);
        c["expected"] = std::isfinite(r.expected) ? nlohmann::ordered_json(r.expected)
                                                  : nlohmann::ordered_json(nullptr);
        c["tolerance"] = r.tolerance;
        c["runtime_ms"] = r.runtime_ms;
        if (!r.note.empty()) c["note"] = r.note;
        j["checks"].push_back(std::move(c));
    }
    j["summary"] = {{"pass", count("pass")}, {"fail", count("fail")}, {"flagged", count("flagged")}};
    return j.dump(2);
}

CheckRecord check_close(std::string id, std::string anchor, double measured, double expected,
                        double rel_tol) {
    CheckRecord r;
    r.id = std::move(id);
    r.anchor = std::move(anchor);
    r.measured = measured;
    r.expected = expected;
    r.tolerance = rel_tol;
    const double scale = std::max(std::fabs(expected), 1e-300);
    const bool ok = std::isfinite(measured) && std::fabs(measured - expected) <= rel_tol * scale;
    r.status = ok ? "pass" : "fail";
    return r;
}

CheckRecord check_le(std::string id, std::string anchor, double lhs, double rhs, double slack) {
    CheckRecord r;
    r.id = std::move(id);
    r.anchor = std::move(anchor);
    r.measured = lhs;
    r.expected = rhs;
    r.tolerance = slack;
    const bool ok = std::isfinite(lhs) && lhs <= rhs * (1.0 + slack) + slack * 1e-12;
    r.status = ok ? "pass" : "fail";
    return r;
}

CheckRecord check_true(std::string id, std::string anchor, bool ok, double measured,
                       std::string note) {
    CheckRecord r;
    r.id = std::move(id);
    r.anchor = std::move(anchor);
    r.measured = measured;
    r.status = ok ? "pass" : "fail";
    r.note = std::move(note);
    return r;
}

CheckRecord flagged(std::string id, std::string anchor, std::string note, double measured) {
    CheckRecord r;
    r.id = std::move(id);
    r.anchor = std::move(anchor);
    r.status = "flagged";
    r.measured = measured;
    r.note = std::move(note);
    return r;
}

} // namespace riesz
