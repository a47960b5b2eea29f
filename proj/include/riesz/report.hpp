#pragma once

#include <string>
#include <vector>

namespace riesz {

// One verification record. `anchor` states the identity or inequality being
// checked in plain formula text, so a failing record is self-describing.
struct CheckRecord {
    std::string id;
    std::string anchor;
    std::string status; // "pass" | "fail" | "flagged"
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    double runtime_ms = 0.0;
    std::string note;
};

struct VerificationReport {
    int schema = 1;
    std::string version;
    std::vector<CheckRecord> checks;

    int count(const std::string& status) const;
    bool all_passed() const { return count("fail") == 0; }
    // unique ids are an invariant of the report
    void append(std::vector<CheckRecord> more);
    std::string to_json() const;
};

// record helpers ------------------------------------------------------------

CheckRecord check_close(std::string id, std::string anchor, double measured, double expected,
                        double rel_tol);

// lhs <= rhs within relative slack
CheckRecord check_le(std::string id, std::string anchor, double lhs, double rhs, double slack);

CheckRecord check_true(std::string id, std::string anchor, bool ok, double measured = 0.0,
                       std::string note = {});

CheckRecord flagged(std::string id, std::string anchor, std::string note, double measured = 0.0);

} // namespace riesz
