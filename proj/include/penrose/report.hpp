#pragma once

#include <string>
#include <vector>

namespace penrose {

enum class Status { Pass, Fail, Flag };

inline const char* status_name(Status s)
{
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    default: return "flag";
    }
}

struct Check {
    std::string name;
    std::string anchor; // which identity or theorem the check instantiates
    Status status = Status::Pass;
    std::string residual; // "0" when exact and clean
    std::vector<std::string> witnesses;
};

struct Report {
    std::vector<Check> checks;

    void add(Check c) { checks.push_back(std::move(c)); }
    void add(std::string name, std::string anchor, bool ok, std::string residual = "0",
             std::vector<std::string> witnesses = {})
    {
        checks.push_back({std::move(name), std::move(anchor), ok ? Status::Pass : Status::Fail,
                          std::move(residual), std::move(witnesses)});
    }
    void append(const Report& r) { checks.insert(checks.end(), r.checks.begin(), r.checks.end()); }

    int count(Status s) const
    {
        int n = 0;
        for (const auto& c : checks) n += c.status == s;
        return n;
    }
    bool ok() const { return count(Status::Fail) == 0; }
};

} // namespace penrose
