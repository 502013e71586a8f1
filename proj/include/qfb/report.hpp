#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qfb {

enum class Status { pass, fail, skipped };

struct CheckResult {
    std::string name;    // stable dotted identifier, e.g. "frame.cov-cond"
    std::string anchor;  // the identity being checked, in formula shorthand
    Status status = Status::pass;
    std::string witness;  // counterexample or note; empty on plain pass
    double millis = 0.0;
};

struct Report {
    std::vector<CheckResult> checks;
    uint64_t seed = 0;

    void add(CheckResult c) { checks.push_back(std::move(c)); }
    void add(const std::string& name, const std::string& anchor, bool ok,
             const std::string& witness = "");
    void skip(const std::string& name, const std::string& anchor, const std::string& why);
    void merge(const Report& other);

    void sort_by_name();
    int failures() const;
    bool all_pass() const { return failures() == 0; }

    std::string to_text() const;
    std::string to_json() const;
};

/// Runs a check body, recording timing and converting exceptions to failures.
void run_check(Report& rep, const std::string& name, const std::string& anchor,
               const std::function<std::pair<bool, std::string>()>& body);

}  // namespace qfb
