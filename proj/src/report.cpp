#include "qfb/report.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include <json.hpp>

namespace qfb {

void Report::add(const std::string& name, const std::string& anchor, bool ok,
                 const std::string& witness) {
    checks.push_back({name, anchor, ok ? Status::pass : Status::fail, witness, 0.0});
}

void Report::skip(const std::string& name, const std::string& anchor, const std::string& why) {
    checks.push_back({name, anchor, Status::skipped, why, 0.0});
}

void Report::merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

void Report::sort_by_name() {
    std::stable_sort(checks.begin(), checks.end(),
                     [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
}

int Report::failures() const {
    int n = 0;
    for (const auto& c : checks)
        if (c.status == Status::fail) ++n;
    return n;
}

static const char* status_str(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "FAIL";
        case Status::skipped: return "skipped";
    }
    return "?";
}

std::string Report::to_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << status_str(c.status) << "  " << c.name;
        if (!c.anchor.empty()) os << "  [" << c.anchor << "]";
        if (!c.witness.empty()) os << "  -- " << c.witness;
        os << "\n";
    }
    int f = failures();
    os << "checks: " << checks.size() << ", failed: " << f << ", seed: " << seed << "\n";
    return os.str();
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["failed"] = failures();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["anchor"] = c.anchor;
        e["status"] = status_str(c.status);
        if (!c.witness.empty()) e["witness"] = c.witness;
        j["checks"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

void run_check(Report& rep, const std::string& name, const std::string& anchor,
               const std::function<std::pair<bool, std::string>()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult c;
    c.name = name;
    c.anchor = anchor;
    try {
        auto [ok, witness] = body();
        c.status = ok ? Status::pass : Status::fail;
        c.witness = witness;
    } catch (const std::exception& e) {
        c.status = Status::fail;
        c.witness = std::string("exception: ") + e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    c.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rep.add(std::move(c));
}

}  // namespace qfb
