#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace sdclab {

using json = nlohmann::ordered_json;

enum class Outcome { Holds, Fails, Undetermined };
// Certified: the answer does not depend on the truncation window.
// Window: the answer holds for every degree inside the window.
enum class Evidence { Certified, Window };

struct Verdict {
    Outcome outcome = Outcome::Undetermined;
    Evidence evidence = Evidence::Certified;
    int bound = 0;  // the window used when evidence is Window
    std::string reason;
    json witness;   // null when there is nothing to show

    static Verdict holds(std::string why, Evidence e = Evidence::Certified, int bound = 0) {
        return {Outcome::Holds, e, bound, std::move(why), nullptr};
    }
    static Verdict fails(std::string why, json w = nullptr, Evidence e = Evidence::Certified, int bound = 0) {
        return {Outcome::Fails, e, bound, std::move(why), std::move(w)};
    }
    static Verdict undetermined(std::string why, int bound = 0) {
        return {Outcome::Undetermined, Evidence::Window, bound, std::move(why), nullptr};
    }

    bool is_holds() const { return outcome == Outcome::Holds; }
    bool is_fails() const { return outcome == Outcome::Fails; }
    bool decisive() const { return outcome != Outcome::Undetermined; }
    bool certified() const { return decisive() && evidence == Evidence::Certified; }

    Verdict& with_window(int w) {
        if (outcome != Outcome::Undetermined) evidence = Evidence::Window;
        bound = w;
        return *this;
    }
};

inline const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Holds: return "holds";
        case Outcome::Fails: return "fails";
        default: return "undetermined";
    }
}

inline json to_json(const Verdict& v) {
    json j;
    j["verdict"] = outcome_name(v.outcome);
    if (v.decisive()) j["evidence"] = v.evidence == Evidence::Certified ? "certified" : "window";
    if (v.evidence == Evidence::Window || !v.decisive()) j["bound"] = v.bound;
    j["reason"] = v.reason;
    if (!v.witness.is_null()) j["witness"] = v.witness;
    return j;
}

// Weakest evidence of two verdicts with the same outcome.
inline Verdict weaken(Verdict v, const Verdict& o) {
    if (o.evidence == Evidence::Window) {
        v.evidence = Evidence::Window;
        v.bound = std::max(v.bound, o.bound);
    }
    return v;
}

// Conjunction: fails if any part fails (first failure wins), undetermined if any part is.
inline Verdict all_of(const std::vector<Verdict>& parts, const std::string& holds_reason) {
    for (const auto& p : parts)
        if (p.is_fails()) return p;
    for (const auto& p : parts)
        if (!p.decisive()) return p;
    Verdict r = Verdict::holds(holds_reason);
    for (const auto& p : parts) r = weaken(r, p);
    return r;
}

// Negation keeps the evidence; the witness of a failure becomes the reason it holds.
inline Verdict negate(const Verdict& v, const std::string& holds_reason, const std::string& fails_reason) {
    if (v.is_holds()) {
        Verdict r = Verdict::fails(fails_reason, nullptr, v.evidence, v.bound);
        return r;
    }
    if (v.is_fails()) {
        Verdict r = Verdict::holds(holds_reason + ": " + v.reason, v.evidence, v.bound);
        r.witness = v.witness;
        return r;
    }
    return v;
}

}  // namespace sdclab
