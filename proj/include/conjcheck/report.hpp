#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace conjcheck {

enum class Verdict { Pass, Fail, SkippedTainted };

inline const char* verdict_name(Verdict v)
{
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::SkippedTainted: return "skipped-tainted";
    }
    return "?";
}

struct Witness {
    std::string klass;     // the offending class / instance
    std::string expected;
    std::string actual;
};

// Structured pass/fail outcome of one checker run. A fail always carries at
// least one witness; degrees whose computation touched the truncation bound
// are listed as skipped, never counted as passed.
struct VerificationReport {
    std::string subject;
    std::string model = "-";
    unsigned max_degree = 0;
    std::size_t classes_checked = 0;
    Verdict verdict = Verdict::Pass;
    std::vector<Witness> witnesses;
    std::vector<unsigned> skipped_degrees;
    std::vector<std::string> notes;

    bool passed() const noexcept { return verdict == Verdict::Pass; }

    void fail(Witness w)
    {
        verdict = Verdict::Fail;
        witnesses.push_back(std::move(w));
    }

    void skip_degree(unsigned d)
    {
        skipped_degrees.push_back(d);
        if (verdict == Verdict::Pass)
            verdict = Verdict::SkippedTainted;
    }

    std::string to_text() const
    {
        std::string out = "[" + std::string(verdict_name(verdict)) + "] " + subject;
        if (model != "-")
            out += " on " + model;
        out += " (max degree " + std::to_string(max_degree) + ", " + std::to_string(classes_checked) +
               " classes)";
        for (const auto& n : notes)
            out += "\n    note: " + n;
        for (const auto& w : witnesses)
            out += "\n    witness: " + w.klass + ": expected " + w.expected + ", got " + w.actual;
        if (!skipped_degrees.empty()) {
            out += "\n    skipped degrees:";
            for (auto d : skipped_degrees)
                out += " " + std::to_string(d);
        }
        return out;
    }
};

}  // namespace conjcheck
